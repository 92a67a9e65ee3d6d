use std::collections::{BTreeMap, BTreeSet};

use super::diag::Diagnostic;
use crate::optics::{ArgKind, ArgValue, BenchGraph, ElementRegistry, ElementSpec, PortRef};
use crate::params::ReservedParam;

/// Semantic checks on a parsed or built graph. An empty list means the graph
/// can be propagated.
pub fn validate(graph: &BenchGraph) -> Vec<Diagnostic> {
    validate_with(graph, ElementRegistry::standard())
}

pub fn validate_with(graph: &BenchGraph, registry: &ElementRegistry) -> Vec<Diagnostic> {
    let mut v = Validator { graph, registry, diags: Vec::new() };
    v.params();
    v.nodes();
    v.links();
    v.cycles();
    v.detectors();
    v.diags.sort_by_key(|d| (d.line, d.column));
    v.diags
}

/// True for names the serializer can write back: identifiers that are not
/// keywords.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s, "bench" | "param" | "node" | "link" | "detector" | "on")
}

struct Validator<'a> {
    graph: &'a BenchGraph,
    registry: &'a ElementRegistry,
    diags: Vec<Diagnostic>,
}

impl Validator<'_> {
    fn error(&mut self, line: usize, message: String) {
        self.diags.push(Diagnostic::error(line, 1, message));
    }

    fn node_line(&self, name: &str) -> usize {
        self.graph.lines.nodes.get(name).copied().unwrap_or(1)
    }

    fn link_line(&self, idx: usize) -> usize {
        self.graph.lines.links.get(idx).copied().unwrap_or(1)
    }

    fn spec(&self, node: &str) -> Option<&ElementSpec> {
        self.graph.nodes.get(node).and_then(|d| self.registry.spec(&d.kind))
    }

    fn params(&mut self) {
        for (name, &value) in &self.graph.params {
            let line = self.graph.lines.params.get(name).copied().unwrap_or(1);
            if !is_identifier(name) {
                self.error(line, format!("invalid param name `{name}`"));
            }
            if !value.is_finite() {
                self.error(line, format!("param `{name}` is not finite"));
            } else if matches!(name.as_str(), "delta_f" | "t_e" | "e0") && value <= 0.0 {
                self.error(line, format!("param `{name}` must be > 0, got {value}"));
            }
        }
    }

    fn nodes(&mut self) {
        for (name, decl) in &self.graph.nodes {
            let line = self.node_line(name);
            if !is_identifier(name) {
                self.error(line, format!("invalid node name `{name}`"));
            }
            let Some(spec) = self.registry.spec(&decl.kind) else {
                self.error(line, format!("node `{name}`: unknown element kind `{}`", decl.kind));
                continue;
            };
            let spec = *spec;
            for (arg, value) in &decl.args {
                let Some(arg_spec) = spec.arg(arg) else {
                    self.error(line, format!("node `{name}`: `{}` takes no argument `{arg}`", spec.kind));
                    continue;
                };
                if let Some(msg) = check_arg_value(self.graph, arg_spec.kind, value) {
                    self.error(line, format!("node `{name}`: argument `{arg}` {msg}"));
                }
            }
            let mut groups: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
            for a in spec.args {
                match a.group {
                    None if !decl.args.contains_key(a.name) => {
                        self.error(line, format!("node `{name}`: missing argument `{}`", a.name));
                    }
                    None => {}
                    Some(g) => groups.entry(g).or_default().push(a.name),
                }
            }
            for names in groups.values() {
                let given = names.iter().filter(|n| decl.args.contains_key(**n)).count();
                if given != 1 {
                    self.error(line, format!("node `{name}`: exactly one of `{}` is required", names.join("` | `")));
                }
            }
        }
    }

    fn links(&mut self) {
        let mut fed: BTreeMap<&PortRef, usize> = BTreeMap::new();
        let mut drawn: BTreeMap<&PortRef, usize> = BTreeMap::new();
        let mut per_node: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, link) in self.graph.links.iter().enumerate() {
            let line = self.link_line(i);
            let (from, to) = (&link.from, &link.to);
            match self.spec(&from.node) {
                None if !self.graph.nodes.contains_key(&from.node) => {
                    self.error(line, format!("link {from} -> {to}: unknown node `{}`", from.node));
                }
                Some(spec) if spec.output_index(&from.port).is_none() => {
                    let kind = spec.kind;
                    self.error(
                        line,
                        format!("link {from} -> {to}: `{kind}` node `{}` has no output `{}`", from.node, from.port),
                    );
                }
                _ => {
                    if let Some(&first) = drawn.get(from) {
                        let first = self.link_line(first);
                        self.error(line, format!("output port `{from}` is linked twice (first on line {first})"));
                    } else {
                        drawn.insert(from, i);
                    }
                }
            }
            match self.spec(&to.node) {
                None if !self.graph.nodes.contains_key(&to.node) => {
                    self.error(line, format!("link {from} -> {to}: unknown node `{}`", to.node));
                }
                None => {}
                Some(spec) => {
                    let spec = *spec;
                    let count = per_node.entry(to.node.as_str()).or_default();
                    *count += 1;
                    if *count > spec.inputs.len() {
                        let dup = fed.get(to).map(|&first| {
                            format!(
                                "input port `{to}` has more than one incoming link (first on line {}); ",
                                self.link_line(first)
                            )
                        });
                        self.error(
                            line,
                            format!(
                                "{}node `{}`: `{}` takes {} input(s) but link {from} -> {to} is incoming link {}",
                                dup.unwrap_or_default(),
                                to.node,
                                spec.kind,
                                spec.inputs.len(),
                                *count
                            ),
                        );
                    } else if spec.input_index(&to.port).is_none() {
                        self.error(
                            line,
                            format!(
                                "link {from} -> {to}: `{}` node `{}` has no input `{}`",
                                spec.kind, to.node, to.port
                            ),
                        );
                    } else if let Some(&first) = fed.get(to) {
                        let first = self.link_line(first);
                        self.error(
                            line,
                            format!("input port `{to}` has more than one incoming link (first on line {first})"),
                        );
                    } else {
                        fed.insert(to, i);
                    }
                }
            }
        }
        for (name, decl) in &self.graph.nodes {
            let Some(spec) = self.registry.spec(&decl.kind) else { continue };
            for input in spec.inputs.iter().filter(|p| p.required) {
                let port = PortRef::new(name.clone(), input.name);
                if !fed.contains_key(&port) {
                    self.error(self.node_line(name), format!("input port `{port}` has no incoming link"));
                }
            }
        }
    }

    fn cycles(&mut self) {
        let Err(stuck) = self.graph.topological_order() else { return };
        // drop the nodes that only hang off a cycle, downstream
        let mut on_cycle: BTreeSet<&str> = stuck.iter().map(String::as_str).collect();
        loop {
            let sinks: Vec<&str> = on_cycle
                .iter()
                .copied()
                .filter(|n| {
                    !self.graph.links.iter().any(|l| l.from.node == *n && on_cycle.contains(l.to.node.as_str()))
                })
                .collect();
            if sinks.is_empty() {
                break;
            }
            for s in sinks {
                on_cycle.remove(s);
            }
        }
        let line = self
            .graph
            .links
            .iter()
            .enumerate()
            .filter(|(_, l)| on_cycle.contains(l.from.node.as_str()) && on_cycle.contains(l.to.node.as_str()))
            .map(|(i, _)| self.link_line(i))
            .min()
            .unwrap_or(1);
        let names: Vec<String> = on_cycle.iter().map(|n| format!("`{n}`")).collect();
        self.error(line, format!("cycle detected through node {}", names.join(", ")));
    }

    fn detectors(&mut self) {
        let consumed: BTreeSet<&PortRef> = self.graph.links.iter().map(|l| &l.from).collect();
        let mut bound: BTreeMap<&PortRef, &str> = BTreeMap::new();
        for (name, port) in &self.graph.detectors {
            let line = self.graph.lines.detectors.get(name).copied().unwrap_or(1);
            if !is_identifier(name) {
                self.error(line, format!("invalid detector name `{name}`"));
            }
            match self.spec(&port.node) {
                None if !self.graph.nodes.contains_key(&port.node) => {
                    self.error(line, format!("detector `{name}`: unknown node `{}`", port.node));
                    continue;
                }
                None => continue,
                Some(spec) if spec.output_index(&port.port).is_none() => {
                    let kind = spec.kind;
                    self.error(
                        line,
                        format!("detector `{name}`: `{kind}` node `{}` has no output `{}`", port.node, port.port),
                    );
                    continue;
                }
                Some(_) => {}
            }
            if consumed.contains(port) {
                self.error(line, format!("detector `{name}`: port `{port}` also feeds a link"));
            }
            if let Some(other) = bound.insert(port, name) {
                self.error(line, format!("detector `{name}`: port `{port}` is already bound to `{other}`"));
            }
        }
    }
}

fn check_arg_value(graph: &BenchGraph, kind: ArgKind, value: &ArgValue) -> Option<String> {
    match (kind, value) {
        (ArgKind::AngleParam, ArgValue::Number(_)) => Some("must name a param".into()),
        (ArgKind::Count | ArgKind::Sign, ArgValue::Param(_)) => Some("must be a literal".into()),
        (ArgKind::Count, ArgValue::Number(x)) if !(x.fract() == 0.0 && (0.0..=1e6).contains(x)) => {
            Some(format!("must be a non-negative integer, got {x}"))
        }
        (ArgKind::Sign, ArgValue::Number(x)) if *x != 1.0 && *x != -1.0 => Some(format!("must be 1 or -1, got {x}")),
        (_, ArgValue::Number(x)) if !x.is_finite() => Some("is not finite".into()),
        (_, ArgValue::Param(p)) if graph.param(p).is_none() => {
            let hint = if ReservedParam::lookup(p).is_some() { "" } else { " (declare it with `param`)" };
            Some(format!("references unresolved param `{p}`{hint}"))
        }
        _ => None,
    }
}
