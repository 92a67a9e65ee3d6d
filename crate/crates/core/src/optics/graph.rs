//! The bench as data: nodes with keyword arguments, port-to-port links,
//! detector bindings and a parameter table.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::element::{ArgKind, ElementSpec, ResolvedArgs};
use crate::error::{Error, Result};
use crate::params::{BenchParams, ReservedParam};

#[derive(Debug, Clone, PartialEq)]
pub enum ArgValue {
    Number(f64),
    Param(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeDecl {
    pub kind: String,
    pub args: BTreeMap<String, ArgValue>,
}

impl NodeDecl {
    pub fn new(kind: impl Into<String>) -> NodeDecl {
        NodeDecl { kind: kind.into(), args: BTreeMap::new() }
    }

    pub fn num(mut self, name: &str, value: f64) -> NodeDecl {
        self.args.insert(name.to_string(), ArgValue::Number(value));
        self
    }

    pub fn param(mut self, name: &str, param: &str) -> NodeDecl {
        self.args.insert(name.to_string(), ArgValue::Param(param.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortRef {
    pub node: String,
    pub port: String,
}

impl PortRef {
    pub fn new(node: impl Into<String>, port: impl Into<String>) -> PortRef {
        PortRef { node: node.into(), port: port.into() }
    }

    /// Parses `node.port`.
    pub fn parse(s: &str) -> Option<PortRef> {
        let (node, port) = s.split_once('.')?;
        (!node.is_empty() && !port.is_empty()).then(|| PortRef::new(node, port))
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.node, self.port)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub from: PortRef,
    pub to: PortRef,
}

/// Source line of each declaration, for diagnostics. Not part of equality.
#[derive(Debug, Clone, Default)]
pub struct SourceLines {
    pub header: Option<usize>,
    pub params: BTreeMap<String, usize>,
    pub nodes: BTreeMap<String, usize>,
    /// Parallel to [`BenchGraph::links`].
    pub links: Vec<usize>,
    pub detectors: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchGraph {
    pub name: String,
    /// Declared parameters in interface units (degrees for reserved angles).
    pub params: BTreeMap<String, f64>,
    pub nodes: BTreeMap<String, NodeDecl>,
    pub links: Vec<Link>,
    pub detectors: BTreeMap<String, PortRef>,
    pub lines: SourceLines,
}

impl PartialEq for BenchGraph {
    /// Structural equality; link order and source positions are ignored.
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.links.clone();
        let mut b = other.links.clone();
        a.sort();
        b.sort();
        self.name == other.name
            && self.params.len() == other.params.len()
            && self
                .params
                .iter()
                .zip(&other.params)
                .all(|((ka, va), (kb, vb))| ka == kb && va.to_bits() == vb.to_bits())
            && self.nodes == other.nodes
            && a == b
            && self.detectors == other.detectors
    }
}

impl BenchGraph {
    pub fn new(name: impl Into<String>) -> BenchGraph {
        BenchGraph { name: name.into(), ..Default::default() }
    }

    pub fn add_node(&mut self, name: &str, node: NodeDecl) -> &mut Self {
        self.nodes.insert(name.to_string(), node);
        self
    }

    pub fn link(&mut self, from: &str, to: &str) -> &mut Self {
        let from = PortRef::parse(from).unwrap_or_else(|| panic!("bad port reference `{from}`"));
        let to = PortRef::parse(to).unwrap_or_else(|| panic!("bad port reference `{to}`"));
        self.links.push(Link { from, to });
        self
    }

    pub fn detector(&mut self, name: &str, port: &str) -> &mut Self {
        let port = PortRef::parse(port).unwrap_or_else(|| panic!("bad port reference `{port}`"));
        self.detectors.insert(name.to_string(), port);
        self
    }

    pub fn set_param(&mut self, name: &str, value: f64) -> &mut Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_param(&self, name: &str, value: f64) -> BenchGraph {
        let mut g = self.clone();
        g.set_param(name, value);
        g
    }

    /// Declared value, or the default for a reserved name.
    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied().or_else(|| ReservedParam::lookup(name).map(|r| r.to_interface(r.default)))
    }

    pub fn bench_params(&self) -> BenchParams {
        BenchParams::from_table(&self.params)
    }

    /// Sets ψ so that the derived φ equals `phi` (radians).
    pub fn with_phi(&self, phi: f64) -> BenchGraph {
        let p = self.bench_params();
        let psi = phi - (p.phi() - p.psi);
        self.with_param("psi", psi.to_degrees())
    }

    /// Resolves a node's keyword arguments against the parameter table.
    pub fn resolve_args(&self, node: &NodeDecl, spec: &ElementSpec) -> std::result::Result<ResolvedArgs, String> {
        let mut out = ResolvedArgs::new();
        for (name, value) in &node.args {
            let arg = spec.arg(name).ok_or_else(|| format!("`{}` takes no argument `{name}`", spec.kind))?;
            let resolved = match value {
                ArgValue::Number(x) => match arg.kind {
                    ArgKind::Degrees => x.to_radians(),
                    ArgKind::AngleParam => return Err(format!("`{name}` must name a param")),
                    _ => *x,
                },
                ArgValue::Param(p) => {
                    let v = self.param(p).ok_or_else(|| format!("unresolved param `{p}`"))?;
                    let reserved_angle = ReservedParam::lookup(p).is_some_and(|r| r.is_angle());
                    match arg.kind {
                        ArgKind::Degrees | ArgKind::AngleParam => v.to_radians(),
                        ArgKind::Radians if reserved_angle => v.to_radians(),
                        ArgKind::Count | ArgKind::Sign => return Err(format!("`{name}` must be a literal")),
                        _ => v,
                    }
                }
            };
            out.insert(name, resolved);
        }
        Ok(out)
    }

    /// Links feeding each input port.
    pub fn incoming(&self) -> BTreeMap<&PortRef, Vec<usize>> {
        let mut map: BTreeMap<&PortRef, Vec<usize>> = BTreeMap::new();
        for (i, l) in self.links.iter().enumerate() {
            map.entry(&l.to).or_default().push(i);
        }
        map
    }

    /// Kahn order over nodes, ties broken by name. On a cycle, returns the
    /// nodes that could not be ordered.
    pub fn topological_order(&self) -> std::result::Result<Vec<String>, Vec<String>> {
        let mut indeg: BTreeMap<&str, usize> = self.nodes.keys().map(|k| (k.as_str(), 0)).collect();
        let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for l in &self.links {
            if !self.nodes.contains_key(&l.from.node) || !self.nodes.contains_key(&l.to.node) {
                continue;
            }
            *indeg.get_mut(l.to.node.as_str()).unwrap() += 1;
            succ.entry(l.from.node.as_str()).or_default().push(l.to.node.as_str());
        }
        let mut ready: BTreeSet<&str> = indeg.iter().filter(|(_, &d)| d == 0).map(|(k, _)| *k).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(n) = ready.pop_first() {
            order.push(n.to_string());
            for &s in succ.get(n).map(Vec::as_slice).unwrap_or(&[]) {
                let d = indeg.get_mut(s).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(s);
                }
            }
        }
        if order.len() == self.nodes.len() {
            Ok(order)
        } else {
            let done: BTreeSet<&str> = order.iter().map(String::as_str).collect();
            Err(self.nodes.keys().filter(|k| !done.contains(k.as_str())).cloned().collect())
        }
    }

    /// Port a detector name or a `node.port` string refers to.
    pub fn resolve_port(&self, name: &str) -> Result<PortRef> {
        if let Some(p) = self.detectors.get(name) {
            return Ok(p.clone());
        }
        PortRef::parse(name)
            .filter(|p| self.nodes.contains_key(&p.node))
            .ok_or_else(|| Error::UnknownPort(name.to_string()))
    }
}
