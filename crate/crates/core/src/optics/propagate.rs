use std::collections::BTreeMap;

use super::graph::{BenchGraph, PortRef};
use super::registry::ElementRegistry;
use crate::dsl::{validate_with, Severity};
use crate::error::{Error, Result};
use crate::field::PortField;
use crate::params::BenchParams;

/// Every port field of one propagation, plus the detector view.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub ports: BTreeMap<PortRef, PortField>,
    pub detectors: BTreeMap<String, PortField>,
    pub params: BenchParams,
}

impl Propagation {
    pub fn detector(&self, name: &str) -> Result<&PortField> {
        self.detectors.get(name).ok_or_else(|| Error::UnknownDetector(name.to_string()))
    }

    /// Field at a detector name or `node.port`.
    pub fn port(&self, name: &str) -> Result<&PortField> {
        if let Some(f) = self.detectors.get(name) {
            return Ok(f);
        }
        PortRef::parse(name).and_then(|p| self.ports.get(&p)).ok_or_else(|| Error::UnknownPort(name.to_string()))
    }
}

pub fn propagate(graph: &BenchGraph) -> Result<Propagation> {
    propagate_with(graph, ElementRegistry::standard())
}

/// Validates the graph, then evaluates nodes in topological order.
pub fn propagate_with(graph: &BenchGraph, registry: &ElementRegistry) -> Result<Propagation> {
    let diags: Vec<_> = validate_with(graph, registry).into_iter().filter(|d| d.severity == Severity::Error).collect();
    if !diags.is_empty() {
        return Err(Error::InvalidBench(diags));
    }
    let params = graph.bench_params();
    params.validate()?;
    let order = graph
        .topological_order()
        .map_err(|nodes| Error::Element { node: nodes.join(","), message: "cycle detected".into() })?;
    let mut feeds: BTreeMap<&PortRef, &PortRef> = BTreeMap::new();
    for l in &graph.links {
        feeds.insert(&l.to, &l.from);
    }
    let mut ports: BTreeMap<PortRef, PortField> = BTreeMap::new();
    for name in &order {
        let decl = &graph.nodes[name];
        let spec = registry.spec(&decl.kind).expect("validated kind");
        let args = graph.resolve_args(decl, spec).map_err(|message| Error::Element { node: name.clone(), message })?;
        let element =
            registry.build(&decl.kind, &args).map_err(|message| Error::Element { node: name.clone(), message })?;
        let inputs: Vec<PortField> = spec
            .inputs
            .iter()
            .map(|p| {
                let here = PortRef::new(name.as_str(), p.name);
                feeds.get(&here).and_then(|src| ports.get(*src)).cloned().unwrap_or_default().relabel(here.to_string())
            })
            .collect();
        let outputs = element.apply(&inputs);
        if outputs.len() != spec.outputs.len() {
            return Err(Error::Element {
                node: name.clone(),
                message: format!("produced {} outputs, kind declares {}", outputs.len(), spec.outputs.len()),
            });
        }
        for (port, field) in spec.outputs.iter().zip(outputs) {
            let here = PortRef::new(name.as_str(), *port);
            let label = here.to_string();
            ports.insert(here, field.relabel(label));
        }
    }
    let detectors = graph
        .detectors
        .iter()
        .map(|(d, p)| (d.clone(), ports.get(p).cloned().unwrap_or_default().relabel(d.clone())))
        .collect();
    Ok(Propagation { ports, detectors, params })
}
