use std::fmt::Write;

use super::lexer::BenchSource;
use crate::optics::{ArgValue, BenchGraph};

/// Canonical text: header, then params, nodes, links and detectors, each
/// sorted, with a blank line between non-empty sections. Numbers use the
/// shortest decimal form that reads back to the same `f64`.
pub fn serialize(graph: &BenchGraph) -> BenchSource {
    let mut sections: Vec<Vec<String>> = Vec::new();
    sections.push(graph.params.iter().map(|(k, v)| format!("param {k} = {v}")).collect());
    sections.push(
        graph
            .nodes
            .iter()
            .map(|(name, decl)| {
                let args: Vec<String> = decl
                    .args
                    .iter()
                    .map(|(k, v)| match v {
                        ArgValue::Number(x) => format!("{k}={x}"),
                        ArgValue::Param(p) => format!("{k}={p}"),
                    })
                    .collect();
                format!("node {name} : {}({})", decl.kind, args.join(", "))
            })
            .collect(),
    );
    let mut links = graph.links.clone();
    links.sort();
    sections.push(links.iter().map(|l| format!("link {} -> {}", l.from, l.to)).collect());
    sections.push(graph.detectors.iter().map(|(k, p)| format!("detector {k} on {p}")).collect());

    let mut text = String::new();
    writeln!(text, "bench {}", graph.name).unwrap();
    for section in sections.into_iter().filter(|s| !s.is_empty()) {
        text.push('\n');
        for line in section {
            text.push_str(&line);
            text.push('\n');
        }
    }
    BenchSource::new(graph.name.clone(), text)
}
