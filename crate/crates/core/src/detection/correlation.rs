use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use super::fringe::phi_grid;
use super::pipeline::{AnalyticPipeline, DetectionPipeline, JointRates, PipelineKind, SampledPipeline};
use super::sampled::SampledConfig;
use crate::error::{Error, Result};
use crate::optics::{propagate, BenchGraph};

/// Number of φ points in the default independence scan.
pub const DEFAULT_PHI_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationResult {
    pub det_a: String,
    pub det_b: String,
    /// Gated rate at the graph's own parameters.
    pub gated_value: f64,
    pub ungated_value: f64,
    pub phi_grid: Vec<f64>,
    /// Gated rate at each φ of `phi_grid`.
    pub per_phi_values: Vec<f64>,
    /// Ungated rate at each φ of `phi_grid`.
    pub per_phi_ungated: Vec<f64>,
    pub pipeline: PipelineKind,
}

impl CorrelationResult {
    /// `max − min` of the gated rate over the φ grid.
    pub fn phi_spread(&self) -> f64 {
        spread(&self.per_phi_values)
    }
}

pub(crate) fn spread(values: &[f64]) -> f64 {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    if values.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// The beam splitter closest upstream of a detector, which identifies the
/// detector's side of the bench. `None` if no beam splitter feeds it.
pub fn party_of(graph: &BenchGraph, detector: &str) -> Result<Option<String>> {
    let port = graph.detectors.get(detector).ok_or_else(|| Error::UnknownDetector(detector.to_string()))?;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([port.node.clone()]);
    while let Some(node) = queue.pop_front() {
        if !seen.insert(node.clone()) {
            continue;
        }
        if graph.nodes.get(&node).is_some_and(|d| d.kind == "bs") {
            return Ok(Some(node));
        }
        let mut feeders: Vec<&String> =
            graph.links.iter().filter(|l| l.to.node == node).map(|l| &l.from.node).collect();
        feeders.sort();
        queue.extend(feeders.into_iter().cloned());
    }
    Ok(None)
}

/// Errors unless the two detectors sit on different sides.
pub fn check_cross_party(graph: &BenchGraph, det_a: &str, det_b: &str) -> Result<()> {
    let (pa, pb) = (party_of(graph, det_a)?, party_of(graph, det_b)?);
    if det_a == det_b || (pa.is_some() && pa == pb) {
        return Err(Error::NotCrossParty(det_a.to_string(), det_b.to_string()));
    }
    Ok(())
}

/// Joint rates of one detector pair at the graph's parameters.
pub fn joint_rates(
    graph: &BenchGraph,
    det_a: &str,
    det_b: &str,
    pipeline: &dyn DetectionPipeline,
) -> Result<JointRates> {
    check_cross_party(graph, det_a, det_b)?;
    pipeline.joint(&propagate(graph)?, det_a, det_b)
}

/// Joint rates at the graph's parameters and across a φ grid.
pub fn correlate(
    graph: &BenchGraph,
    det_a: &str,
    det_b: &str,
    pipeline: &dyn DetectionPipeline,
    grid: &[f64],
) -> Result<CorrelationResult> {
    let here = joint_rates(graph, det_a, det_b, pipeline)?;
    let scan: Vec<JointRates> = grid
        .par_iter()
        .map(|&phi| pipeline.joint(&propagate(&graph.with_phi(phi))?, det_a, det_b))
        .collect::<Result<_>>()?;
    Ok(CorrelationResult {
        det_a: det_a.to_string(),
        det_b: det_b.to_string(),
        gated_value: here.gated,
        ungated_value: here.ungated,
        phi_grid: grid.to_vec(),
        per_phi_values: scan.iter().map(|r| r.gated).collect(),
        per_phi_ungated: scan.iter().map(|r| r.ungated).collect(),
        pipeline: pipeline.kind(),
    })
}

pub fn gated_correlation_analytic(graph: &BenchGraph, det_a: &str, det_b: &str) -> Result<CorrelationResult> {
    correlate(graph, det_a, det_b, &AnalyticPipeline, &phi_grid(DEFAULT_PHI_POINTS))
}

pub fn gated_correlation_sampled(
    graph: &BenchGraph,
    det_a: &str,
    det_b: &str,
    cfg: SampledConfig,
) -> Result<CorrelationResult> {
    correlate(graph, det_a, det_b, &SampledPipeline::new(cfg), &phi_grid(DEFAULT_PHI_POINTS))
}

/// Copy of `graph` with the polarizer angles ξ, θ set (radians).
pub fn with_angles(graph: &BenchGraph, xi: f64, theta: f64) -> BenchGraph {
    let mut g = graph.clone();
    g.set_param("xi", xi.to_degrees()).set_param("theta", theta.to_degrees());
    g
}

/// Analytic gated rate for every `(ξ, θ)` pair, rows indexed by ξ.
pub fn correlation_map(
    graph: &BenchGraph,
    det_a: &str,
    det_b: &str,
    xi_grid: &[f64],
    theta_grid: &[f64],
) -> Result<Vec<Vec<f64>>> {
    check_cross_party(graph, det_a, det_b)?;
    let cols = theta_grid.len();
    let flat: Vec<f64> = (0..xi_grid.len() * cols)
        .into_par_iter()
        .map(|k| {
            let g = with_angles(graph, xi_grid[k / cols], theta_grid[k % cols]);
            Ok(AnalyticPipeline.joint(&propagate(&g)?, det_a, det_b)?.gated)
        })
        .collect::<Result<_>>()?;
    Ok(flat.chunks(cols.max(1)).map(<[f64]>::to_vec).collect())
}
