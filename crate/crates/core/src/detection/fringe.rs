use super::pipeline::{AnalyticPipeline, DetectionPipeline};
use crate::error::Result;
use crate::optics::{propagate, BenchGraph};

/// Analytic mean intensity of one detector.
pub fn detector_mean(graph: &BenchGraph, detector: &str) -> Result<f64> {
    detector_mean_with(graph, detector, &AnalyticPipeline)
}

pub fn detector_mean_with(graph: &BenchGraph, detector: &str, pipeline: &dyn DetectionPipeline) -> Result<f64> {
    pipeline.mean(&propagate(graph)?, detector)
}

/// `n` equally spaced phases covering one period, starting at 0.
pub fn phi_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| std::f64::consts::TAU * k as f64 / n as f64).collect()
}

/// Detector mean at each total phase φ of `grid` (set through ψ).
pub fn phi_scan(
    graph: &BenchGraph,
    detector: &str,
    grid: &[f64],
    pipeline: &dyn DetectionPipeline,
) -> Result<Vec<(f64, f64)>> {
    grid.iter().map(|&phi| Ok((phi, detector_mean_with(&graph.with_phi(phi), detector, pipeline)?))).collect()
}

/// `(max − min)/(max + min)` over the intensities of a scan; 0 for an empty
/// or all-dark trace.
pub fn fringe_visibility(values: &[(f64, f64)]) -> f64 {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, i)| (lo.min(i), hi.max(i)));
    if values.is_empty() || hi + lo <= 0.0 {
        return 0.0;
    }
    ((hi - lo) / (hi + lo)).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{build_fig1, build_fig1_with, Fig1Options};
    use crate::params::BenchParams;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn mean_at_22_5_degrees() {
        let g = build_fig1(&BenchParams { xi: FRAC_PI_8, ..Default::default() });
        let want = 0.25 * (1.0 - std::f64::consts::FRAC_1_SQRT_2);
        assert!((detector_mean(&g, "s1").unwrap() - want).abs() < 1e-12);
        assert!((want - 0.07322).abs() < 1e-5);
    }

    #[test]
    fn quadrature_phase_gives_quarter_intensity() {
        for xi in [0.1, 0.7, 1.3] {
            let g = build_fig1(&BenchParams { xi, ..Default::default() }).with_phi(FRAC_PI_2);
            assert!((detector_mean(&g, "s1").unwrap() - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn visibilities() {
        let grid = phi_grid(16);
        let full = build_fig1(&BenchParams { xi: FRAC_PI_4, ..Default::default() });
        assert!((fringe_visibility(&phi_scan(&full, "s1", &grid, &AnalyticPipeline).unwrap()) - 1.0).abs() < 1e-12);
        let flat = build_fig1(&BenchParams::default());
        assert!(fringe_visibility(&phi_scan(&flat, "s1", &grid, &AnalyticPipeline).unwrap()) < 1e-12);
        let p = BenchParams { xi: FRAC_PI_4, ..Default::default() };
        let nodelay = build_fig1_with(&p, Fig1Options { delay_lines: false });
        assert!(fringe_visibility(&phi_scan(&nodelay, "s1", &grid, &AnalyticPipeline).unwrap()) < 1e-12);
    }

    #[test]
    fn visibility_edge_cases() {
        assert_eq!(fringe_visibility(&[]), 0.0);
        assert_eq!(fringe_visibility(&[(0.0, 0.0), (1.0, 0.0)]), 0.0);
        assert!((fringe_visibility(&[(0.0, 1.0), (1.0, 3.0)]) - 0.5).abs() < 1e-15);
    }
}
