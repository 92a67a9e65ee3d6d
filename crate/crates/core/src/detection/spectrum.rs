use super::correlation::check_cross_party;
use super::pipeline::SampledPipeline;
use super::sampled::SampledConfig;
use crate::error::Result;
use crate::optics::{propagate, BenchGraph};

/// Power of the product signal in one FFT bin, summed over shared slots and
/// polarization pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLine {
    /// In units of Δf.
    pub frequency: f64,
    /// `|X_j / N|²`, intensity² units.
    pub power: f64,
}

/// Spectrum of `E_a(t)·E_b(t)` over the sampling window, ordered by
/// frequency.
pub fn product_spectrum(graph: &BenchGraph, det_a: &str, det_b: &str, cfg: SampledConfig) -> Result<Vec<SpectrumLine>> {
    check_cross_party(graph, det_a, det_b)?;
    let prop = propagate(graph)?;
    let signals = SampledPipeline::new(cfg).product_signals(&prop, det_a, det_b)?;
    let Some(first) = signals.first() else { return Ok(Vec::new()) };
    let n = first.len();
    let mut lines: Vec<SpectrumLine> =
        (0..n).map(|j| SpectrumLine { frequency: first.bin_frequency(j), power: 0.0 }).collect();
    for sig in &signals {
        for (line, x) in lines.iter_mut().zip(sig.spectrum()) {
            line.power += (x / n as f64).norm_sqr();
        }
    }
    lines.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    Ok(lines)
}
