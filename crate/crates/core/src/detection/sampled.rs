//! Uniformly sampled rotating-frame signals.
//!
//! Time is measured in units of `1/Δf`, so a term tagged with offset `o`
//! rotates at `o` cycles per unit time and the beat between opposite tags
//! sits at frequency 2.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::params::BenchParams;

/// Sampling grid for the sampled pipeline, in units of Δf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledConfig {
    /// Samples per unit time (`1/Δf`).
    pub sample_rate: f64,
    /// Window length in beat periods (`1/(2Δf)` each).
    pub beat_periods: u32,
}

impl Default for SampledConfig {
    fn default() -> Self {
        SampledConfig { sample_rate: 64.0, beat_periods: 16 }
    }
}

/// Minimum samples per beat period.
pub const MIN_SAMPLES_PER_BEAT: f64 = 16.0;

impl SampledConfig {
    /// Window length in units of `1/Δf`.
    pub fn window(&self) -> f64 {
        self.beat_periods as f64 / 2.0
    }

    /// Number of samples; errors unless the window holds an integer count
    /// and the sampling invariants hold for `params`.
    pub fn samples(&self, params: &BenchParams) -> Result<usize> {
        if !(self.sample_rate.is_finite() && self.sample_rate >= MIN_SAMPLES_PER_BEAT * 2.0) {
            return Err(Error::Config(format!(
                "sample rate {} is below {} samples per unit time (16 per beat period)",
                self.sample_rate,
                MIN_SAMPLES_PER_BEAT * 2.0
            )));
        }
        if self.beat_periods == 0 {
            return Err(Error::Config("window must span at least one beat period".into()));
        }
        let n = self.sample_rate * self.window();
        if (n - n.round()).abs() > 1e-9 * n {
            return Err(Error::Config(format!(
                "window of {} beat periods holds a non-integer {n} samples",
                self.beat_periods
            )));
        }
        let slot_length = params.t_e * params.delta_f;
        if self.window() > slot_length * (1.0 + 1e-12) {
            return Err(Error::Config(format!(
                "window {} exceeds the slot length {slot_length} (t_e in units of 1/delta_f)",
                self.window()
            )));
        }
        Ok(n.round() as usize)
    }
}

/// A complex signal on a uniform grid starting at local time 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub sample_rate: f64,
    pub samples: Vec<Complex64>,
    pub duration: f64,
}

impl SampledSignal {
    pub fn synthesize(cfg: &SampledConfig, n: usize, f: impl Fn(f64) -> Complex64) -> SampledSignal {
        let samples = (0..n).map(|k| f(k as f64 / cfg.sample_rate)).collect();
        SampledSignal { sample_rate: cfg.sample_rate, samples, duration: n as f64 / cfg.sample_rate }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Unnormalized forward DFT.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut buf = self.samples.clone();
        if !buf.is_empty() {
            FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
        }
        buf
    }

    /// Signed frequency of bin `j`, in units of Δf.
    pub fn bin_frequency(&self, j: usize) -> f64 {
        let n = self.len() as i64;
        let signed = if (j as i64) < (n + 1) / 2 { j as i64 } else { j as i64 - n };
        signed as f64 / self.duration
    }

    /// Mean of the samples (the 0 Hz bin over `N`).
    pub fn dc(&self) -> Complex64 {
        self.spectrum().first().copied().unwrap_or_default() / self.len().max(1) as f64
    }

    /// Mean of `|x|²` over the window.
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|x| x.norm_sqr()).sum::<f64>() / self.len().max(1) as f64
    }

    /// Evaluates the band-limited interpolant of the samples at time `t`
    /// from the spectrum.
    pub fn reconstruct(&self, spectrum: &[Complex64], t: f64) -> Complex64 {
        let n = self.len() as f64;
        spectrum
            .iter()
            .enumerate()
            .map(|(j, x)| x * Complex64::from_polar(1.0, std::f64::consts::TAU * self.bin_frequency(j) * t))
            .sum::<Complex64>()
            / n
    }
}
