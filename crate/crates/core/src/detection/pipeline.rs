use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use super::sampled::{SampledConfig, SampledSignal};
use crate::error::{Error, Result};
use crate::field::{mean_intensity, product_term_pairs, Polarization, PortField, SLOT_PERIOD};
use crate::optics::Propagation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PipelineKind {
    Analytic,
    Sampled,
}

impl PipelineKind {
    pub fn label(self) -> &'static str {
        match self {
            PipelineKind::Analytic => "analytic",
            PipelineKind::Sampled => "sampled",
        }
    }
}

impl fmt::Display for PipelineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Joint rate of two detectors, with and without the zero-offset gate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JointRates {
    pub gated: f64,
    pub ungated: f64,
}

/// A way of turning detector fields into observables.
pub trait DetectionPipeline: fmt::Debug + Send + Sync {
    fn kind(&self) -> PipelineKind;

    /// Mean intensity per occupied slot at the detection time.
    fn mean(&self, prop: &Propagation, detector: &str) -> Result<f64>;

    /// Slot-averaged joint rates over the slots both detectors share.
    fn joint(&self, prop: &Propagation, det_a: &str, det_b: &str) -> Result<JointRates>;
}

/// Slots of one occupancy period lit at both detectors.
fn shared_slots(a: &PortField, b: &PortField) -> Vec<i64> {
    (0..SLOT_PERIOD).filter(|&s| a.occupies(s) && b.occupies(s)).collect()
}

const POL_PAIRS: [(Polarization, Polarization); 4] = [
    (Polarization::H, Polarization::H),
    (Polarization::H, Polarization::V),
    (Polarization::V, Polarization::H),
    (Polarization::V, Polarization::V),
];

/// Closed-form evaluation on the term tables.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyticPipeline;

impl AnalyticPipeline {
    pub fn joint_fields(a: &PortField, b: &PortField) -> JointRates {
        let slots = shared_slots(a, b);
        if slots.is_empty() {
            return JointRates::default();
        }
        let pairs = product_term_pairs(a, b);
        let mut rates = JointRates::default();
        for &s in &slots {
            for (pa, pb) in POL_PAIRS {
                let mut by_net: BTreeMap<i32, Complex64> = BTreeMap::new();
                for pair in pairs.iter().filter(|p| p.shares_slot(s)) {
                    *by_net.entry(pair.net_offset).or_default() += pair.component(pa, pb);
                }
                rates.gated += by_net.get(&0).map_or(0.0, |c| c.norm_sqr());
                rates.ungated += by_net.values().map(|c| c.norm_sqr()).sum::<f64>();
            }
        }
        let n = slots.len() as f64;
        JointRates { gated: rates.gated / n, ungated: rates.ungated / n }
    }
}

impl DetectionPipeline for AnalyticPipeline {
    fn kind(&self) -> PipelineKind {
        PipelineKind::Analytic
    }

    fn mean(&self, prop: &Propagation, detector: &str) -> Result<f64> {
        Ok(mean_intensity(prop.detector(detector)?, &prop.params))
    }

    fn joint(&self, prop: &Propagation, det_a: &str, det_b: &str) -> Result<JointRates> {
        Ok(Self::joint_fields(prop.detector(det_a)?, prop.detector(det_b)?))
    }
}

/// Synthesizes slot envelopes on a time grid and demodulates them by FFT.
#[derive(Debug, Clone, Copy, Default)]
pub struct SampledPipeline {
    pub config: SampledConfig,
}

impl SampledPipeline {
    pub fn new(config: SampledConfig) -> SampledPipeline {
        SampledPipeline { config }
    }

    /// Envelope of `pf` along `pol` in `slot`, in normalized time.
    pub fn envelope(&self, pf: &PortField, slot: i64, pol: Polarization, n: usize) -> SampledSignal {
        SampledSignal::synthesize(&self.config, n, |t| pf.slot_field(slot, pol, t, 1.0))
    }

    /// Product signals `E_a·E_b` for every shared slot and polarization pair.
    pub fn product_signals(&self, prop: &Propagation, det_a: &str, det_b: &str) -> Result<Vec<SampledSignal>> {
        let n = self.config.samples(&prop.params)?;
        let (a, b) = (prop.detector(det_a)?, prop.detector(det_b)?);
        let mut out = Vec::new();
        for s in shared_slots(a, b) {
            for (pa, pb) in POL_PAIRS {
                let ea = self.envelope(a, s, pa, n);
                let eb = self.envelope(b, s, pb, n);
                let samples = ea.samples.iter().zip(&eb.samples).map(|(x, y)| x * y).collect();
                out.push(SampledSignal { samples, ..ea });
            }
        }
        Ok(out)
    }
}

impl DetectionPipeline for SampledPipeline {
    fn kind(&self) -> PipelineKind {
        PipelineKind::Sampled
    }

    fn mean(&self, prop: &Propagation, detector: &str) -> Result<f64> {
        let n = self.config.samples(&prop.params)?;
        let pf = prop.detector(detector)?;
        let slots = pf.occupied_slots();
        if slots.is_empty() {
            return Ok(0.0);
        }
        let tau = prop.params.tau * prop.params.delta_f;
        let mut total = 0.0;
        for &s in &slots {
            let photocurrent = SampledSignal::synthesize(&self.config, n, |t| {
                let i: f64 = Polarization::BOTH.iter().map(|&p| pf.slot_field(s, p, t, 1.0).norm_sqr()).sum();
                Complex64::new(i, 0.0)
            });
            let spectrum = photocurrent.spectrum();
            total += photocurrent.reconstruct(&spectrum, tau).re;
        }
        Ok(total / slots.len() as f64)
    }

    fn joint(&self, prop: &Propagation, det_a: &str, det_b: &str) -> Result<JointRates> {
        let (a, b) = (prop.detector(det_a)?, prop.detector(det_b)?);
        let n_slots = shared_slots(a, b).len();
        if n_slots == 0 {
            return Ok(JointRates::default());
        }
        let mut rates = JointRates::default();
        for p in self.product_signals(prop, det_a, det_b)? {
            rates.gated += p.dc().norm_sqr();
            rates.ungated += p.mean_power();
        }
        let n = n_slots as f64;
        Ok(JointRates { gated: rates.gated / n, ungated: rates.ungated / n })
    }
}

/// Pipelines by name.
#[derive(Debug, Clone, Default)]
pub struct PipelineRegistry {
    entries: BTreeMap<String, Arc<dyn DetectionPipeline>>,
}

impl PipelineRegistry {
    pub fn empty() -> PipelineRegistry {
        PipelineRegistry::default()
    }

    /// `analytic` and `sampled` (default grid).
    pub fn builtin() -> PipelineRegistry {
        let mut r = PipelineRegistry::empty();
        r.register("analytic", Arc::new(AnalyticPipeline));
        r.register("sampled", Arc::new(SampledPipeline::default()));
        r
    }

    pub fn standard() -> &'static PipelineRegistry {
        static STANDARD: OnceLock<PipelineRegistry> = OnceLock::new();
        STANDARD.get_or_init(PipelineRegistry::builtin)
    }

    /// Adds or replaces a pipeline.
    pub fn register(&mut self, name: &str, pipeline: Arc<dyn DetectionPipeline>) {
        self.entries.insert(name.to_string(), pipeline);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn DetectionPipeline>> {
        self.entries.get(name).cloned().ok_or_else(|| {
            Error::Config(format!("unknown pipeline `{name}` (known: {})", self.names().collect::<Vec<_>>().join(", ")))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.keys().map(String::as_str)
    }
}
