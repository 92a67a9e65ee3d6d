//! Observables: detector means, fringe visibility, joint rates with and
//! without the zero-offset gate, and the CHSH statistic built from them.
//!
//! Two pipelines compute the same observables. The analytic one works on
//! the term tables directly; the sampled one synthesizes rotating-frame
//! envelopes on a time grid and demodulates them by FFT. They are registered
//! by name in [`PipelineRegistry`].

pub mod chsh;
pub mod correlation;
pub mod fringe;
pub mod pipeline;
pub mod sampled;
pub mod spectrum;

pub use chsh::{
    chsh_canonical, chsh_e, chsh_e_with, chsh_max_search, chsh_max_search_with, chsh_s, chsh_s_with, ChshConfig,
    ChshResult, SearchSpace, CANONICAL_ANGLES,
};
pub use correlation::{
    check_cross_party, correlate, correlation_map, gated_correlation_analytic, gated_correlation_sampled, joint_rates,
    party_of, with_angles, CorrelationResult, DEFAULT_PHI_POINTS,
};
pub use fringe::{detector_mean, detector_mean_with, fringe_visibility, phi_grid, phi_scan};
pub use pipeline::{AnalyticPipeline, DetectionPipeline, JointRates, PipelineKind, PipelineRegistry, SampledPipeline};
pub use sampled::{SampledConfig, SampledSignal};
pub use spectrum::{product_spectrum, SpectrumLine};
