//! Deterministic coherence-optics simulator for polarization-path correlated
//! light.
//!
//! A continuous-wave laser is split into a Mach-Zehnder interferometer whose
//! arms carry electro-optic polarization swapping on alternate time slots.
//! Acousto-optic frequency tags, a one-slot delay line and polarizers follow.
//! Fields are tracked as labeled plane-wave terms in the frame rotating at the
//! carrier, so every observable (local fringes, gated joint rates, CHSH
//! statistics) is a closed-form function of the term table.
//!
//! Module map:
//!
//! * [`field`]: term representation and intensity algebra
//! * [`optics`]: element strategies, their registry, graph propagation and
//!   the built-in two-party bench
//! * [`dsl`]: the `.obd` bench description language
//! * [`detection`]: means, visibility, gated correlations (analytic and
//!   sampled pipelines) and the CHSH harness
//! * [`validation`]: the randomized cross-check suite behind `cohbench validate`

pub mod bench_gen;
pub mod detection;
pub mod dsl;
pub mod error;
pub mod field;
pub mod optics;
pub mod params;
pub mod validation;

pub use error::{Error, Result};
pub use field::{FieldTerm, JonesVec, OriginTag, Polarization, PortField, SlotParity};
pub use optics::{BenchGraph, ElementRegistry, Propagation};
pub use params::BenchParams;
