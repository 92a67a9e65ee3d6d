//! Optical elements, the bench graph and field propagation.

pub mod element;
pub mod elements;
pub mod fig1;
pub mod graph;
pub mod propagate;
pub mod registry;
pub mod report;

pub use element::{ArgKind, ArgSpec, ElementSpec, OpticalElement, PortSpec, ResolvedArgs};
pub use elements::{
    apply_aom_shift, apply_bs, apply_delay_slot, apply_eom_swap, apply_hwp, apply_pbs, apply_phase, apply_polarizer,
};
pub use fig1::{build_fig1, build_fig1_with, Fig1Options};
pub use graph::{ArgValue, BenchGraph, Link, NodeDecl, PortRef};
pub use propagate::{propagate, propagate_with, Propagation};
pub use registry::{ElementFactory, ElementRegistry};
pub use report::{field_report, field_report_from, FieldReport, ReportRow};
