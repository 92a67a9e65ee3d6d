//! The built-in two-party bench.
//!
//! ```text
//! L ─ H1(22.5°) ─ PBS1 ─v─ EOM_U ─ PZT(ψ) ──────── PBS2.in0 ─v─ A ─ (signal side)
//!                      └h─ EOM_L ─ H2(45°) ─────── PBS2.in1 ─h─ B ─ (idler side)
//!
//! side A: PBS_A ─v─ AOM_A_U(+Δf) ─ DEL_A(1 slot) ─ ZETA_A(ζ) ─ BS_A.in1
//!               └h─ AOM_A_L(−Δf) ───────────────────────────── BS_A.in0
//!         BS_A.out1 ─ P_s1(ξ) → s1,  BS_A.out0 ─ P_s2(ξ) → s2
//! side B: PBS_B ─h─ AOM_B_U(+Δf) ─ ZETA_B(ζ) ──────────────── BS_B.in0
//!               └v─ AOM_B_L(−Δf) ─ DEL_B(1 slot) ──────────── BS_B.in1
//!         BS_B.out1 ─ P_i3(θ) → i3,  BS_B.out0 ─ P_i4(θ) → i4
//! ```
//!
//! On each side the delay sits on the arm lit in even slots, which moves it
//! onto the odd slots of the other arm. ζ is the relative phase of the
//! upper-origin arm in each second-stage interferometer.

use num_complex::Complex64;

use super::graph::{BenchGraph, NodeDecl};
use super::propagate::Propagation;
use crate::field::Polarization;
use crate::params::BenchParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fig1Options {
    /// With `false` the two delay lines are replaced by mirrors.
    pub delay_lines: bool,
}

impl Default for Fig1Options {
    fn default() -> Self {
        Fig1Options { delay_lines: true }
    }
}

pub const DETECTORS: [&str; 4] = ["s1", "s2", "i3", "i4"];

pub fn build_fig1(params: &BenchParams) -> BenchGraph {
    build_fig1_with(params, Fig1Options::default())
}

pub fn build_fig1_with(params: &BenchParams, opts: Fig1Options) -> BenchGraph {
    let mut g = BenchGraph::new("fig1");
    g.params = params.to_table();
    let delay = || {
        if opts.delay_lines {
            NodeDecl::new("delay").num("slots", 1.0).num("zeta_rad", 0.0)
        } else {
            NodeDecl::new("mirror")
        }
    };
    g.add_node("L", NodeDecl::new("laser").param("amplitude", "e0"))
        .add_node("H1", NodeDecl::new("hwp").num("angle_deg", 22.5))
        .add_node("PBS1", NodeDecl::new("pbs"))
        .add_node("EOM_U", NodeDecl::new("eom"))
        .add_node("EOM_L", NodeDecl::new("eom"))
        .add_node("H2", NodeDecl::new("hwp").num("angle_deg", 45.0))
        .add_node("PZT", NodeDecl::new("phase").param("psi_rad", "psi"))
        .add_node("PBS2", NodeDecl::new("pbs"))
        .add_node("A", NodeDecl::new("mirror"))
        .add_node("B", NodeDecl::new("mirror"));
    g.link("L.out", "H1.in")
        .link("H1.out", "PBS1.in0")
        .link("PBS1.v_out", "EOM_U.in")
        .link("PBS1.h_out", "EOM_L.in")
        .link("EOM_U.out", "PZT.in")
        .link("EOM_L.out", "H2.in")
        .link("PZT.out", "PBS2.in0")
        .link("H2.out", "PBS2.in1")
        .link("PBS2.v_out", "A.in")
        .link("PBS2.h_out", "B.in");

    // signal side: V_u (even slots) on v_out, H_l (odd) on h_out
    g.add_node("PBS_A", NodeDecl::new("pbs"))
        .add_node("AOM_A_U", NodeDecl::new("aom").num("sign", 1.0))
        .add_node("AOM_A_L", NodeDecl::new("aom").num("sign", -1.0))
        .add_node("DEL_A", delay())
        .add_node("ZETA_A", NodeDecl::new("phase").param("psi_rad", "zeta"))
        .add_node("BS_A", NodeDecl::new("bs"))
        .add_node("P_s1", NodeDecl::new("polarizer").param("angle_param", "xi"))
        .add_node("P_s2", NodeDecl::new("polarizer").param("angle_param", "xi"));
    g.link("A.out", "PBS_A.in0")
        .link("PBS_A.v_out", "AOM_A_U.in")
        .link("PBS_A.h_out", "AOM_A_L.in")
        .link("AOM_A_U.out", "DEL_A.in")
        .link("DEL_A.out", "ZETA_A.in")
        .link("AOM_A_L.out", "BS_A.in0")
        .link("ZETA_A.out", "BS_A.in1")
        .link("BS_A.out1", "P_s1.in")
        .link("BS_A.out0", "P_s2.in");

    // idler side: H_u (odd slots) on h_out, V_l (even) on v_out
    g.add_node("PBS_B", NodeDecl::new("pbs"))
        .add_node("AOM_B_U", NodeDecl::new("aom").num("sign", 1.0))
        .add_node("AOM_B_L", NodeDecl::new("aom").num("sign", -1.0))
        .add_node("ZETA_B", NodeDecl::new("phase").param("psi_rad", "zeta"))
        .add_node("DEL_B", delay())
        .add_node("BS_B", NodeDecl::new("bs"))
        .add_node("P_i3", NodeDecl::new("polarizer").param("angle_param", "theta"))
        .add_node("P_i4", NodeDecl::new("polarizer").param("angle_param", "theta"));
    g.link("B.out", "PBS_B.in0")
        .link("PBS_B.h_out", "AOM_B_U.in")
        .link("PBS_B.v_out", "AOM_B_L.in")
        .link("AOM_B_U.out", "ZETA_B.in")
        .link("AOM_B_L.out", "DEL_B.in")
        .link("ZETA_B.out", "BS_B.in0")
        .link("DEL_B.out", "BS_B.in1")
        .link("BS_B.out1", "P_i3.in")
        .link("BS_B.out0", "P_i4.in");

    g.detector("s1", "P_s1.out").detector("s2", "P_s2.out").detector("i3", "P_i3.out").detector("i4", "P_i4.out");
    g
}

/// Relative phase α between the odd-slot `H_u H_l` and even-slot `V_u V_l`
/// product amplitudes at the first interferometer's output (PBS2 inputs).
/// `None` if either product vanishes.
pub fn pair_phase_alpha(prop: &Propagation) -> Option<f64> {
    let upper = prop.port("PZT.out").ok()?;
    let lower = prop.port("H2.out").ok()?;
    let product =
        |slot: i64, pol: Polarization| upper.slot_field(slot, pol, 0.0, 0.0) * lower.slot_field(slot, pol, 0.0, 0.0);
    let even: Complex64 = product(0, Polarization::V);
    let odd: Complex64 = product(1, Polarization::H);
    (even.norm() > 0.0 && odd.norm() > 0.0).then(|| (odd / even).arg())
}
