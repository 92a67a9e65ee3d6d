//! Randomized cross-checks: the two detection pipelines against each other,
//! detector field structure against the closed forms, power conservation and
//! DSL round trips.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bench_gen::random_bench;
use crate::detection::{AnalyticPipeline, DetectionPipeline, SampledConfig, SampledPipeline};
use crate::dsl::{parse_source, serialize};
use crate::error::{Error, Result};
use crate::field::{time_averaged_power, FieldTerm, JonesVec, OriginTag, PortField, SlotParity};
use crate::optics::fig1::{build_fig1, DETECTORS};
use crate::optics::{field_report_from, propagate_with, ElementRegistry, Propagation, ResolvedArgs};
use crate::params::BenchParams;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub draws: usize,
    pub seed: u64,
    pub sampled: SampledConfig,
    /// Random benches per round-trip check.
    pub generated_benches: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { draws: 100, seed: 20_240_917, sampled: SampledConfig::default(), generated_benches: 20 }
    }
}

/// Enough to reproduce one random draw.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawManifest {
    pub seed: u64,
    pub draw: usize,
    pub params: BenchParams,
}

impl fmt::Display for DrawManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(
            f,
            "seed={} draw={} xi={}deg theta={}deg psi={}deg zeta={}deg tau={}s",
            self.seed,
            self.draw,
            p.xi.to_degrees(),
            p.theta.to_degrees(),
            p.psi.to_degrees(),
            p.zeta.to_degrees(),
            p.tau
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
    /// Draw with the largest deviation, when the check is draw-based.
    pub worst: Option<DrawManifest>,
}

impl CheckReport {
    fn new(name: impl Into<String>, tolerance: f64) -> CheckReport {
        CheckReport { name: name.into(), max_deviation: 0.0, tolerance, samples: 0, worst: None }
    }

    fn record(&mut self, deviation: f64, draw: Option<&DrawManifest>) {
        self.samples += 1;
        // NaN counts as the worst possible deviation
        let deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        if self.samples == 1 || deviation > self.max_deviation {
            self.max_deviation = self.max_deviation.max(deviation);
            self.worst = draw.cloned();
        }
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> + '_ {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// 0 if every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name_prefix: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name.starts_with(name_prefix))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{verdict} {:<58} max dev {:.3e} (tol {:.0e}, n={})",
                c.name, c.max_deviation, c.tolerance, c.samples
            )?;
            if !c.passed() {
                if let Some(w) = &c.worst {
                    writeln!(f, "     reproduce with: {w}")?;
                }
            }
        }
        Ok(())
    }
}

pub const PIPELINE_TOL: f64 = 1e-3;
pub const ALGEBRA_TOL: f64 = 1e-12;

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_with(cfg, ElementRegistry::standard())
}

/// Runs every check with elements taken from `registry`.
pub fn run_suite_with(cfg: &SuiteConfig, registry: &ElementRegistry) -> Result<SuiteReport> {
    if cfg.draws == 0 {
        return Err(Error::Config("at least one draw is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sampled = SampledPipeline::new(cfg.sampled);

    let mut means = CheckReport::new("pipeline equivalence: detector means", PIPELINE_TOL);
    let mut joints = CheckReport::new("pipeline equivalence: gated correlations", PIPELINE_TOL);
    let mut structure: Vec<CheckReport> = [
        "field structure s1: V_u/H_l = -e^(i phi) tan xi",
        "field structure s2: V_u/H_l = e^(i phi) tan xi",
        "field structure i3: V_l/H_u = e^(-i phi) tan theta",
        "field structure i4: V_l/H_u = -e^(-i phi) tan theta",
    ]
    .into_iter()
    .map(|n| CheckReport::new(n, ALGEBRA_TOL))
    .collect();
    let mut signal_sum = CheckReport::new("conservation: I_s1 + I_s2 = I0/2", ALGEBRA_TOL);
    let mut idler_sum = CheckReport::new("conservation: I_i3 + I_i4 = I0/2", ALGEBRA_TOL);
    let mut network = CheckReport::new("energy conservation: bench up to the polarizers", ALGEBRA_TOL);
    let mut round_trip = CheckReport::new("parser round-trip: built-in bench", 0.0);

    for draw in 0..cfg.draws {
        let params = BenchParams {
            xi: rng.gen_range(0.0..PI),
            theta: rng.gen_range(0.0..PI),
            psi: rng.gen_range(0.0..TAU),
            zeta: rng.gen_range(0.0..TAU),
            tau: rng.gen_range(0.0..1.0) / (2.0 * BenchParams::default().delta_f),
            ..BenchParams::default()
        };
        let manifest = DrawManifest { seed: cfg.seed, draw, params };
        let graph = build_fig1(&params);
        let prop = propagate_with(&graph, registry)?;
        let i0 = params.i0();

        for d in DETECTORS {
            let a = AnalyticPipeline.mean(&prop, d)?;
            let s = sampled.mean(&prop, d)?;
            means.record((a - s).abs() / a.abs().max(i0 / 4.0), Some(&manifest));
        }
        for (a, b) in [("s1", "i3"), ("s2", "i4"), ("s1", "i4"), ("s2", "i3")] {
            let ra = AnalyticPipeline.joint(&prop, a, b)?.gated;
            let rs = sampled.joint(&prop, a, b)?.gated;
            joints.record((ra - rs).abs() / ra.abs().max(i0 * i0 / 16.0), Some(&manifest));
        }

        let (sx, cx) = params.xi.sin_cos();
        let (st, ct) = params.theta.sin_cos();
        let e = Complex64::from_polar(1.0, params.phi());
        let expected = [
            ("s1", OriginTag::Upper, -e * sx, OriginTag::Lower, Complex64::from(cx)),
            ("s2", OriginTag::Upper, e * sx, OriginTag::Lower, Complex64::from(cx)),
            ("i3", OriginTag::Lower, Complex64::from(st), OriginTag::Upper, e * ct),
            ("i4", OriginTag::Lower, Complex64::from(-st), OriginTag::Upper, e * ct),
        ];
        for (check, (det, num, num_c, den, den_c)) in structure.iter_mut().zip(expected) {
            check.record(ratio_deviation(&prop, det, (num, num_c), (den, den_c))?, Some(&manifest));
        }

        let m = |d| AnalyticPipeline.mean(&prop, d);
        signal_sum.record((m("s1")? + m("s2")? - i0 / 2.0).abs() / i0, Some(&manifest));
        idler_sum.record((m("i3")? + m("i4")? - i0 / 2.0).abs() / i0, Some(&manifest));

        let before_polarizers: f64 = ["BS_A.out0", "BS_A.out1", "BS_B.out0", "BS_B.out1"]
            .iter()
            .map(|p| prop.port(p).map(time_averaged_power))
            .sum::<Result<f64>>()?;
        network.record((before_polarizers - i0).abs() / i0, Some(&manifest));

        let (back, diags) = parse_source(&serialize(&graph));
        round_trip.record(if diags.is_empty() && back == graph { 0.0 } else { 1.0 }, Some(&manifest));
    }

    let elements = element_power_check(&mut rng, registry, cfg.draws)?;

    let mut generated =
        CheckReport::new(format!("parser round-trip: {} generated benches", cfg.generated_benches), 0.0);
    for i in 0..cfg.generated_benches {
        let g = random_bench(&mut rng, &format!("gen{i}"), 14);
        let (back, diags) = parse_source(&serialize(&g));
        generated.record(if diags.is_empty() && back == g { 0.0 } else { 1.0 }, None);
    }

    let mut checks = vec![means, joints];
    checks.extend(structure);
    checks.extend([signal_sum, idler_sum, elements, network, round_trip, generated]);
    Ok(SuiteReport { checks })
}

/// Misalignment of the two-term coefficient vector at `det` from the
/// expected one: `|n·d' − d·n'| / (|(n,d)|·|(n',d')|)`, 0 iff parallel.
fn ratio_deviation(
    prop: &Propagation,
    det: &str,
    (num, num_want): (OriginTag, Complex64),
    (den, den_want): (OriginTag, Complex64),
) -> Result<f64> {
    let report = field_report_from(prop, det)?;
    let coeff = |o| report.find(o).map_or(Complex64::new(0.0, 0.0), |r| r.coefficient);
    let (n, d) = (coeff(num), coeff(den));
    if report.rows.len() > 2 {
        return Ok(1.0);
    }
    let got = (n.norm_sqr() + d.norm_sqr()).sqrt();
    let want = (num_want.norm_sqr() + den_want.norm_sqr()).sqrt();
    if got == 0.0 {
        return Ok(1.0);
    }
    Ok((n * den_want - d * num_want).norm() / (got * want))
}

/// Time-averaged power in versus out for every lossless element with
/// inputs, on random multi-term fields.
fn element_power_check(rng: &mut ChaCha8Rng, registry: &ElementRegistry, trials: usize) -> Result<CheckReport> {
    let mut check = CheckReport::new("energy conservation: lossless elements", ALGEBRA_TOL);
    let kinds: Vec<&'static str> = registry.kinds().collect();
    for _ in 0..trials {
        for kind in &kinds {
            let spec = *registry.spec(kind).expect("listed kind");
            if !spec.lossless || spec.inputs.is_empty() {
                continue;
            }
            let mut args = ResolvedArgs::new();
            for a in spec.args {
                let v = match a.kind {
                    crate::optics::ArgKind::Count => rng.gen_range(0..3) as f64,
                    crate::optics::ArgKind::Sign => [1.0, -1.0][rng.gen_range(0..2)],
                    _ => rng.gen_range(-TAU..TAU),
                };
                args.insert(a.name, v);
            }
            let element =
                registry.build(kind, &args).map_err(|message| Error::Element { node: kind.to_string(), message })?;
            let inputs: Vec<PortField> = spec.inputs.iter().map(|_| random_field(rng)).collect();
            let p_in: f64 = inputs.iter().map(time_averaged_power).sum();
            let p_out: f64 = element.apply(&inputs).iter().map(time_averaged_power).sum();
            check.record((p_out - p_in).abs() / p_in.max(1.0), None);
        }
    }
    Ok(check)
}

fn random_field(rng: &mut ChaCha8Rng) -> PortField {
    let n = rng.gen_range(1..=4);
    let terms = (0..n)
        .map(|_| {
            let jones = JonesVec::new(
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
            .unwrap_or(JonesVec::H);
            let mut t = FieldTerm::new(Complex64::from_polar(rng.gen_range(0.1..1.5), rng.gen_range(0.0..TAU)), jones)
                .with_offset(rng.gen_range(-1..=1))
                .with_shift(rng.gen_range(0..2))
                .with_parity([SlotParity::Continuous, SlotParity::Even, SlotParity::Odd][rng.gen_range(0..3)]);
            if rng.gen_bool(0.5) {
                t = t.with_origin(if rng.gen_bool(0.5) { OriginTag::Upper } else { OriginTag::Lower });
            }
            t
        })
        .collect();
    PortField::from_terms("rand", terms)
}
