//! End-to-end acceptance checks, one line per criterion.
//!
//! Oracles are closed forms written out here, independent of the library's
//! own formulas. Exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_8, PI, SQRT_2, TAU};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cohbench_core::bench_gen::random_bench;
use cohbench_core::detection::{
    chsh_canonical, chsh_max_search, correlate, correlation_map, fringe_visibility, phi_grid, phi_scan,
    product_spectrum, with_angles, AnalyticPipeline, ChshConfig, DetectionPipeline, SampledConfig, SampledPipeline,
};
use cohbench_core::dsl::{load, parse_source, serialize, BenchSource};
use cohbench_core::field::{mean_intensity, time_averaged_power};
use cohbench_core::optics::fig1::DETECTORS;
use cohbench_core::optics::{build_fig1, build_fig1_with, field_report, propagate, Fig1Options, ResolvedArgs};
use cohbench_core::{BenchGraph, BenchParams, ElementRegistry, FieldTerm, JonesVec, OriginTag, PortField, SlotParity};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn deg(x: f64) -> f64 {
    x.to_radians()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Base parameters with a non-unit amplitude and a composite phase, so the
/// oracles exercise the I₀ scaling and every contribution to φ.
fn base() -> BenchParams {
    BenchParams { e0: 1.25, zeta: deg(30.0), tau: 1.7e-9, ..Default::default() }
}

fn mean_oracle(det: &str, xi: f64, theta: f64, phi: f64, i0: f64) -> f64 {
    match det {
        "s1" => i0 / 4.0 * (1.0 - (2.0 * xi).sin() * phi.cos()),
        "s2" => i0 / 4.0 * (1.0 + (2.0 * xi).sin() * phi.cos()),
        "i3" => i0 / 4.0 * (1.0 + (2.0 * theta).sin() * phi.cos()),
        "i4" => i0 / 4.0 * (1.0 - (2.0 * theta).sin() * phi.cos()),
        _ => unreachable!(),
    }
}

fn c1_mzi_flatness() -> Outcome {
    let p = base();
    let i0 = p.i0();
    let mut worst: f64 = 0.0;
    let mut values = Vec::new();
    for k in 0..64 {
        let psi = TAU * k as f64 / 64.0;
        let prop = propagate(&build_fig1(&BenchParams { psi, ..p })).map_err(|e| e.to_string())?;
        for port in ["A.out", "B.out"] {
            let m = mean_intensity(prop.port(port).map_err(|e| e.to_string())?, &prop.params);
            worst = worst.max((m - i0 / 2.0).abs());
            values.push(m);
        }
    }
    let spread = values.iter().copied().fold(f64::MIN, f64::max) - values.iter().copied().fold(f64::MAX, f64::min);
    check(worst < 1e-12 && spread < 1e-12, format!("max |I - I0/2| = {worst:.2e}, spread = {spread:.2e} (tol 1e-12)"))
}

fn c2_fringes() -> Outcome {
    let p = base();
    let i0 = p.i0();
    let sampled = SampledPipeline::new(SampledConfig::default());
    let (mut an, mut sa): (f64, f64) = (0.0, 0.0);
    for k in 0..=24 {
        let angle = deg(7.5 * k as f64);
        let g = build_fig1(&BenchParams { xi: angle, theta: angle, ..p });
        for phi in phi_grid(16) {
            let prop = propagate(&g.with_phi(phi)).map_err(|e| e.to_string())?;
            for d in DETECTORS {
                let want = mean_oracle(d, angle, angle, phi, i0);
                let a = AnalyticPipeline.mean(&prop, d).map_err(|e| e.to_string())?;
                let s = sampled.mean(&prop, d).map_err(|e| e.to_string())?;
                an = an.max((a - want).abs());
                sa = sa.max((s - want).abs() / want.abs().max(i0 / 4.0));
            }
        }
    }
    check(
        an < 1e-12 && sa < 1e-3,
        format!("analytic max abs err {an:.2e} (tol 1e-12), sampled max rel err {sa:.2e} (tol 1e-3)"),
    )
}

fn c3_gated_correlation() -> Outcome {
    let p = base();
    let i0 = p.i0();
    let g = build_fig1(&p);
    let grid: Vec<f64> = (0..13).map(|k| deg(15.0 * k as f64)).collect();
    let mut map_err: f64 = 0.0;
    for (a, b) in [("s1", "i3"), ("s2", "i4")] {
        let m = correlation_map(&g, a, b, &grid, &grid).map_err(|e| e.to_string())?;
        for (i, xi) in grid.iter().enumerate() {
            for (j, th) in grid.iter().enumerate() {
                map_err = map_err.max((m[i][j] - i0 * i0 / 16.0 * (xi + th).cos().powi(2)).abs());
            }
        }
    }
    let sampled = SampledPipeline::new(SampledConfig::default());
    let (mut an_spread, mut sa_spread): (f64, f64) = (0.0, 0.0);
    for (xi, th) in [(FRAC_PI_8, FRAC_PI_8), (deg(10.0), deg(55.0)), (deg(70.0), deg(-20.0)), (deg(33.0), deg(121.0))] {
        let gx = with_angles(&g, xi, th);
        for (a, b) in [("s1", "i3"), ("s2", "i4")] {
            let ra = correlate(&gx, a, b, &AnalyticPipeline, &phi_grid(16)).map_err(|e| e.to_string())?;
            let rs = correlate(&gx, a, b, &sampled, &phi_grid(16)).map_err(|e| e.to_string())?;
            an_spread = an_spread.max(ra.phi_spread());
            sa_spread = sa_spread.max(rs.phi_spread() / (i0 * i0 / 16.0));
        }
    }
    check(
        map_err < 1e-12 && an_spread < 1e-12 && sa_spread < 1e-3,
        format!(
            "13x13 max err {map_err:.2e} (tol 1e-12); phi spread analytic {an_spread:.2e} (tol 1e-12), sampled rel {sa_spread:.2e} (tol 1e-3)"
        ),
    )
}

fn c4_cross_pairs() -> Outcome {
    let p = base();
    let i0 = p.i0();
    let grid: Vec<f64> = (0..13).map(|k| deg(15.0 * k as f64)).collect();
    let (mut sym_same, mut sym_cross, mut err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for xi in &grid {
        for th in &grid {
            for phi in [0.0, 1.1, 2.9] {
                let g = with_angles(&build_fig1(&p), *xi, *th).with_phi(phi);
                let prop = propagate(&g).map_err(|e| e.to_string())?;
                let r = |a, b| AnalyticPipeline.joint(&prop, a, b).map(|r| r.gated).map_err(|e| e.to_string());
                let (r13, r24, r14, r23) = (r("s1", "i3")?, r("s2", "i4")?, r("s1", "i4")?, r("s2", "i3")?);
                sym_same = sym_same.max((r13 - r24).abs());
                sym_cross = sym_cross.max((r14 - r23).abs());
                let want = i0 * i0 / 16.0 * (xi - th).cos().powi(2);
                err = err.max((r14 - want).abs()).max((r23 - want).abs());
            }
        }
    }
    check(
        sym_same == 0.0 && sym_cross == 0.0 && err < 1e-12,
        format!(
            "|R_s1i3 - R_s2i4| = {sym_same:.1e}, |R_s1i4 - R_s2i3| = {sym_cross:.1e} (exact); cos^2(xi-theta) err {err:.2e} (tol 1e-12)"
        ),
    )
}

/// Grid plus coordinate refinement over `E = cos 2(a+b)`.
fn chsh_oracle() -> f64 {
    let e = |x: f64, y: f64| (2.0 * (x + y)).cos();
    let s = |v: [f64; 4]| e(v[0], v[2]) + e(v[0], v[3]) + e(v[1], v[2]) - e(v[1], v[3]);
    let mut best = ([0.0; 4], f64::MIN);
    let steps: Vec<f64> = (0..36).map(|k| deg(5.0 * k as f64)).collect();
    for &a in &steps {
        for &ap in &steps {
            for &b in &steps {
                for &bp in &steps {
                    let v = [a, ap, b, bp];
                    if s(v) > best.1 {
                        best = (v, s(v));
                    }
                }
            }
        }
    }
    let mut h = deg(2.5);
    while h > 1e-9 {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..4 {
                for d in [h, -h] {
                    let mut v = best.0;
                    v[i] += d;
                    if s(v) > best.1 {
                        best = (v, s(v));
                        improved = true;
                    }
                }
            }
        }
        h /= 2.0;
    }
    best.1
}

fn c5_chsh() -> Outcome {
    let g = build_fig1(&base());
    let canonical = chsh_canonical(&g, &ChshConfig::default()).map_err(|e| e.to_string())?;
    let searched = chsh_max_search(&g).map_err(|e| e.to_string())?;
    let oracle = chsh_oracle();
    check(
        (canonical.s - 2.0 * SQRT_2).abs() < 1e-9
            && (searched.s - 2.828427).abs() < 1e-4
            && (searched.s - oracle).abs() < 1e-4,
        format!(
            "canonical S = {:.12} (|S - 2sqrt2| = {:.1e}, tol 1e-9); search S = {:.9}, oracle {:.9} (tol 1e-4)",
            canonical.s,
            (canonical.s - 2.0 * SQRT_2).abs(),
            searched.s,
            oracle
        ),
    )
}

fn c6_no_delay() -> Outcome {
    let mut vis: f64 = 0.0;
    let mut power_err: f64 = 0.0;
    for (xi, th) in [(45.0, 45.0), (22.5, 22.5), (30.0, -10.0), (80.0, 5.0)] {
        let p = BenchParams { xi: deg(xi), theta: deg(th), ..base() };
        let i0 = p.i0();
        let nodelay = build_fig1_with(&p, Fig1Options { delay_lines: false });
        for d in DETECTORS {
            let scan = phi_scan(&nodelay, d, &phi_grid(16), &AnalyticPipeline).map_err(|e| e.to_string())?;
            vis = vis.max(fringe_visibility(&scan));
        }
        for phi in [0.0, 2.0] {
            let with = propagate(&build_fig1(&p).with_phi(phi)).map_err(|e| e.to_string())?;
            let without = propagate(&nodelay.with_phi(phi)).map_err(|e| e.to_string())?;
            let total = |prop: &cohbench_core::Propagation, ports: &[&str]| -> f64 {
                ports.iter().map(|q| time_averaged_power(prop.port(q).unwrap())).sum()
            };
            let dets = ["s1", "s2", "i3", "i4"];
            let splitters = ["BS_A.out0", "BS_A.out1", "BS_B.out0", "BS_B.out1"];
            power_err = power_err
                .max((total(&without, &splitters) - i0).abs())
                .max((total(&with, &splitters) - i0).abs())
                .max((total(&without, &dets) - total(&with, &dets)).abs())
                .max((total(&without, &dets) - i0 / 2.0).abs());
        }
    }
    check(
        vis < 1e-12 && power_err < 1e-12,
        format!("max visibility {vis:.2e} (tol 1e-12); max power deviation {power_err:.2e} (tol 1e-12)"),
    )
}

fn c7_gate_necessity() -> Outcome {
    let p = BenchParams { xi: FRAC_PI_8, theta: FRAC_PI_8, ..base() };
    let i0 = p.i0();
    let want = i0 * i0 / 16.0 * (2.0 * FRAC_PI_8).cos().powi(2);
    let r = correlate(&build_fig1(&p), "s1", "i3", &AnalyticPipeline, &phi_grid(16)).map_err(|e| e.to_string())?;
    let dev = r.per_phi_ungated.iter().map(|u| (u - want).abs()).fold(0.0, f64::max) / (i0 * i0 / 16.0);
    check(dev > 0.05, format!("max |R_ungated - R_gated formula| = {dev:.4} * I0^2/16 (need > 0.05)"))
}

fn c8_product_spectrum() -> Outcome {
    let p = BenchParams { xi: FRAC_PI_8, theta: FRAC_PI_8, psi: 0.9, ..base() };
    let mut worst_leak: f64 = 0.0;
    let mut weakest_line = f64::MAX;
    for (a, b) in [("s1", "i3"), ("s2", "i4"), ("s1", "i4")] {
        let spec = product_spectrum(&build_fig1(&p), a, b, SampledConfig::default()).map_err(|e| e.to_string())?;
        let peak = spec.iter().map(|l| l.power).fold(0.0, f64::max);
        for l in &spec {
            if [-2.0, 0.0, 2.0].iter().any(|f| (l.frequency - f).abs() < 1e-9) {
                weakest_line = weakest_line.min(l.power / peak);
            } else {
                worst_leak = worst_leak.max(l.power / peak);
            }
        }
    }
    let rejection_db = -10.0 * worst_leak.max(1e-300).log10();
    check(
        rejection_db > 60.0 && weakest_line > 1e-3,
        format!("rejection outside {{-2df, 0, +2df}} = {rejection_db:.0} dB (need > 60); weakest expected line {weakest_line:.3} of peak"),
    )
}

fn c9_pipeline_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let sampled = SampledPipeline::new(SampledConfig::default());
    let (mut dm, mut dr): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let p = BenchParams {
            xi: rng.gen_range(0.0..PI),
            theta: rng.gen_range(0.0..PI),
            psi: rng.gen_range(0.0..TAU),
            zeta: rng.gen_range(0.0..TAU),
            tau: rng.gen_range(0.0..2e-8),
            e0: rng.gen_range(0.5..2.0),
            ..Default::default()
        };
        let i0 = p.i0();
        let prop = propagate(&build_fig1(&p)).map_err(|e| e.to_string())?;
        for d in DETECTORS {
            let a = AnalyticPipeline.mean(&prop, d).map_err(|e| e.to_string())?;
            let s = sampled.mean(&prop, d).map_err(|e| e.to_string())?;
            dm = dm.max((a - s).abs() / a.abs().max(i0 / 4.0));
        }
        for (a, b) in [("s1", "i3"), ("s2", "i4"), ("s1", "i4"), ("s2", "i3")] {
            let ra = AnalyticPipeline.joint(&prop, a, b).map_err(|e| e.to_string())?.gated;
            let rs = sampled.joint(&prop, a, b).map_err(|e| e.to_string())?.gated;
            dr = dr.max((ra - rs).abs() / ra.abs().max(i0 * i0 / 16.0));
        }
    }
    check(
        dm < 1e-3 && dr < 1e-3,
        format!("100 draws: means max rel dev {dm:.2e}, gated rates max rel dev {dr:.2e} (tol 1e-3)"),
    )
}

fn arb_term() -> impl Strategy<Value = FieldTerm> {
    (
        (0.05f64..2.0, 0.0f64..TAU),
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
        -1i32..=1,
        0i32..3,
        0usize..3,
        0usize..3,
    )
        .prop_filter_map("degenerate polarization", |((r, ph), (a, b, c, d), off, shift, par, org)| {
            let jones = JonesVec::new(Complex64::new(a, b), Complex64::new(c, d))?;
            let parity = [SlotParity::Continuous, SlotParity::Even, SlotParity::Odd][par];
            let mut t = FieldTerm::new(Complex64::from_polar(r, ph), jones)
                .with_offset(off)
                .with_shift(shift)
                .with_parity(parity);
            if org > 0 {
                t = t.with_origin([OriginTag::Upper, OriginTag::Lower][org - 1]);
            }
            Some(t)
        })
}

fn c10_conservation() -> Outcome {
    let registry = ElementRegistry::standard();
    let mut runner = TestRunner::new(PtConfig { cases: 256, failure_persistence: None, ..PtConfig::default() });
    let mut max_dev: f64 = 0.0;
    let mut kinds_checked = 0;
    for kind in registry.kinds() {
        let spec = *registry.spec(kind).unwrap();
        if !spec.lossless || spec.inputs.is_empty() {
            continue;
        }
        kinds_checked += 1;
        let strategy = (
            prop::collection::vec(prop::collection::vec(arb_term(), 1..5), spec.inputs.len()),
            -TAU..TAU,
            0u32..3,
            prop::bool::ANY,
        );
        let result = runner.run(&strategy, |(fields, angle, count, sign)| {
            let mut args = ResolvedArgs::new();
            for a in spec.args {
                let v = match a.name {
                    "slots" => count as f64,
                    "sign" => {
                        if sign {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    _ => angle,
                };
                args.insert(a.name, v);
            }
            let element = registry.build(kind, &args).unwrap();
            let inputs: Vec<PortField> = fields.into_iter().map(|t| PortField::from_terms("in", t)).collect();
            let p_in: f64 = inputs.iter().map(time_averaged_power).sum();
            let p_out: f64 = element.apply(&inputs).iter().map(time_averaged_power).sum();
            let dev = (p_out - p_in).abs() / p_in.max(1.0);
            prop_assert!(dev < 1e-12, "{kind}: in {p_in} out {p_out}");
            Ok(())
        });
        if let Err(e) = result {
            return Err(format!("{kind}: {e}"));
        }
        // record the deviation on a fixed sample as well, for the report line
        let mut rng = ChaCha8Rng::seed_from_u64(kinds_checked);
        let field = PortField::from_terms(
            "in",
            vec![FieldTerm::new(
                Complex64::from_polar(1.0, rng.gen_range(0.0..TAU)),
                JonesVec::linear(rng.gen_range(0.0..PI)),
            )
            .with_parity(SlotParity::Even)
            .with_offset(1)],
        );
        let inputs = vec![field; spec.inputs.len()];
        let mut args = ResolvedArgs::new();
        for a in spec.args {
            args.insert(a.name, if a.name == "sign" || a.name == "slots" { 1.0 } else { 0.3 });
        }
        let out: f64 = registry.build(kind, &args).unwrap().apply(&inputs).iter().map(time_averaged_power).sum();
        let inp: f64 = inputs.iter().map(time_averaged_power).sum();
        max_dev = max_dev.max((out - inp).abs());
    }

    let p = base();
    let i0 = p.i0();
    let mut sum_err: f64 = 0.0;
    for k in 0..=24 {
        let angle = deg(7.5 * k as f64);
        let g = build_fig1(&BenchParams { xi: angle, theta: angle, ..p });
        for phi in phi_grid(16) {
            let prop = propagate(&g.with_phi(phi)).map_err(|e| e.to_string())?;
            let m = |d| AnalyticPipeline.mean(&prop, d).unwrap();
            sum_err = sum_err.max((m("s1") + m("s2") - i0 / 2.0).abs()).max((m("i3") + m("i4") - i0 / 2.0).abs());
        }
    }
    check(
        kinds_checked >= 8 && max_dev < 1e-12 && sum_err < 1e-12,
        format!(
            "{kinds_checked} lossless kinds x 256 property cases within 1e-12; I_s1+I_s2 and I_i3+I_i4 vs I0/2 max err {sum_err:.2e} (tol 1e-12)"
        ),
    )
}

fn c11_field_structure() -> Outcome {
    let p = base();
    let mut worst: f64 = 0.0;
    let grid: Vec<f64> = (0..10).map(|k| deg(9.0 + 18.0 * k as f64)).collect();
    for &xi in &grid {
        for &th in &grid {
            for k in 0..8 {
                let phi = TAU * k as f64 / 8.0 + 0.1;
                let g = with_angles(&build_fig1(&p), xi, th).with_phi(phi);
                let e = Complex64::from_polar(1.0, phi);
                let expected = [
                    ("s1", OriginTag::Upper, OriginTag::Lower, -e * xi.tan()),
                    ("s2", OriginTag::Upper, OriginTag::Lower, e * xi.tan()),
                    ("i3", OriginTag::Lower, OriginTag::Upper, th.tan() / e),
                    ("i4", OriginTag::Lower, OriginTag::Upper, -th.tan() / e),
                ];
                for (det, num, den, want) in expected {
                    let report = field_report(&g, det).map_err(|e| e.to_string())?;
                    if report.rows.len() != 2 {
                        return Err(format!("{det}: expected two terms, got {}", report.rows.len()));
                    }
                    let got = report.ratio(num, den).ok_or_else(|| format!("{det}: missing term"))?;
                    worst = worst.max((got - want).norm() / want.norm().max(1.0));
                }
            }
        }
    }
    check(
        worst < 1e-12,
        format!("10x10 (xi, theta) x 8 phi, four detectors: max rel ratio err {worst:.2e} (tol 1e-12)"),
    )
}

fn c12_dsl() -> Outcome {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let shipped_path = root.join("../../benches/fig1.obd");
    let shipped = std::fs::read_to_string(&shipped_path).map_err(|e| format!("{}: {e}", shipped_path.display()))?;
    let (g, diags) = parse_source(&BenchSource::new("fig1.obd", shipped));
    if !diags.is_empty() || g.detectors.len() != 4 || g != build_fig1(&BenchParams::default()) {
        return Err(format!("shipped fig1.obd: {} diagnostics, {} detectors", diags.len(), g.detectors.len()));
    }

    let mut trips = 0;
    let fig1 = build_fig1(&base());
    let mut benches: Vec<BenchGraph> = vec![fig1];
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    benches.extend((0..20).map(|i| random_bench(&mut rng, &format!("gen{i}"), 16)));
    for g in &benches {
        let (back, d) = parse_source(&serialize(g));
        if !d.is_empty() || &back != g {
            return Err(format!("bench `{}` did not round-trip ({} diagnostics)", g.name, d.len()));
        }
        trips += 1;
    }

    let cases = [
        ("illegal_char.obd", 4, "illegal character"),
        ("unknown_kind.obd", 3, "unknown element kind"),
        ("duplicate_node.obd", 5, "duplicate node"),
        ("missing_arrow.obd", 6, "expected `->`"),
        ("bs_three_links.obd", 8, "takes 2 input"),
    ];
    for (file, line, needle) in cases {
        let path = root.join("tests/fixtures/malformed").join(file);
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let diags = match load(&BenchSource::new(file, text)) {
            Ok(_) => return Err(format!("{file}: accepted")),
            Err(cohbench_core::Error::InvalidBench(d)) => d,
            Err(e) => return Err(format!("{file}: {e}")),
        };
        if !diags.iter().any(|d| d.line == line && d.message.contains(needle)) {
            return Err(format!("{file}: no `{needle}` diagnostic on line {line}: {diags:?}"));
        }
    }
    check(
        true,
        format!("{trips} benches round-trip (fig1 + 20 generated); 5/5 malformed files diagnosed on the right line"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 MZI output flatness", c1_mzi_flatness),
        ("2 fringe formulas", c2_fringes),
        ("3 gated correlation", c3_gated_correlation),
        ("4 cross-pair rates", c4_cross_pairs),
        ("5 CHSH", c5_chsh),
        ("6 no-delay control", c6_no_delay),
        ("7 gate necessity", c7_gate_necessity),
        ("8 product-spectrum structure", c8_product_spectrum),
        ("9 pipeline equivalence", c9_pipeline_equivalence),
        ("10 conservation", c10_conservation),
        ("11 field structure", c11_field_structure),
        ("12 DSL round-trip and diagnostics", c12_dsl),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  {name:<34} {detail} [{ms} ms]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:<34} {detail} [{ms} ms]");
            }
        }
    }
    println!("acceptance: {}/12 passed in {:.1} s", 12 - failed, started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
