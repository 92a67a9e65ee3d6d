use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use super::correlation::{check_cross_party, with_angles};
use super::pipeline::{AnalyticPipeline, DetectionPipeline};
use crate::error::{Error, Result};
use crate::optics::{propagate, BenchGraph};

/// Which rates feed the correlator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChshConfig {
    pub det_a: String,
    pub det_b: String,
    /// `false` uses the ungated rate.
    pub gated: bool,
}

impl Default for ChshConfig {
    fn default() -> Self {
        ChshConfig { det_a: "s1".into(), det_b: "i3".into(), gated: true }
    }
}

impl ChshConfig {
    pub fn ungated() -> ChshConfig {
        ChshConfig { gated: false, ..ChshConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChshResult {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
    /// `E(a,b), E(a,b′), E(a′,b), E(a′,b′)`.
    pub e_values: [f64; 4],
    pub s: f64,
    pub gated: bool,
}

/// The textbook optimum for `E = cos 2(a+b)`: a = 0, a′ = 45°, b = ∓22.5°.
pub const CANONICAL_ANGLES: [f64; 4] = [0.0, 45.0, -22.5, 22.5];

fn rate(graph: &BenchGraph, cfg: &ChshConfig, xi: f64, theta: f64) -> Result<f64> {
    let r = AnalyticPipeline.joint(&propagate(&with_angles(graph, xi, theta))?, &cfg.det_a, &cfg.det_b)?;
    Ok(if cfg.gated { r.gated } else { r.ungated })
}

/// Rate-normalized correlator over the four polarizer settings
/// `(ξ|ξ+90°) × (θ|θ+90°)`.
pub fn chsh_e_with(graph: &BenchGraph, cfg: &ChshConfig, xi: f64, theta: f64) -> Result<f64> {
    let (xp, tp) = (xi + FRAC_PI_2, theta + FRAC_PI_2);
    let same = rate(graph, cfg, xi, theta)? + rate(graph, cfg, xp, tp)?;
    let crossed = rate(graph, cfg, xp, theta)? + rate(graph, cfg, xi, tp)?;
    let total = same + crossed;
    if total.is_nan() || total.abs() <= 1e-300 {
        return Err(Error::Degenerate(format!("all four rates vanish at xi={xi}, theta={theta}")));
    }
    Ok((same - crossed) / total)
}

pub fn chsh_e(graph: &BenchGraph, xi: f64, theta: f64) -> Result<f64> {
    check_cross_party(graph, "s1", "i3")?;
    chsh_e_with(graph, &ChshConfig::default(), xi, theta)
}

fn combine(a: f64, a_prime: f64, b: f64, b_prime: f64, e: [f64; 4], gated: bool) -> ChshResult {
    ChshResult { a, a_prime, b, b_prime, e_values: e, s: e[0] + e[1] + e[2] - e[3], gated }
}

/// `S = E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)`, angles in radians.
pub fn chsh_s_with(
    graph: &BenchGraph,
    cfg: &ChshConfig,
    a: f64,
    a_prime: f64,
    b: f64,
    b_prime: f64,
) -> Result<ChshResult> {
    check_cross_party(graph, &cfg.det_a, &cfg.det_b)?;
    let e = [
        chsh_e_with(graph, cfg, a, b)?,
        chsh_e_with(graph, cfg, a, b_prime)?,
        chsh_e_with(graph, cfg, a_prime, b)?,
        chsh_e_with(graph, cfg, a_prime, b_prime)?,
    ];
    Ok(combine(a, a_prime, b, b_prime, e, cfg.gated))
}

pub fn chsh_s(graph: &BenchGraph, a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<ChshResult> {
    chsh_s_with(graph, &ChshConfig::default(), a, a_prime, b, b_prime)
}

pub fn chsh_canonical(graph: &BenchGraph, cfg: &ChshConfig) -> Result<ChshResult> {
    let [a, ap, b, bp] = CANONICAL_ANGLES.map(f64::to_radians);
    chsh_s_with(graph, cfg, a, ap, b, bp)
}

/// Search domain for [`chsh_max_search_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchSpace {
    #[default]
    Full,
    /// One setting on the first side: a′ = a.
    SingleA,
}

/// Coarse grid spacing and the refinement schedule.
pub const COARSE_STEP_DEG: f64 = 15.0;
pub const REFINE_START_DEG: f64 = 7.5;
pub const REFINE_MIN_RAD: f64 = 1e-6;

pub fn chsh_max_search(graph: &BenchGraph) -> Result<ChshResult> {
    chsh_max_search_with(graph, &ChshConfig::default(), SearchSpace::Full)
}

/// Coarse search on a 15° grid over [0°, 180°) for every angle, then
/// coordinate ascent with step halving from 7.5° down to 1e-6 rad.
/// Deterministic: ties keep the lowest grid index and the first improving
/// move in a fixed order.
pub fn chsh_max_search_with(graph: &BenchGraph, cfg: &ChshConfig, space: SearchSpace) -> Result<ChshResult> {
    check_cross_party(graph, &cfg.det_a, &cfg.det_b)?;
    let n = (180.0 / COARSE_STEP_DEG).round() as usize;
    let angles: Vec<f64> = (0..n).map(|i| (i as f64 * COARSE_STEP_DEG).to_radians()).collect();
    let table: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|k| chsh_e_with(graph, cfg, angles[k / n], angles[k % n]))
        .collect::<Result<_>>()?;
    let e = |i: usize, j: usize| table[i * n + j];

    let mut best = (f64::NEG_INFINITY, [0usize; 4]);
    for a in 0..n {
        let a_primes: Vec<usize> = match space {
            SearchSpace::Full => (0..n).collect(),
            SearchSpace::SingleA => vec![a],
        };
        for &ap in &a_primes {
            for b in 0..n {
                for bp in 0..n {
                    let s = e(a, b) + e(a, bp) + e(ap, b) - e(ap, bp);
                    if s > best.0 {
                        best = (s, [a, ap, b, bp]);
                    }
                }
            }
        }
    }

    let cache: RefCell<HashMap<(u64, u64), f64>> = RefCell::new(HashMap::new());
    let e_at = |x: f64, y: f64| -> Result<f64> {
        if let Some(v) = cache.borrow().get(&(x.to_bits(), y.to_bits())) {
            return Ok(*v);
        }
        let v = chsh_e_with(graph, cfg, x, y)?;
        cache.borrow_mut().insert((x.to_bits(), y.to_bits()), v);
        Ok(v)
    };
    let tie = |x: [f64; 4]| match space {
        SearchSpace::Full => x,
        SearchSpace::SingleA => [x[0], x[0], x[2], x[3]],
    };
    let s_at = |x: [f64; 4]| -> Result<f64> {
        let x = tie(x);
        Ok(e_at(x[0], x[2])? + e_at(x[0], x[3])? + e_at(x[1], x[2])? - e_at(x[1], x[3])?)
    };

    let mut x = best.1.map(|i| angles[i]);
    let mut s_best = s_at(x)?;
    let coords: &[usize] = match space {
        SearchSpace::Full => &[0, 1, 2, 3],
        SearchSpace::SingleA => &[0, 2, 3],
    };
    let mut step = REFINE_START_DEG.to_radians();
    while step >= REFINE_MIN_RAD {
        loop {
            let mut moved = false;
            for &i in coords {
                for dir in [1.0, -1.0] {
                    let mut y = x;
                    y[i] += dir * step;
                    let s = s_at(y)?;
                    if s > s_best {
                        x = y;
                        s_best = s;
                        moved = true;
                    }
                }
            }
            if !moved {
                break;
            }
        }
        step /= 2.0;
    }
    let x = tie(x);
    let ev = [e_at(x[0], x[2])?, e_at(x[0], x[3])?, e_at(x[1], x[2])?, e_at(x[1], x[3])?];
    Ok(combine(x[0], x[1], x[2], x[3], ev, cfg.gated))
}
