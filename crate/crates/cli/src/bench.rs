//! Bench loading and parameter overrides.

use std::io::ErrorKind;

use cohbench_core::dsl::{load, serialize, BenchSource};
use cohbench_core::optics::build_fig1;
use cohbench_core::params::ReservedParam;
use cohbench_core::{BenchGraph, BenchParams, Error};

use crate::error::{CliError, CliResult};

pub const BUILTIN_FIG1: &str = "builtin:fig1";

/// Pseudo-parameter: the total interferometric phase, set through `psi`.
pub const PHI: &str = "phi";

#[derive(Debug, Clone)]
pub struct LoadedBench {
    /// Path as given, or `builtin:fig1`.
    pub source: String,
    pub graph: BenchGraph,
}

/// Reads and validates a bench. The built-in bench goes through the DSL
/// like any file.
pub fn load_bench(spec: &str) -> CliResult<LoadedBench> {
    let text = if spec == BUILTIN_FIG1 {
        serialize(&build_fig1(&BenchParams::default())).text
    } else {
        std::fs::read_to_string(spec).map_err(|e| match e.kind() {
            ErrorKind::NotFound => CliError::usage(format!("{spec}: file not found")),
            _ => CliError::usage(format!("{spec}: {e}")),
        })?
    };
    match load(&BenchSource::new(spec, text)) {
        Ok(graph) => Ok(LoadedBench { source: spec.to_string(), graph }),
        Err(Error::InvalidBench(diags)) => {
            let lines: String = diags.iter().map(|d| format!("\n  {spec}:{d}")).collect();
            Err(CliError::usage(format!("invalid bench {spec}:{lines}")))
        }
        Err(e) => Err(e.into()),
    }
}

/// Whether `name` may be set or swept on `graph`.
pub fn is_known(graph: &BenchGraph, name: &str) -> bool {
    name == PHI || ReservedParam::lookup(name).is_some() || graph.params.contains_key(name)
}

/// Reserved angles and `phi` are in degrees.
pub fn is_angle(name: &str) -> bool {
    name == PHI || ReservedParam::lookup(name).is_some_and(ReservedParam::is_angle)
}

pub fn known_names(graph: &BenchGraph) -> Vec<String> {
    let mut names: Vec<String> = ReservedParam::ALL.iter().map(|r| r.name.to_string()).collect();
    names.push(PHI.to_string());
    names.extend(graph.params.keys().filter(|k| ReservedParam::lookup(k).is_none()).cloned());
    names
}

fn unknown(graph: &BenchGraph, name: &str) -> CliError {
    CliError::usage(format!("unknown parameter `{name}` (known: {})", known_names(graph).join(", ")))
}

/// Splits `name=value`.
pub fn parse_assignment(s: &str) -> CliResult<(String, &str)> {
    let (k, v) = s.split_once('=').ok_or_else(|| CliError::usage(format!("expected NAME=VALUE, got `{s}`")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(CliError::usage(format!("empty parameter name in `{s}`")));
    }
    Ok((k.to_string(), v.trim()))
}

pub fn parse_number(s: &str, what: &str) -> CliResult<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::usage(format!("{what}: `{s}` is not a finite number"))),
    }
}

/// Applies `(name, value)` pairs in interface units. `phi` is applied last
/// so that it sees the final `zeta`, `tau` and `delta_f`.
pub fn apply(graph: &BenchGraph, values: &[(String, f64)]) -> CliResult<BenchGraph> {
    let mut g = graph.clone();
    let mut phi = None;
    for (name, value) in values {
        if !is_known(graph, name) {
            return Err(unknown(graph, name));
        }
        if name == PHI {
            phi = Some(*value);
        } else {
            g.set_param(name, *value);
        }
    }
    if let Some(phi) = phi {
        g = g.with_phi(phi.to_radians());
    }
    g.bench_params().validate()?;
    Ok(g)
}

/// Parses and applies repeated `--set NAME=VALUE` flags.
pub fn apply_overrides(graph: &BenchGraph, sets: &[String]) -> CliResult<BenchGraph> {
    let mut values = Vec::with_capacity(sets.len());
    for s in sets {
        let (k, v) = parse_assignment(s)?;
        if !is_known(graph, &k) {
            return Err(unknown(graph, &k));
        }
        values.push((k.clone(), parse_number(v, &format!("--set {k}"))?));
    }
    apply(graph, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_matches_constructor() {
        let b = load_bench(BUILTIN_FIG1).unwrap();
        assert_eq!(b.graph, build_fig1(&BenchParams::default()));
    }

    #[test]
    fn missing_file() {
        let e = load_bench("definitely/not/here.obd").unwrap_err();
        assert_eq!(e.code, 2);
        assert!(e.message.contains("file not found"));
    }

    #[test]
    fn overrides() {
        let g = load_bench(BUILTIN_FIG1).unwrap().graph;
        let g2 = apply_overrides(&g, &["xi=22.5".into(), "e0 = 2".into()]).unwrap();
        let p = g2.bench_params();
        assert!((p.xi - 22.5f64.to_radians()).abs() < 1e-15);
        assert_eq!(p.e0, 2.0);
        assert_eq!(apply_overrides(&g, &["nope=1".into()]).unwrap_err().code, 2);
        assert_eq!(apply_overrides(&g, &["xi".into()]).unwrap_err().code, 2);
        assert_eq!(apply_overrides(&g, &["xi=abc".into()]).unwrap_err().code, 2);
        assert_eq!(apply_overrides(&g, &["e0=0".into()]).unwrap_err().code, 2);
    }

    #[test]
    fn phi_goes_last() {
        let g = load_bench(BUILTIN_FIG1).unwrap().graph;
        let g2 = apply_overrides(&g, &["phi=90".into(), "zeta=30".into()]).unwrap();
        let p = g2.bench_params();
        assert!((p.phi() - 90f64.to_radians()).abs() < 1e-12);
        assert!((p.zeta - 30f64.to_radians()).abs() < 1e-15);
    }
}
