//! Scalar bench parameters.
//!
//! [`BenchParams`] holds everything in SI units with angles in radians. Bench
//! files and the command line use degrees for angles; [`ReservedParam`] is the
//! table that maps between the two.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchParams {
    /// Input amplitude, square root of intensity units.
    pub e0: f64,
    /// Carrier frequency in Hz. Only a reference: all phases live in the
    /// frame rotating at `f0`.
    pub f0: f64,
    /// AOM detuning in Hz.
    pub delta_f: f64,
    /// Slot period in seconds.
    pub t_e: f64,
    /// Upper-arm phase of the first interferometer.
    pub psi: f64,
    /// Relative phase of the second-stage interferometers.
    pub zeta: f64,
    /// Detection time in seconds, measured from the slot's sync edge.
    pub tau: f64,
    /// Signal-side polarizer angle.
    pub xi: f64,
    /// Idler-side polarizer angle.
    pub theta: f64,
}

impl Default for BenchParams {
    fn default() -> Self {
        let mut p = BenchParams {
            e0: 0.0,
            f0: 0.0,
            delta_f: 0.0,
            t_e: 0.0,
            psi: 0.0,
            zeta: 0.0,
            tau: 0.0,
            xi: 0.0,
            theta: 0.0,
        };
        for r in ReservedParam::ALL {
            r.store(&mut p, r.default);
        }
        p
    }
}

impl BenchParams {
    pub fn i0(&self) -> f64 {
        self.e0 * self.e0
    }

    /// Total interferometric phase `psi + zeta + 2π·2Δf·tau`.
    pub fn phi(&self) -> f64 {
        self.psi + self.zeta + TAU * 2.0 * self.delta_f * self.tau
    }

    pub fn beat_frequency(&self) -> f64 {
        2.0 * self.delta_f
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.e0, self.f0, self.delta_f, self.t_e, self.psi, self.zeta, self.tau, self.xi, self.theta];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if self.delta_f <= 0.0 {
            return Err(Error::InvalidParams(format!("delta_f must be > 0, got {}", self.delta_f)));
        }
        if self.t_e <= 0.0 {
            return Err(Error::InvalidParams(format!("t_e must be > 0, got {}", self.t_e)));
        }
        if self.e0 <= 0.0 {
            return Err(Error::InvalidParams(format!("e0 must be > 0, got {}", self.e0)));
        }
        Ok(())
    }

    /// Interface-unit table (degrees for angles) for every reserved name.
    pub fn to_table(&self) -> BTreeMap<String, f64> {
        ReservedParam::ALL.iter().map(|r| (r.name.to_string(), r.to_interface(r.load(self)))).collect()
    }

    /// Builds parameters from an interface-unit table; missing reserved names
    /// take their defaults and unknown names are ignored.
    pub fn from_table(table: &BTreeMap<String, f64>) -> BenchParams {
        let mut p = BenchParams::default();
        for r in ReservedParam::ALL {
            if let Some(&v) = table.get(r.name) {
                r.store(&mut p, r.from_interface(v));
            }
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamUnit {
    Amplitude,
    Hertz,
    Seconds,
    Degrees,
}

/// A parameter name with a fixed meaning in bench files and on the command
/// line.
#[derive(Debug, Clone, Copy)]
pub struct ReservedParam {
    pub name: &'static str,
    pub unit: ParamUnit,
    /// Default in internal units.
    pub default: f64,
    field: fn(&mut BenchParams) -> &mut f64,
}

impl ReservedParam {
    pub const ALL: [ReservedParam; 9] = [
        ReservedParam { name: "e0", unit: ParamUnit::Amplitude, default: 1.0, field: |p| &mut p.e0 },
        ReservedParam { name: "f0", unit: ParamUnit::Hertz, default: 3.84e14, field: |p| &mut p.f0 },
        ReservedParam { name: "delta_f", unit: ParamUnit::Hertz, default: 80e6, field: |p| &mut p.delta_f },
        ReservedParam { name: "t_e", unit: ParamUnit::Seconds, default: 1e-6, field: |p| &mut p.t_e },
        ReservedParam { name: "psi", unit: ParamUnit::Degrees, default: 0.0, field: |p| &mut p.psi },
        ReservedParam { name: "zeta", unit: ParamUnit::Degrees, default: 0.0, field: |p| &mut p.zeta },
        ReservedParam { name: "tau", unit: ParamUnit::Seconds, default: 0.0, field: |p| &mut p.tau },
        ReservedParam { name: "xi", unit: ParamUnit::Degrees, default: 0.0, field: |p| &mut p.xi },
        ReservedParam { name: "theta", unit: ParamUnit::Degrees, default: 0.0, field: |p| &mut p.theta },
    ];

    pub fn lookup(name: &str) -> Option<&'static ReservedParam> {
        Self::ALL.iter().find(|r| r.name == name)
    }

    pub fn is_angle(&self) -> bool {
        self.unit == ParamUnit::Degrees
    }

    pub fn to_interface(&self, internal: f64) -> f64 {
        if self.is_angle() {
            internal.to_degrees()
        } else {
            internal
        }
    }

    pub fn from_interface(&self, value: f64) -> f64 {
        if self.is_angle() {
            value.to_radians()
        } else {
            value
        }
    }

    fn load(&self, p: &BenchParams) -> f64 {
        let mut copy = *p;
        *(self.field)(&mut copy)
    }

    fn store(&self, p: &mut BenchParams, value: f64) {
        *(self.field)(p) = value;
    }
}
