use std::collections::BTreeMap;
use std::fmt;

use crate::field::PortField;

/// An optical element as a map from input port fields to output port fields.
///
/// `inputs` arrive in the order of [`ElementSpec::inputs`]; an unlinked
/// optional input is an empty field. The result must have one entry per
/// [`ElementSpec::outputs`], in order. Port labels on the returned fields are
/// overwritten by the propagation engine.
pub trait OpticalElement: fmt::Debug + Send + Sync {
    fn apply(&self, inputs: &[PortField]) -> Vec<PortField>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PortSpec {
    pub name: &'static str,
    pub required: bool,
}

impl PortSpec {
    pub const fn required(name: &'static str) -> PortSpec {
        PortSpec { name, required: true }
    }

    pub const fn optional(name: &'static str) -> PortSpec {
        PortSpec { name, required: false }
    }
}

/// How a keyword argument is written and what it resolves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    /// Number or param reference, used as is.
    Plain,
    /// Number or param reference in degrees, resolved to radians.
    Degrees,
    /// Number or param reference in radians.
    Radians,
    /// Literal non-negative integer.
    Count,
    /// Literal `1` or `-1`.
    Sign,
    /// Param reference only, an angle in degrees, resolved to radians.
    AngleParam,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArgSpec {
    pub name: &'static str,
    pub kind: ArgKind,
    /// Arguments sharing a group are alternatives: exactly one must be given.
    /// Ungrouped arguments are required.
    pub group: Option<&'static str>,
}

impl ArgSpec {
    pub const fn required(name: &'static str, kind: ArgKind) -> ArgSpec {
        ArgSpec { name, kind, group: None }
    }

    pub const fn one_of(group: &'static str, name: &'static str, kind: ArgKind) -> ArgSpec {
        ArgSpec { name, kind, group: Some(group) }
    }
}

/// Static description of an element kind: ports, arguments, loss behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementSpec {
    pub kind: &'static str,
    pub inputs: &'static [PortSpec],
    pub outputs: &'static [&'static str],
    pub args: &'static [ArgSpec],
    pub lossless: bool,
}

impl ElementSpec {
    pub fn input_index(&self, port: &str) -> Option<usize> {
        self.inputs.iter().position(|p| p.name == port)
    }

    pub fn output_index(&self, port: &str) -> Option<usize> {
        self.outputs.iter().position(|p| *p == port)
    }

    pub fn arg(&self, name: &str) -> Option<&ArgSpec> {
        self.args.iter().find(|a| a.name == name)
    }
}

/// Argument values after param substitution and unit conversion. Angles are
/// in radians.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResolvedArgs {
    values: BTreeMap<String, f64>,
}

impl ResolvedArgs {
    pub fn new() -> ResolvedArgs {
        ResolvedArgs::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> ResolvedArgs {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn insert(&mut self, name: &str, value: f64) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<f64, String> {
        self.get(name).ok_or_else(|| format!("missing argument `{name}`"))
    }
}
