//! Labeled complex-field terms and the interference algebra over them.
//!
//! A [`FieldTerm`] is one plane-wave component in the frame rotating at the
//! carrier: a complex amplitude, a unit Jones direction, the interferometer
//! arm it came from, an integer frequency offset in units of Δf and the set of
//! time slots it occupies. Slot occupancy is periodic with period
//! [`SLOT_PERIOD`], so every slot average below runs over slots `0..2`.
//!
//! Time `t` is always measured from the sync edge of the slot being observed.
//! The EOM switching and the AOM drives share one clock, so every slot sees
//! the same beat phase at the same local time.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::params::BenchParams;

/// Number of slots after which every occupancy pattern repeats.
pub const SLOT_PERIOD: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::H, Polarization::V];
}

/// Unit polarization direction `h·Ĥ + v·V̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVec {
    pub h: Complex64,
    pub v: Complex64,
}

impl JonesVec {
    pub const H: JonesVec = JonesVec { h: Complex64::new(1.0, 0.0), v: Complex64::new(0.0, 0.0) };
    pub const V: JonesVec = JonesVec { h: Complex64::new(0.0, 0.0), v: Complex64::new(1.0, 0.0) };

    /// Normalizes `(h, v)`; `None` for the zero vector.
    pub fn new(h: Complex64, v: Complex64) -> Option<JonesVec> {
        let n = (h.norm_sqr() + v.norm_sqr()).sqrt();
        (n > 0.0 && n.is_finite()).then(|| JonesVec { h: h / n, v: v / n })
    }

    /// Linear polarization at `angle` from horizontal, counter-clockwise.
    pub fn linear(angle: f64) -> JonesVec {
        JonesVec { h: Complex64::new(angle.cos(), 0.0), v: Complex64::new(angle.sin(), 0.0) }
    }

    pub fn basis(pol: Polarization) -> JonesVec {
        match pol {
            Polarization::H => JonesVec::H,
            Polarization::V => JonesVec::V,
        }
    }

    pub fn component(&self, pol: Polarization) -> Complex64 {
        match pol {
            Polarization::H => self.h,
            Polarization::V => self.v,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    /// H and V exchanged.
    pub fn swapped(&self) -> JonesVec {
        JonesVec { h: self.v, v: self.h }
    }

    /// `Some(pol)` when the direction is exactly a lab basis vector.
    pub fn as_basis(&self) -> Option<Polarization> {
        if *self == JonesVec::H {
            Some(Polarization::H)
        } else if *self == JonesVec::V {
            Some(Polarization::V)
        } else {
            None
        }
    }

    fn cmp_key(&self, other: &JonesVec) -> Ordering {
        // +0.0 folds -0.0 into 0.0 so equal directions compare equal
        let a = [self.h.re + 0.0, self.h.im + 0.0, self.v.re + 0.0, self.v.im + 0.0];
        let b = [other.h.re + 0.0, other.h.im + 0.0, other.v.re + 0.0, other.v.im + 0.0];
        a.iter().zip(b.iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }
}

/// Interferometer arm a term was routed into at the first polarizing split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OriginTag {
    Upper,
    Lower,
}

impl OriginTag {
    pub fn label(self) -> &'static str {
        match self {
            OriginTag::Upper => "u",
            OriginTag::Lower => "l",
        }
    }
}

/// Source slots a term occupies before any delay is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotParity {
    Continuous,
    Even,
    Odd,
}

impl SlotParity {
    pub fn label(self) -> &'static str {
        match self {
            SlotParity::Continuous => "all",
            SlotParity::Even => "even",
            SlotParity::Odd => "odd",
        }
    }

    pub fn from_bit(bit: i64) -> SlotParity {
        if bit.rem_euclid(2) == 0 {
            SlotParity::Even
        } else {
            SlotParity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldTerm {
    pub amplitude: Complex64,
    pub jones: JonesVec,
    pub origin: Option<OriginTag>,
    /// Frequency offset from the carrier in units of Δf.
    pub freq_offset: i32,
    /// Accumulated delay in slots.
    pub slot_shift: i32,
    pub slot_parity: SlotParity,
}

impl FieldTerm {
    /// Continuous, untagged, unshifted term at the carrier frequency.
    pub fn new(amplitude: Complex64, jones: JonesVec) -> FieldTerm {
        FieldTerm { amplitude, jones, origin: None, freq_offset: 0, slot_shift: 0, slot_parity: SlotParity::Continuous }
    }

    pub fn with_origin(mut self, origin: OriginTag) -> FieldTerm {
        self.origin = Some(origin);
        self
    }

    pub fn with_offset(mut self, offset: i32) -> FieldTerm {
        self.freq_offset = offset;
        self
    }

    pub fn with_parity(mut self, parity: SlotParity) -> FieldTerm {
        self.slot_parity = parity;
        self
    }

    pub fn with_shift(mut self, shift: i32) -> FieldTerm {
        self.slot_shift = shift;
        self
    }

    pub fn with_amplitude(mut self, amplitude: Complex64) -> FieldTerm {
        self.amplitude = amplitude;
        self
    }

    pub fn occupies(&self, slot: i64) -> bool {
        let rel = (slot - self.slot_shift as i64).rem_euclid(2);
        match self.slot_parity {
            SlotParity::Continuous => true,
            SlotParity::Even => rel == 0,
            SlotParity::Odd => rel == 1,
        }
    }

    /// Parity of the physical slots this term lights, `None` if it lights all.
    pub fn physical_parity(&self) -> Option<i64> {
        let base = match self.slot_parity {
            SlotParity::Continuous => return None,
            SlotParity::Even => 0,
            SlotParity::Odd => 1,
        };
        Some((base + self.slot_shift as i64).rem_euclid(2))
    }

    /// Complex amplitude along one lab polarization.
    pub fn component(&self, pol: Polarization) -> Complex64 {
        self.amplitude * self.jones.component(pol)
    }

    /// Amplitude at local time `t` including the offset rotation.
    pub fn phasor(&self, t: f64, delta_f: f64) -> Complex64 {
        self.amplitude * Complex64::from_polar(1.0, TAU * self.freq_offset as f64 * delta_f * t)
    }

    pub fn same_labels(&self, other: &FieldTerm) -> bool {
        self.label_cmp(other) == Ordering::Equal
    }

    /// Canonical ordering over labels (everything except the amplitude).
    pub fn label_cmp(&self, other: &FieldTerm) -> Ordering {
        self.origin
            .cmp(&other.origin)
            .then(self.freq_offset.cmp(&other.freq_offset))
            .then(self.slot_parity.cmp(&other.slot_parity))
            .then(self.slot_shift.cmp(&other.slot_shift))
            .then_with(|| self.jones.cmp_key(&other.jones))
    }
}

/// The terms present at one optical port.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PortField {
    pub port: String,
    pub terms: Vec<FieldTerm>,
}

impl PortField {
    pub fn new(port: impl Into<String>) -> PortField {
        PortField { port: port.into(), terms: Vec::new() }
    }

    pub fn from_terms(port: impl Into<String>, terms: Vec<FieldTerm>) -> PortField {
        PortField { port: port.into(), terms }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn relabel(mut self, port: impl Into<String>) -> PortField {
        self.port = port.into();
        self
    }

    pub fn occupies(&self, slot: i64) -> bool {
        self.terms.iter().any(|t| t.occupies(slot))
    }

    pub fn terms_in_slot(&self, slot: i64) -> impl Iterator<Item = &FieldTerm> + '_ {
        self.terms.iter().filter(move |t| t.occupies(slot))
    }

    /// Slots in one occupancy period that hold at least one term.
    pub fn occupied_slots(&self) -> Vec<i64> {
        (0..SLOT_PERIOD).filter(|&s| self.occupies(s)).collect()
    }

    pub fn map_terms(&self, f: impl Fn(FieldTerm) -> FieldTerm) -> PortField {
        PortField { port: self.port.clone(), terms: self.terms.iter().copied().map(f).collect() }
    }

    pub fn scaled(&self, factor: Complex64) -> PortField {
        self.map_terms(|t| t.with_amplitude(t.amplitude * factor))
    }

    /// Coefficients as seen at local time `t`: each amplitude picks up its
    /// offset rotation. Labels are unchanged.
    pub fn at_time(&self, t: f64, delta_f: f64) -> PortField {
        self.map_terms(|term| term.with_amplitude(term.phasor(t, delta_f)))
    }

    /// Total field along `pol` in `slot` at local time `t`.
    pub fn slot_field(&self, slot: i64, pol: Polarization, t: f64, delta_f: f64) -> Complex64 {
        self.terms_in_slot(slot).map(|term| term.phasor(t, delta_f) * term.jones.component(pol)).sum()
    }

    /// Per-slot polarization content at `t = 0`: `(slot, H power, V power)`.
    pub fn slot_timeline(&self, n_slots: i64) -> Vec<(i64, f64, f64)> {
        (0..n_slots)
            .map(|s| {
                let h = self.slot_field(s, Polarization::H, 0.0, 0.0).norm_sqr();
                let v = self.slot_field(s, Polarization::V, 0.0, 0.0).norm_sqr();
                (s, h, v)
            })
            .collect()
    }
}

/// Combines terms with identical labels and sorts them canonically.
pub fn merge_terms(pf: &PortField) -> PortField {
    let mut terms = pf.terms.clone();
    terms.sort_by(|a, b| a.label_cmp(b));
    let mut merged: Vec<FieldTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match merged.last_mut() {
            Some(last) if last.same_labels(&t) => last.amplitude += t.amplitude,
            _ => merged.push(t),
        }
    }
    PortField { port: pf.port.clone(), terms: merged }
}

/// Intensity in `slot` at local time `t`, summed over both polarizations.
pub fn instantaneous_intensity(pf: &PortField, t: f64, slot: i64, params: &BenchParams) -> f64 {
    Polarization::BOTH.iter().map(|&pol| pf.slot_field(slot, pol, t, params.delta_f).norm_sqr()).sum()
}

/// Mean intensity per occupied slot, read at the detection time `params.tau`.
///
/// The AOM drives are locked to the slot clock, so the ±Δf beat between
/// differently tagged terms has the same phase at `tau` in every slot and
/// survives the slot average as part of φ. Returns 0 for an empty field.
pub fn mean_intensity(pf: &PortField, params: &BenchParams) -> f64 {
    let slots = pf.occupied_slots();
    if slots.is_empty() {
        return 0.0;
    }
    let total: f64 = slots.iter().map(|&s| instantaneous_intensity(pf, params.tau, s, params)).sum();
    total / slots.len() as f64
}

/// Mean intensity per occupied slot, averaged over an integer number of beat
/// periods as well. Cross terms between different frequency offsets vanish.
pub fn beat_averaged_intensity(pf: &PortField, _params: &BenchParams) -> f64 {
    let slots = pf.occupied_slots();
    if slots.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    for &s in &slots {
        for pol in Polarization::BOTH {
            let mut by_offset: BTreeMap<i32, Complex64> = BTreeMap::new();
            for term in pf.terms_in_slot(s) {
                *by_offset.entry(term.freq_offset).or_default() += term.component(pol);
            }
            total += by_offset.values().map(|c| c.norm_sqr()).sum::<f64>();
        }
    }
    total / slots.len() as f64
}

/// Power averaged over a full occupancy period and over the beat, dark slots
/// included. Additive over ports, so it is the quantity lossless networks
/// conserve.
pub fn time_averaged_power(pf: &PortField) -> f64 {
    let mut total = 0.0;
    for s in 0..SLOT_PERIOD {
        for pol in Polarization::BOTH {
            let mut by_offset: BTreeMap<i32, Complex64> = BTreeMap::new();
            for term in pf.terms_in_slot(s) {
                *by_offset.entry(term.freq_offset).or_default() += term.component(pol);
            }
            total += by_offset.values().map(|c| c.norm_sqr()).sum::<f64>();
        }
    }
    total / SLOT_PERIOD as f64
}

/// One term from each side of a joint measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermPair {
    pub a: FieldTerm,
    pub b: FieldTerm,
    /// `a.freq_offset + b.freq_offset`: the pair's frequency in the field
    /// product, in units of Δf.
    pub net_offset: i32,
    pub amplitude: Complex64,
}

impl TermPair {
    pub fn shares_slot(&self, slot: i64) -> bool {
        self.a.occupies(slot) && self.b.occupies(slot)
    }

    /// Amplitude of the pair along one polarization on each side.
    pub fn component(&self, pa: Polarization, pb: Polarization) -> Complex64 {
        self.amplitude * self.a.jones.component(pa) * self.b.jones.component(pb)
    }
}

/// Full cross product of the terms of two fields.
pub fn product_term_pairs(a: &PortField, b: &PortField) -> Vec<TermPair> {
    let mut pairs = Vec::with_capacity(a.terms.len() * b.terms.len());
    for ta in &a.terms {
        for tb in &b.terms {
            pairs.push(TermPair {
                a: *ta,
                b: *tb,
                net_offset: ta.freq_offset + tb.freq_offset,
                amplitude: ta.amplitude * tb.amplitude,
            });
        }
    }
    pairs
}
