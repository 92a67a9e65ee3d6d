use std::fmt;

use num_complex::Complex64;

use super::graph::BenchGraph;
use super::propagate::{propagate, Propagation};
use crate::error::Result;
use crate::field::{merge_terms, FieldTerm, JonesVec, OriginTag, SlotParity};

pub const CSV_HEADER: [&str; 8] = ["port", "origin", "pol", "freq_offset", "slot_parity", "slot_shift", "re", "im"];

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub origin: Option<OriginTag>,
    pub jones: JonesVec,
    pub freq_offset: i32,
    pub slot_parity: SlotParity,
    pub slot_shift: i32,
    pub coefficient: Complex64,
}

impl ReportRow {
    /// `H`, `V`, `lin:<deg>` for real linear states, otherwise the raw
    /// components.
    pub fn pol_label(&self) -> String {
        if let Some(p) = self.jones.as_basis() {
            return format!("{p:?}");
        }
        let j = self.jones;
        if j.h.im == 0.0 && j.v.im == 0.0 {
            return format!("lin:{}", j.v.re.atan2(j.h.re).to_degrees());
        }
        format!("jones:{}{:+}i/{}{:+}i", j.h.re, j.h.im, j.v.re, j.v.im)
    }

    pub fn origin_label(&self) -> &'static str {
        self.origin.map_or("-", OriginTag::label)
    }
}

/// Coefficient table of one port, read at the detection time and normalized
/// so that the largest coefficient is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldReport {
    pub port: String,
    pub rows: Vec<ReportRow>,
}

impl FieldReport {
    pub fn find(&self, origin: OriginTag) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.origin == Some(origin))
    }

    /// Coefficient of the `num` origin over that of `den`; a missing term
    /// counts as zero.
    pub fn ratio(&self, num: OriginTag, den: OriginTag) -> Option<Complex64> {
        let n = self.find(num).map_or(Complex64::new(0.0, 0.0), |r| r.coefficient);
        let d = self.find(den)?.coefficient;
        Some(n / d)
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    self.port.clone(),
                    r.origin_label().to_string(),
                    r.pol_label(),
                    r.freq_offset.to_string(),
                    r.slot_parity.label().to_string(),
                    r.slot_shift.to_string(),
                    r.coefficient.re.to_string(),
                    r.coefficient.im.to_string(),
                ]
            })
            .collect()
    }
}

impl fmt::Display for FieldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "port {}", self.port)?;
        writeln!(f, "  {:<6} {:<14} {:>6} {:>6} {:>5}  coefficient", "origin", "pol", "offset", "parity", "shift")?;
        for r in &self.rows {
            writeln!(
                f,
                "  {:<6} {:<14} {:>+6} {:>6} {:>5}  {:+.6} {:+.6}i",
                r.origin_label(),
                r.pol_label(),
                r.freq_offset,
                r.slot_parity.label(),
                r.slot_shift,
                r.coefficient.re,
                r.coefficient.im
            )?;
        }
        Ok(())
    }
}

pub fn field_report(graph: &BenchGraph, port: &str) -> Result<FieldReport> {
    field_report_from(&propagate(graph)?, port)
}

pub fn field_report_from(prop: &Propagation, port: &str) -> Result<FieldReport> {
    let field = merge_terms(&prop.port(port)?.at_time(prop.params.tau, prop.params.delta_f));
    let mut lead = Complex64::new(1.0, 0.0);
    let mut best = 0.0;
    for t in &field.terms {
        // strict comparison keeps the first of equal magnitudes, in canonical order
        if t.amplitude.norm() > best * (1.0 + 1e-12) {
            best = t.amplitude.norm();
            lead = t.amplitude;
        }
    }
    let unphase = if best > 0.0 { lead.conj() / best } else { Complex64::new(1.0, 0.0) };
    let rows = field
        .terms
        .iter()
        .map(|t: &FieldTerm| ReportRow {
            origin: t.origin,
            jones: t.jones,
            freq_offset: t.freq_offset,
            slot_parity: t.slot_parity,
            slot_shift: t.slot_shift,
            coefficient: t.amplitude * unphase,
        })
        .collect();
    Ok(FieldReport { port: port.to_string(), rows })
}
