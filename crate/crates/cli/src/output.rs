//! Output records and their table, JSON and CSV forms.

use std::io::Write;

use ffsubsum_core::counts::CountReport;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::args::Format;

/// One count. Integers are decimal strings; `error` and `bound` are both
/// multiplied by `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub exclusions: String,
    pub k: u64,
    pub b: String,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "M")]
    pub m: String,
    /// `binom(n, k)/q`, unreduced.
    pub main_term: String,
    pub error: String,
    pub bound: Option<String>,
    pub bound_mode: Option<String>,
    pub method: String,
}

impl CountRecord {
    pub fn from_report(r: &CountReport) -> Self {
        let f = r.query.field();
        Self {
            p: f.p(),
            e: f.e(),
            q: f.q(),
            exclusions: f.format_element_list(r.query.exclusions().excluded()),
            k: r.query.k(),
            b: f.format_element(r.query.b()),
            n: r.n_count.to_string(),
            m: r.m_count.to_string(),
            main_term: format!("{}/{}", r.main_term_num, r.main_term_den),
            error: r.error.to_string(),
            bound: r.bound.as_ref().map(|b| b.scaled.to_string()),
            bound_mode: r.bound_mode().map(|m| m.as_str().to_string()),
            method: r.method.as_str().to_string(),
        }
    }

    /// The main term as a float, for display only.
    pub fn main_term_float(r: &CountReport) -> f64 {
        let num = r.main_term_num.to_f64().unwrap_or(f64::NAN);
        let den = r.main_term_den.to_f64().unwrap_or(f64::NAN);
        num / den
    }
}

/// One Reed-Solomon result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsRecord {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub degree: String,
    pub distance: Option<usize>,
    pub verdict: Option<String>,
    /// `lower..upper` for the distance.
    pub bounds: Option<String>,
    pub word: Option<String>,
    pub target: Option<String>,
    pub solutions: Option<String>,
}

pub fn emit_json<T: Serialize>(out: &mut impl Write, records: &[T]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn emit_csv<T: Serialize>(out: &mut impl Write, records: &[T]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(std::io::Error::other)?;
    }
    w.flush()
}

pub fn emit<T: Serialize>(
    out: &mut impl Write,
    format: Format,
    records: &[T],
    table: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> std::io::Result<()> {
    match format {
        Format::Json => emit_json(out, records),
        Format::Csv => emit_csv(out, records),
        Format::Table => table(out),
    }
}
