//! Table serialization: the CSV and JSON shapes of every report, plus the
//! run configuration the command-line front end resolves. Output is
//! deterministic byte for byte: fixed field order (struct declaration
//! order), 40-significant-digit scientific notation for reals, exact
//! rational strings where the value is exact.

use serde::Serialize;

use crate::hermite::{hermite_norm_sq_rational, hermite_rationals};
use crate::mehler_heine::MHReport;
use crate::real::{fmt40, Real};
use crate::suites::{SuiteLine, SuiteReport};
use crate::zeros::ZeroAsymptoticsReport;
use crate::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const PRECISION_ENV: &str = "HERMITE_SOBOLEV_PRECISION_BITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown output format {other}; expected csv or json"
            ))),
        }
    }
}

/// Common knobs for the table-producing commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub n_list: Vec<usize>,
    pub grid_points: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: DEFAULT_PRECISION_BITS,
            n_list: vec![25, 50, 100, 200],
            grid_points: 121,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(Error::InvalidArgument(
                "precision below 64 bits defeats the certifications".into(),
            ));
        }
        if !self.n_list.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "the index list must be strictly ascending".into(),
            ));
        }
        Ok(())
    }
}

/// Precision resolution order: explicit flag, then the environment
/// override, then the default.
pub fn resolve_precision(flag: Option<u32>) -> Result<u32> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PRECISION_ENV) {
        Ok(s) => s.trim().parse::<u32>().map_err(|_| {
            Error::InvalidArgument(format!("{PRECISION_ENV} must be an integer, got {s:?}"))
        }),
        Err(_) => Ok(DEFAULT_PRECISION_BITS),
    }
}

/// One classical-polynomial record: exact coefficients (ascending, monic),
/// exact value at the origin, and the squared norm both as its exact
/// rational multiple of sqrt(pi) and as a 40-digit value.
#[derive(Clone, Debug, Serialize)]
pub struct HermiteRecord {
    pub n: usize,
    pub value_at_0: String,
    pub norm_sq_over_sqrt_pi: String,
    pub norm_sq: String,
    pub coefficients: String,
}

pub fn hermite_record(n: usize, prec: u32) -> HermiteRecord {
    let coeffs = hermite_rationals(n);
    let norm_rat = hermite_norm_sq_rational(n);
    let norm = &Real::from_rational(&norm_rat, prec) * &Real::sqrt_pi(prec);
    HermiteRecord {
        n,
        value_at_0: coeffs[0].to_string(),
        norm_sq_over_sqrt_pi: norm_rat.to_string(),
        norm_sq: fmt40(&norm),
        coefficients: coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";"),
    }
}

/// Flat per-index view of a scaling-limit trend report.
#[derive(Clone, Debug, Serialize)]
pub struct MHRow {
    pub family: String,
    pub limit: String,
    pub n: usize,
    pub sup_error: f64,
    pub decreasing: bool,
    pub final_below: bool,
    pub sign_x: f64,
    pub sign_ok: bool,
}

pub fn mh_rows(rep: &MHReport) -> Vec<MHRow> {
    rep.n_list
        .iter()
        .zip(rep.sup_errors.iter())
        .map(|(&n, &sup)| MHRow {
            family: rep.family.clone(),
            limit: rep.limit.label(),
            n,
            sup_error: sup,
            decreasing: rep.decreasing,
            final_below: rep.final_below,
            sign_x: rep.sign_x,
            sign_ok: rep.sign_ok,
        })
        .collect()
}

/// Flat per-zero view of a zero-asymptotics report: the positive zeros
/// first, then any imaginary pairs with k continuing past them.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroCsvRow {
    pub family: String,
    pub parity: String,
    pub n: usize,
    pub degree: usize,
    pub kind: String,
    pub k: usize,
    pub value: f64,
    pub two_sqrt_scaled: f64,
    pub sqrt_scaled: f64,
    pub target: Option<f64>,
    pub accelerated: Option<bool>,
}

pub fn zero_rows(rep: &ZeroAsymptoticsReport) -> Vec<ZeroCsvRow> {
    let parity = rep.parity.label().to_string();
    let mut out: Vec<ZeroCsvRow> = rep
        .rows
        .iter()
        .map(|r| ZeroCsvRow {
            family: rep.family.clone(),
            parity: parity.clone(),
            n: r.n,
            degree: r.degree,
            kind: "positive".into(),
            k: r.k,
            value: r.zero,
            two_sqrt_scaled: r.two_sqrt_scaled,
            sqrt_scaled: r.sqrt_scaled,
            target: r.target,
            accelerated: Some(r.accelerated),
        })
        .collect();
    for r in &rep.imaginary_rows {
        out.push(ZeroCsvRow {
            family: rep.family.clone(),
            parity: parity.clone(),
            n: r.n,
            degree: r.degree,
            kind: "imaginary-pair".into(),
            k: r.k,
            value: r.modulus,
            two_sqrt_scaled: r.two_sqrt_scaled,
            sqrt_scaled: r.sqrt_scaled,
            target: None,
            accelerated: None,
        });
    }
    out
}

/// Flat view of a verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteCsvRow {
    pub suite: String,
    pub label: String,
    pub observed: f64,
    pub bound: f64,
    pub pass: bool,
}

pub fn suite_rows(rep: &SuiteReport) -> Vec<SuiteCsvRow> {
    rep.lines
        .iter()
        .map(|l: &SuiteLine| SuiteCsvRow {
            suite: rep.suite.clone(),
            label: l.label.clone(),
            observed: l.observed,
            bound: l.bound,
            pass: l.pass,
        })
        .collect()
}

/// CSV with a header row; fields in struct declaration order.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::InternalConsistency(format!("csv serialization: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InternalConsistency(format!("csv flush: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InternalConsistency(format!("csv encoding: {e}")))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::InternalConsistency(format!("json serialization: {e}")))
}
