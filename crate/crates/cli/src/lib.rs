//! Command implementations behind the `weber` binary.

pub mod polytext;

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use weber_core::eta::{class_polynomial, EvalError, Variant};
use weber_core::invariant::{select_invariant, InvariantChoice, InvariantError};
use weber_core::quadforms::{Discriminant, Omega};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Usage(String),
    #[error("{0}")]
    Inadmissible(InvariantError),
    #[error("{0}")]
    Rounding(EvalError),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Other(_) => 1,
            CliError::Inadmissible(_) => 2,
            CliError::Rounding(_) => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<[serde_json::Number; 2]>,
}

/// One `invariant` result; field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: i64,
    pub d: i64,
    pub e: i64,
    pub b: i64,
    pub condition: String,
    pub level: i64,
    pub reality: String,
    pub poly: PolyJson,
    pub residual: f64,
    pub ms: f64,
}

fn number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integers are valid JSON numbers")
}

impl OutputRecord {
    pub fn coeffs(&self) -> Vec<(BigInt, BigInt)> {
        self.poly
            .coeffs
            .iter()
            .map(|[x, y]| (x.as_str().parse().expect("integer"), y.as_str().parse().expect("integer")))
            .collect()
    }

    pub fn poly_text(&self) -> String {
        polytext::render(&self.coeffs())
    }
}

pub struct Computed {
    pub choice: InvariantChoice,
    pub record: OutputRecord,
    pub prec: usize,
}

pub fn compute_invariant(n: i64, d: i64, prec: Option<usize>, sqrtd: bool) -> Result<Computed, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("N={n} must be at least 2")));
    }
    Discriminant::new(d).map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let choice = select_invariant(n, d).map_err(|e| match e {
        InvariantError::Inadmissible { .. } => CliError::Inadmissible(e),
        _ => CliError::Other(e.to_string()),
    })?;
    let variant = if sqrtd { Variant::TimesSqrtD } else { Variant::Plain };
    let poly = class_polynomial(&choice, variant, prec).map_err(|e| match e {
        EvalError::Rounding { .. } => CliError::Rounding(e),
        _ => CliError::Other(e.to_string()),
    })?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let record = OutputRecord {
        n,
        d,
        e: choice.e,
        b: choice.b_value(),
        condition: choice.condition.combined().to_string(),
        level: choice.level,
        reality: choice.reality.to_string(),
        poly: PolyJson { coeffs: poly.coeffs.iter().map(|(x, y)| [number(x), number(y)]).collect() },
        residual: poly.max_residual,
        ms: (ms * 1e3).round() / 1e3,
    };
    Ok(Computed { choice, record, prec: poly.prec })
}

/// The ω convention for D.
pub fn omega_note(d: i64) -> String {
    let disc = Discriminant::new(d).expect("validated discriminant");
    let f = disc.fundamental();
    match disc.omega_kind() {
        Omega::HalfIntegral => format!("w = (1+sqrt({f}))/2"),
        Omega::Root => format!("w = sqrt({})", f / 4),
    }
}

pub fn render_text(c: &Computed, sqrtd: bool) -> String {
    let r = &c.record;
    let f = if sqrtd { format!("sqrt({}) * w_{}^{}", r.d, r.n, r.e) } else { format!("w_{}^{}", r.n, r.e) };
    format!(
        "# {}, H = H_{}[{f}]\nN={}, D={}, e={}, B={}, H = {}\ncondition {}, level {}, reality {}, residual {:.3e}, {} bits, {:.1} ms\n",
        omega_note(r.d),
        r.d,
        r.n,
        r.d,
        r.e,
        r.b,
        r.poly_text(),
        c.choice.condition,
        r.level,
        r.reality,
        r.residual,
        c.prec,
        r.ms,
    )
}

pub fn render_json(r: &OutputRecord) -> String {
    serde_json::to_string(r).expect("serialisable record")
}
