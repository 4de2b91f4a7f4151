//! Parsing of command-line values.
//!
//! A value is one of: an exact rational (`8/3`, `-2`, `inf`), a decimal
//! (`1.4142135623730950488`), a square root `sqrt(n)`, or an EICF text such
//! as `[2,2,-2]` or `[0,(2,-2)*]`.

use eicf_core::{ApproxReal, EicfSeq, ExtRational};
use num_bigint::BigInt;

use crate::CliError;

/// Default number of decimal places for `sqrt(n)`.
pub const DEFAULT_SQRT_DIGITS: u32 = 60;

/// Decimal inputs with fewer digits than this are not expanded.
pub const MIN_EXPANSION_DIGITS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Exact(ExtRational),
    Approx { value: ApproxReal, digits: u32 },
    Seq(EicfSeq),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Exact(_) => "rational",
            Input::Approx { .. } => "decimal",
            Input::Seq(_) => "eicf",
        }
    }

    /// The value as an interval; exact rationals have radius zero.
    pub fn to_approx(&self) -> Result<ApproxReal, CliError> {
        match self {
            Input::Exact(q) => match q.to_rational() {
                Some(q) => Ok(ApproxReal::exact(q)),
                None => Err(CliError::Contract("∞ has no real value".into())),
            },
            Input::Approx { value, .. } => Ok(value.clone()),
            Input::Seq(s) => Input::Exact(s.value()).to_approx(),
        }
    }
}

pub fn parse_input(text: &str, digits: Option<u32>) -> Result<Input, CliError> {
    let t = text.trim();
    if t.starts_with('[') {
        return t.parse::<EicfSeq>().map(Input::Seq).map_err(|e| CliError::Parse(e.to_string()));
    }
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let n: BigInt = inner.trim().parse().map_err(|_| CliError::Parse(format!("bad radicand in {t}")))?;
        let digits = digits.unwrap_or(DEFAULT_SQRT_DIGITS);
        let value = ApproxReal::sqrt_of_integer(&n, digits).map_err(|e| CliError::Parse(e.to_string()))?;
        return Ok(Input::Approx { value, digits });
    }
    if t.contains('.') {
        let shown = t.split_once('.').map_or(0, |(_, f)| f.len() as u32);
        let digits = digits.unwrap_or(shown);
        let value = ApproxReal::parse_decimal(t, Some(digits)).map_err(|e| CliError::Parse(e.to_string()))?;
        return Ok(Input::Approx { value, digits });
    }
    t.parse::<ExtRational>().map(Input::Exact).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_rational(text: &str) -> Result<ExtRational, CliError> {
    match parse_input(text, None)? {
        Input::Exact(q) => Ok(q),
        other => Err(CliError::Parse(format!("expected a rational, got {} input {text:?}", other.kind()))),
    }
}

/// Reject decimals too short to expand.
pub fn require_digits(input: &Input) -> Result<(), CliError> {
    match input {
        Input::Approx { digits, .. } if *digits < MIN_EXPANSION_DIGITS => Err(CliError::Precision(format!(
            "decimal input carries {digits} digits; at least {MIN_EXPANSION_DIGITS} are needed for expansion \
             (pass more digits or use --digits)"
        ))),
        _ => Ok(()),
    }
}
