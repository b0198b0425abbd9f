//! Slow software-precision reference for the hooked normalisation sum.
//!
//! Used to validate the log-domain path; never on a hot path.

use std::time::{Duration, Instant};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use super::LogValue;
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_BUDGET: Duration = Duration::from_secs(300);

const MAX_ORACLE_TERMS: u64 = 100_000;
const RM: RoundingMode = RoundingMode::ToEven;

/// `ln Σ_{n=1}^{truncation} (offset + n)^-alpha` evaluated in arbitrary
/// precision with at least `decimal_digits` significant digits.
pub fn extended_sum_oracle(
    alpha: f64,
    offset: f64,
    truncation: u64,
    decimal_digits: u32,
) -> Result<LogValue> {
    extended_sum_oracle_with_budget(alpha, offset, truncation, decimal_digits, DEFAULT_ORACLE_BUDGET)
}

pub fn extended_sum_oracle_with_budget(
    alpha: f64,
    offset: f64,
    truncation: u64,
    decimal_digits: u32,
    budget: Duration,
) -> Result<LogValue> {
    if decimal_digits < 50 {
        return Err(Error::domain(format!(
            "oracle needs at least 50 decimal digits, got {decimal_digits}"
        )));
    }
    if truncation == 0 || truncation > MAX_ORACLE_TERMS {
        return Err(Error::domain(format!(
            "oracle truncation must be in 1..={MAX_ORACLE_TERMS}, got {truncation}"
        )));
    }
    if !(alpha > 0.0) || !alpha.is_finite() || !(offset >= 0.0) || !offset.is_finite() {
        return Err(Error::domain(format!(
            "oracle parameters out of range: alpha={alpha}, offset={offset}"
        )));
    }

    let started = Instant::now();
    // 64 guard bits over log2(10) * digits
    let p = (decimal_digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    let mut cc = Consts::new().map_err(|e| Error::domain(format!("oracle constants: {e:?}")))?;

    let neg_alpha = BigFloat::from_f64(-alpha, p);
    let b = BigFloat::from_f64(offset, p);
    let mut sum = BigFloat::from_u8(0, p);
    for n in 1..=truncation {
        if started.elapsed() > budget {
            return Err(Error::OracleTimeout {
                terms_done: n - 1,
                terms: truncation,
            });
        }
        let base = b.add(&BigFloat::from_u64(n, p), p, RM);
        let term = base.ln(p, RM, &mut cc).mul(&neg_alpha, p, RM).exp(p, RM, &mut cc);
        sum = sum.add(&term, p, RM);
    }
    let ln_sum = sum.ln(p, RM, &mut cc);
    if ln_sum.is_nan() || ln_sum.is_inf() {
        return Err(Error::domain(format!(
            "oracle produced a non-finite logarithm: {:?}",
            ln_sum.err()
        )));
    }
    let text = ln_sum
        .format(Radix::Dec, RM, &mut cc)
        .map_err(|e| Error::domain(format!("oracle formatting: {e:?}")))?;
    let value: f64 = text
        .parse()
        .map_err(|_| Error::domain(format!("oracle produced unparseable value {text}")))?;
    LogValue::new(value)
}
