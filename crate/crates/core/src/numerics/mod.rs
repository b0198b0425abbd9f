//! Log-domain scalar primitives.
//!
//! Every probability the models produce is carried as a natural logarithm so
//! that hooked power law terms such as `(B + n)^-alpha` with `alpha = 10_000`
//! never touch the subnormal range. Sums are taken with [`log_sum_exp`], which
//! factors out the largest term before exponentiating.

mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use oracle::{extended_sum_oracle, extended_sum_oracle_with_budget, DEFAULT_ORACLE_BUDGET};

/// Natural logarithm of a non-negative quantity.
///
/// `f64::NEG_INFINITY` is the representable "log of zero". NaN and `+inf` are
/// rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LogValue(f64);

impl LogValue {
    /// ln 0.
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    /// ln 1.
    pub const ONE: LogValue = LogValue(0.0);

    pub fn new(ln: f64) -> Result<Self> {
        if ln.is_nan() || ln == f64::INFINITY {
            return Err(Error::domain(format!("{ln} is not a valid log value")));
        }
        Ok(LogValue(ln))
    }

    pub fn from_prob(p: f64) -> Result<Self> {
        if !(p >= 0.0) || !p.is_finite() {
            return Err(Error::domain(format!("{p} is not a non-negative finite quantity")));
        }
        Ok(LogValue(p.ln()))
    }

    /// Wraps a value that the caller has already checked.
    pub(crate) fn new_unchecked(ln: f64) -> Self {
        debug_assert!(!ln.is_nan() && ln != f64::INFINITY, "invalid log value {ln}");
        LogValue(ln)
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn exp(self) -> f64 {
        self.0.exp()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Product of the underlying quantities.
    pub fn mul(self, other: LogValue) -> LogValue {
        LogValue(self.0 + other.0)
    }

    /// Quotient of the underlying quantities; dividing by zero is an error.
    pub fn div(self, other: LogValue) -> Result<LogValue> {
        if other.is_zero() {
            return Err(Error::domain("division by a zero log value"));
        }
        Ok(LogValue(self.0 - other.0))
    }
}

impl TryFrom<f64> for LogValue {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        LogValue::new(v)
    }
}

impl From<LogValue> for f64 {
    fn from(v: LogValue) -> f64 {
        v.0
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `ln Σ exp(t_i)` over raw log terms. `None` on an empty input.
pub(crate) fn log_sum_exp_raw<I>(terms: I) -> Option<f64>
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: Clone,
{
    let iter = terms.into_iter();
    let mut max = f64::NEG_INFINITY;
    let mut argmax = None;
    for (i, t) in iter.clone().enumerate() {
        if argmax.is_none() || t > max {
            max = t;
            argmax = Some(i);
        }
    }
    let argmax = argmax?;
    if max == f64::NEG_INFINITY {
        return Some(max);
    }
    // the max term contributes exactly 1; keep it out of the sum so ln_1p sees the remainder
    let mut rest = CompensatedSum::default();
    for (i, t) in iter.enumerate() {
        if i != argmax {
            rest.add((t - max).exp());
        }
    }
    Some(max + rest.value().ln_1p())
}

/// `ln Σ exp(term)` computed with the maximum factored out.
pub fn log_sum_exp(terms: &[LogValue]) -> Result<LogValue> {
    log_sum_exp_raw(terms.iter().map(|t| t.0))
        .map(LogValue::new_unchecked)
        .ok_or_else(|| Error::domain("log_sum_exp of an empty sequence"))
}

/// Standard normal CDF, Φ(x).
pub fn std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("normal CDF argument {x} is not finite")));
    }
    Ok(phi(x))
}

/// ln Φ(x), finite for every finite `x` (including far below the underflow
/// point of Φ itself).
pub fn log_std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("normal CDF argument {x} is not finite")));
    }
    Ok(log_phi(x))
}

#[inline]
pub(crate) fn phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub(crate) fn log_phi(x: f64) -> f64 {
    if x > 0.0 {
        (-phi(-x)).ln_1p()
    } else if x > -30.0 {
        phi(x).ln()
    } else {
        // Mills-ratio asymptotic series; the first omitted term is below 1e-17 here.
        let r = 1.0 / (x * x);
        let series = 1.0
            - r * (1.0
                - 3.0 * r
                    * (1.0
                        - 5.0 * r
                            * (1.0 - 7.0 * r * (1.0 - 9.0 * r * (1.0 - 11.0 * r * (1.0 - 13.0 * r))))));
        -0.5 * x * x - (-x).ln() - LN_SQRT_2PI + series.ln()
    }
}

/// ln(Φ(b) − Φ(a)) for `a ≤ b`.
///
/// When both points sit in the upper half the difference is taken between
/// upper-tail probabilities instead, so nothing is ever subtracted from a
/// number close to one. Returns [`LogValue::ZERO`] when the interval mass is
/// below the representable range.
pub(crate) fn log_normal_interval(a: f64, b: f64) -> LogValue {
    debug_assert!(a <= b, "interval [{a}, {b}] is reversed");
    if a >= b {
        return LogValue::ZERO;
    }
    let (lo, hi) = if a >= 0.0 { (-b, -a) } else { (a, b) };
    let l_hi = log_phi(hi);
    if l_hi == f64::NEG_INFINITY {
        return LogValue::ZERO;
    }
    let l_lo = log_phi(lo);
    let gap = l_lo - l_hi;
    if gap == f64::NEG_INFINITY {
        return LogValue::new_unchecked(l_hi);
    }
    let frac = -gap.exp_m1();
    if frac <= 0.0 {
        return LogValue::ZERO;
    }
    LogValue::new_unchecked(l_hi + frac.ln())
}

/// How naive direct summation of `(B + n)^-alpha` in binary64 behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnderflowRisk {
    Safe,
    /// Smallest term is subnormal: stored with a truncated mantissa.
    ReducedAccuracy,
    /// Smallest term rounds to zero.
    TotalUnderflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnderflowReport {
    pub alpha: f64,
    pub offset: f64,
    pub truncation: u64,
    pub smallest_term_log10: f64,
    pub risk: UnderflowRisk,
}

/// Smallest normal binary64 magnitude, as a power of ten.
pub const NORMAL_FLOOR_LOG10: f64 = -308.0;
/// Below this power of ten every binary64 value is zero.
pub const SUBNORMAL_FLOOR_LOG10: f64 = -324.0;

/// Classifies the smallest term `(offset + truncation)^-alpha` of the
/// truncated normalisation sum against the binary64 range.
pub fn predict_underflow(alpha: f64, offset: f64, truncation: u64) -> Result<UnderflowReport> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
    }
    if !(offset >= 0.0) || !offset.is_finite() {
        return Err(Error::domain(format!("offset must be non-negative, got {offset}")));
    }
    if truncation == 0 {
        return Err(Error::domain("truncation must be at least 1"));
    }
    let smallest_term_log10 = -alpha * (offset + truncation as f64).log10();
    let risk = if smallest_term_log10 < SUBNORMAL_FLOOR_LOG10 {
        UnderflowRisk::TotalUnderflow
    } else if smallest_term_log10 < NORMAL_FLOOR_LOG10 {
        UnderflowRisk::ReducedAccuracy
    } else {
        UnderflowRisk::Safe
    };
    Ok(UnderflowReport {
        alpha,
        offset,
        truncation,
        smallest_term_log10,
        risk,
    })
}
