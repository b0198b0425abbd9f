//! The two competing count models on the shifted support `n = 1, 2, 3, ...`.
//!
//! * hooked power law: `h(n) ∝ (B + n)^-alpha`, normalised by a truncated sum
//!   over `n = 1..=N`;
//! * discretised lognormal: the continuous lognormal mass on
//!   `[n - 0.5, n + 0.5]`, renormalised over `[0.5, ∞)`.
//!
//! Hooked terms are handled relative to the first term, `(B + 1)^-alpha`, so
//! the working quantities are `-alpha * ln(1 + (n - 1) / (B + 1))`. These stay
//! in a comfortable range even at `alpha = 10_000`, `B = 10^6`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{log_normal_interval, log_phi, CompensatedSum, LogValue};

pub const DEFAULT_TRUNCATION: u64 = 10_000;
pub const DEFAULT_ALPHA_CAP: f64 = 10_000.0;
pub const DEFAULT_SIGMA_MIN: f64 = 1e-3;

/// Tail probability beyond which tables and quantile searches stop.
pub const SUPPORT_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HookedPowerLawParams {
    pub alpha: f64,
    /// The `B` offset.
    pub offset: f64,
    /// Length `N` of the normalisation sum.
    pub truncation: u64,
    /// Adds the integral bound `(B + N + 0.5)^(1 - alpha) / (alpha - 1)` to the
    /// normalisation and extends the support past `N`.
    #[serde(default)]
    pub tail_correction: bool,
}

impl HookedPowerLawParams {
    pub fn new(alpha: f64, offset: f64) -> Result<Self> {
        let p = HookedPowerLawParams {
            alpha,
            offset,
            truncation: DEFAULT_TRUNCATION,
            tail_correction: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_truncation(mut self, truncation: u64) -> Result<Self> {
        self.truncation = truncation;
        self.validate()?;
        Ok(self)
    }

    pub fn with_tail_correction(mut self, on: bool) -> Self {
        self.tail_correction = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::domain(format!("hooked alpha must be positive, got {}", self.alpha)));
        }
        if !(self.offset >= 0.0) || !self.offset.is_finite() {
            return Err(Error::domain(format!(
                "hooked offset B must be non-negative, got {}",
                self.offset
            )));
        }
        if self.truncation == 0 {
            return Err(Error::domain("hooked truncation must be at least 1"));
        }
        Ok(())
    }

    /// Whether the distribution has unbounded support.
    pub fn extends_support(&self) -> bool {
        self.tail_correction && self.alpha > 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscretisedLognormalParams {
    pub mu: f64,
    pub sigma: f64,
}

impl DiscretisedLognormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        let p = DiscretisedLognormalParams { mu, sigma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::domain(format!("lognormal mu must be finite, got {}", self.mu)));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::domain(format!(
                "lognormal sigma must be positive, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Lognormal,
    Hooked,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Lognormal => "lognormal",
            ModelKind::Hooked => "hooked",
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of either family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModelParams {
    Lognormal(DiscretisedLognormalParams),
    Hooked(HookedPowerLawParams),
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Lognormal(_) => ModelKind::Lognormal,
            ModelParams::Hooked(_) => ModelKind::Hooked,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelParams::Lognormal(p) => p.validate(),
            ModelParams::Hooked(p) => p.validate(),
        }
    }
}

impl From<DiscretisedLognormalParams> for ModelParams {
    fn from(p: DiscretisedLognormalParams) -> Self {
        ModelParams::Lognormal(p)
    }
}

impl From<HookedPowerLawParams> for ModelParams {
    fn from(p: HookedPowerLawParams) -> Self {
        ModelParams::Hooked(p)
    }
}

// ---------------------------------------------------------------------------
// Hooked power law
// ---------------------------------------------------------------------------

/// Hooked power law with its normalisation constant evaluated once.
#[derive(Debug, Clone)]
pub struct HookedModel {
    params: HookedPowerLawParams,
    /// ln((B + 1)^-alpha)
    head: f64,
    /// ln of the normalisation sum divided by the first term.
    rel_norm: f64,
}

impl HookedModel {
    pub fn new(params: HookedPowerLawParams) -> Result<Self> {
        params.validate()?;
        Ok(Self::build(params))
    }

    fn build(params: HookedPowerLawParams) -> Self {
        let HookedPowerLawParams {
            alpha,
            offset,
            truncation,
            ..
        } = params;
        let b1 = offset + 1.0;
        // terms are strictly decreasing; stop once the rest cannot reach 1e-18 of the sum
        let mut rest = CompensatedSum::default();
        for n in 2..=truncation {
            let term = (-alpha * ((n - 1) as f64 / b1).ln_1p()).exp();
            rest.add(term);
            let remaining = (truncation - n) as f64;
            if term * remaining < 1e-18 * (1.0 + rest.value()) {
                break;
            }
        }
        let mut rel_norm = rest.value().ln_1p();
        if params.extends_support() {
            let rel_tail = Self::rel_tail_at(alpha, offset, truncation);
            rel_norm = log_add(rel_norm, rel_tail);
        }
        HookedModel {
            params,
            head: -alpha * b1.ln(),
            rel_norm,
        }
    }

    /// ln of `∫_{B+n+0.5}^∞ x^-alpha dx` relative to the first term.
    fn rel_tail_at(alpha: f64, offset: f64, n: u64) -> f64 {
        let b1 = offset + 1.0;
        -alpha * ((n as f64 - 0.5) / b1).ln_1p() + (offset + n as f64 + 0.5).ln() - (alpha - 1.0).ln()
    }

    pub fn params(&self) -> &HookedPowerLawParams {
        &self.params
    }

    pub fn log_norm(&self) -> LogValue {
        LogValue::new_unchecked(self.head + self.rel_norm)
    }

    /// Largest outcome with positive mass, if the support is bounded.
    pub fn support_max(&self) -> Option<u64> {
        (!self.params.extends_support()).then_some(self.params.truncation)
    }

    fn check_support(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::domain("hooked support starts at 1"));
        }
        if let Some(max) = self.support_max() {
            if n > max {
                return Err(Error::SupportRange { n, truncation: max });
            }
        }
        Ok(())
    }

    #[inline]
    fn rel_log_term(&self, n: u64) -> f64 {
        -self.params.alpha * ((n - 1) as f64 / (self.params.offset + 1.0)).ln_1p()
    }

    pub fn log_pmf(&self, n: u64) -> Result<LogValue> {
        self.check_support(n)?;
        Ok(LogValue::new_unchecked(self.rel_log_term(n) - self.rel_norm))
    }

    pub fn cdf(&self, n: u64) -> Result<f64> {
        self.check_support(n)?;
        if self.support_max() == Some(n) {
            return Ok(1.0);
        }
        let upto = n.min(self.params.truncation);
        let mut acc = CompensatedSum::default();
        for k in 2..=upto {
            acc.add(self.rel_log_term(k).exp());
        }
        let mut log_prefix = acc.value().ln_1p();
        if n > self.params.truncation {
            // past N the tail correction stands in for the missing terms
            let beyond = log_sub(
                Self::rel_tail_at(self.params.alpha, self.params.offset, self.params.truncation),
                Self::rel_tail_at(self.params.alpha, self.params.offset, n),
            );
            log_prefix = log_add(log_prefix, beyond);
        }
        Ok((log_prefix - self.rel_norm).exp().min(1.0))
    }

    /// ln P(X > n).
    pub fn log_sf(&self, n: u64) -> Result<f64> {
        self.check_support(n)?;
        if n >= self.params.truncation {
            if !self.params.extends_support() {
                return Ok(f64::NEG_INFINITY);
            }
            let t = Self::rel_tail_at(self.params.alpha, self.params.offset, n);
            return Ok(t - self.rel_norm);
        }
        Ok((-self.cdf(n)?).ln_1p())
    }

    /// Probability-space prefix sums `F(1), ..., F(upto)`.
    pub fn cdf_table(&self, upto: u64) -> Result<Vec<f64>> {
        self.check_support(upto)?;
        let scale = (-self.rel_norm).exp();
        let mut acc = CompensatedSum::default();
        let mut out = Vec::with_capacity(upto as usize);
        for k in 1..=upto.min(self.params.truncation) {
            acc.add(self.rel_log_term(k).exp());
            out.push((acc.value() * scale).min(1.0));
        }
        if upto > self.params.truncation {
            let (alpha, offset, n) = (self.params.alpha, self.params.offset, self.params.truncation);
            let log_prefix = acc.value().ln();
            let tail_n = Self::rel_tail_at(alpha, offset, n);
            for k in n + 1..=upto {
                let beyond = log_sub(tail_n, Self::rel_tail_at(alpha, offset, k));
                out.push((log_add(log_prefix, beyond) - self.rel_norm).exp().min(1.0));
            }
        }
        if self.support_max() == Some(upto) {
            if let Some(last) = out.last_mut() {
                *last = 1.0;
            }
        }
        Ok(out)
    }
}

/// ln Σ_{n=1}^{N} (B + n)^-alpha, plus the integral tail bound when enabled.
pub fn hooked_log_norm(params: &HookedPowerLawParams) -> Result<LogValue> {
    Ok(HookedModel::new(*params)?.log_norm())
}

pub fn hooked_log_pmf(n: u64, params: &HookedPowerLawParams) -> Result<LogValue> {
    HookedModel::new(*params)?.log_pmf(n)
}

pub fn hooked_cdf(n: u64, params: &HookedPowerLawParams) -> Result<f64> {
    HookedModel::new(*params)?.cdf(n)
}

// ---------------------------------------------------------------------------
// Discretised lognormal
// ---------------------------------------------------------------------------

const LN_HALF: f64 = -std::f64::consts::LN_2;

/// Discretised lognormal with the `[0.5, ∞)` normaliser evaluated once.
#[derive(Debug, Clone)]
pub struct DlnModel {
    params: DiscretisedLognormalParams,
    /// ln(1 − Φ(z(0.5)))
    log_denom: f64,
}

impl DlnModel {
    pub fn new(params: DiscretisedLognormalParams) -> Result<Self> {
        params.validate()?;
        let log_denom = log_phi((params.mu - LN_HALF) / params.sigma);
        Ok(DlnModel { params, log_denom })
    }

    pub fn params(&self) -> &DiscretisedLognormalParams {
        &self.params
    }

    #[inline]
    fn z(&self, x: f64) -> f64 {
        (x.ln() - self.params.mu) / self.params.sigma
    }

    pub fn log_pmf(&self, n: u64) -> Result<LogValue> {
        if n == 0 {
            return Err(Error::domain("lognormal support starts at 1"));
        }
        if self.log_denom == f64::NEG_INFINITY {
            return Err(Error::domain("lognormal places no mass above 0.5"));
        }
        let x = n as f64;
        let mass = log_normal_interval(self.z(x - 0.5), self.z(x + 0.5));
        if mass.is_zero() {
            return Ok(LogValue::ZERO);
        }
        Ok(LogValue::new_unchecked(mass.ln() - self.log_denom))
    }

    /// ln P(X > n), from the closed form.
    pub fn log_sf(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::domain("lognormal support starts at 1"));
        }
        Ok((log_phi(-self.z(n as f64 + 0.5)) - self.log_denom).min(0.0))
    }

    pub fn cdf(&self, n: u64) -> Result<f64> {
        let lsf = self.log_sf(n)?;
        Ok(-lsf.exp_m1())
    }

    pub fn cdf_table(&self, upto: u64) -> Result<Vec<f64>> {
        (1..=upto).map(|n| self.cdf(n)).collect()
    }
}

pub fn dln_log_pmf(n: u64, params: &DiscretisedLognormalParams) -> Result<LogValue> {
    DlnModel::new(*params)?.log_pmf(n)
}

pub fn dln_cdf(n: u64, params: &DiscretisedLognormalParams) -> Result<f64> {
    DlnModel::new(*params)?.cdf(n)
}

// ---------------------------------------------------------------------------
// Either family
// ---------------------------------------------------------------------------

/// A ready-to-evaluate model of either family.
#[derive(Debug, Clone)]
pub enum Model {
    Lognormal(DlnModel),
    Hooked(HookedModel),
}

impl Model {
    pub fn new(params: ModelParams) -> Result<Self> {
        Ok(match params {
            ModelParams::Lognormal(p) => Model::Lognormal(DlnModel::new(p)?),
            ModelParams::Hooked(p) => Model::Hooked(HookedModel::new(p)?),
        })
    }

    pub fn params(&self) -> ModelParams {
        match self {
            Model::Lognormal(m) => ModelParams::Lognormal(*m.params()),
            Model::Hooked(m) => ModelParams::Hooked(*m.params()),
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.params().kind()
    }

    pub fn log_pmf(&self, n: u64) -> Result<LogValue> {
        match self {
            Model::Lognormal(m) => m.log_pmf(n),
            Model::Hooked(m) => m.log_pmf(n),
        }
    }

    pub fn cdf(&self, n: u64) -> Result<f64> {
        match self {
            Model::Lognormal(m) => m.cdf(n),
            Model::Hooked(m) => m.cdf(n),
        }
    }

    pub fn log_sf(&self, n: u64) -> Result<f64> {
        match self {
            Model::Lognormal(m) => m.log_sf(n),
            Model::Hooked(m) => m.log_sf(n),
        }
    }

    /// `F(1), ..., F(upto)`; for the hooked model `upto` is clamped to a
    /// bounded support.
    pub fn cdf_table(&self, upto: u64) -> Result<Vec<f64>> {
        match self {
            Model::Lognormal(m) => m.cdf_table(upto),
            Model::Hooked(m) => {
                let upto = m.support_max().map_or(upto, |max| upto.min(max));
                m.cdf_table(upto)
            }
        }
    }

    /// Smallest `n` with `P(X > n) ≤ tail`, searched no further than `limit`.
    pub fn upper_support_point(&self, tail: f64, limit: u64) -> Result<u64> {
        let limit = match self {
            Model::Hooked(m) => m.support_max().map_or(limit, |max| limit.min(max)),
            Model::Lognormal(_) => limit,
        };
        let target = tail.ln();
        let mut hi = 1u64;
        while hi < limit && self.log_sf(hi)? > target {
            hi = hi.saturating_mul(2).min(limit);
        }
        if self.log_sf(hi)? > target {
            return Ok(hi);
        }
        let mut lo = hi / 2;
        if lo == 0 {
            return Ok(hi);
        }
        // invariant: sf(lo) > target >= sf(hi), or lo is the first point
        if self.log_sf(lo)? <= target {
            return Ok(lo);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.log_sf(mid)? > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// ln(e^a − e^b) for `a ≥ b`.
fn log_sub(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + (-(b - a).exp()).ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // mpmath, 40 digits
    const ZETA2_M1: f64 = 0.644_934_066_848_226_4;

    fn hooked(alpha: f64, b: f64) -> HookedPowerLawParams {
        HookedPowerLawParams::new(alpha, b).unwrap()
    }

    #[test]
    fn hooked_norm_closed_form_with_tail() {
        let p = hooked(2.0, 1.0).with_tail_correction(true);
        let ln = hooked_log_norm(&p).unwrap().ln();
        assert!((ln - ZETA2_M1.ln()).abs() < 1e-12, "{ln}");
    }

    #[test]
    fn hooked_norm_first_term_dominates() {
        let p = hooked(10_000.0, 0.0);
        let ln = hooked_log_norm(&p).unwrap().ln();
        assert_eq!(ln, 0.0);
        assert_eq!(hooked_log_pmf(1, &p).unwrap().ln(), 0.0);
    }

    #[test]
    fn hooked_pmf_and_cdf_examples() {
        let p = hooked(2.0, 1.0).with_tail_correction(true);
        let lp = hooked_log_pmf(1, &p).unwrap().ln();
        // mpmath: ln(0.25 / (ζ(2) − 1))
        assert!((lp - -0.947_687_171_767_773_2).abs() < 1e-12);
        let c1 = hooked_cdf(1, &p).unwrap();
        assert!((c1 - lp.exp()).abs() < 1e-15);
        // mpmath: (1/4 + 1/9) / (ζ(2) − 1)
        let c2 = hooked_cdf(2, &p).unwrap();
        assert!((c2 - 0.559_919_423_819_322_1).abs() < 1e-12, "{c2}");
    }

    #[test]
    fn hooked_cdf_reaches_one_at_truncation() {
        for &(a, b) in &[(1.5, 0.0), (7.7, 175.4), (100.0, 200.0), (10_000.0, 1e5)] {
            let p = hooked(a, b);
            assert_eq!(hooked_cdf(10_000, &p).unwrap(), 1.0);
            let table = HookedModel::new(p).unwrap().cdf_table(10_000).unwrap();
            assert!((table[9_999] - 1.0).abs() < 1e-12);
            let direct = hooked_cdf(9_999, &p).unwrap();
            assert!((table[9_998] - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn hooked_pmf_sums_to_one_over_truncation() {
        let m = HookedModel::new(hooked(3.3, 12.0)).unwrap();
        let mut s = CompensatedSum::default();
        for n in 1..=10_000 {
            s.add(m.log_pmf(n).unwrap().exp());
        }
        assert!((s.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hooked_support_range() {
        let p = hooked(2.0, 1.0);
        assert!(matches!(
            hooked_log_pmf(10_001, &p),
            Err(Error::SupportRange { n: 10_001, truncation: 10_000 })
        ));
        assert!(hooked_log_pmf(0, &p).is_err());
        // with the tail correction the support is unbounded
        let pt = p.with_tail_correction(true);
        assert!(hooked_log_pmf(50_000, &pt).is_ok());
        let c = hooked_cdf(50_000, &pt).unwrap();
        assert!(c < 1.0 && c > hooked_cdf(10_000, &pt).unwrap());
    }

    #[test]
    fn hooked_large_parameters_stay_finite() {
        let p = hooked(100.0, 200.0);
        let ln = hooked_log_norm(&p).unwrap().ln();
        // mpmath: ln Σ_{n=1}^{10000} (200+n)^-100
        assert!((ln - -529.385_967_468_520_5).abs() < 1e-10, "{ln}");
        let p = hooked(10_000.0, 1e9);
        assert!(hooked_log_norm(&p).unwrap().ln().is_finite());
    }

    #[test]
    fn hooked_offset_shift_preserves_ratios() {
        // P_B(n) / P_B(m) == P_{B+1}(n-1) / P_{B+1}(m-1)
        let a = HookedModel::new(hooked(4.2, 3.0)).unwrap();
        let b = HookedModel::new(hooked(4.2, 4.0)).unwrap();
        for (n, m) in [(2, 7), (5, 40), (100, 3)] {
            let ra = a.log_pmf(n).unwrap().ln() - a.log_pmf(m).unwrap().ln();
            let rb = b.log_pmf(n - 1).unwrap().ln() - b.log_pmf(m - 1).unwrap().ln();
            assert!((ra - rb).abs() < 1e-12);
        }
    }

    #[test]
    fn dln_examples() {
        let p = DiscretisedLognormalParams::new(0.0, 1.0).unwrap();
        // mpmath quadrature of c(x) over [0.5, 1.5] / [0.5, ∞)
        let p1 = dln_log_pmf(1, &p).unwrap().exp();
        assert!((p1 - 0.546_802_849_450_484_6).abs() < 1e-13, "{p1}");
        assert!((dln_cdf(1, &p).unwrap() - p1).abs() < 1e-15);
        // mpmath quadrature over [0.5, 2.5] / [0.5, ∞)
        let c2 = dln_cdf(2, &p).unwrap();
        assert!((c2 - 0.762_191_747_526_745_0).abs() < 1e-13, "{c2}");

        let far = dln_log_pmf(1_000_000, &p).unwrap().ln();
        assert!(!far.is_nan() && far < -90.0);
        let very_far = DiscretisedLognormalParams::new(0.0, 0.05).unwrap();
        let v = dln_log_pmf(1_000_000, &very_far).unwrap();
        assert!(v.is_zero() || v.ln() < -1e4);
    }

    #[test]
    fn dln_cdf_tends_to_one() {
        let p = DiscretisedLognormalParams::new(2.94, 1.03).unwrap();
        let m = Model::new(p.into()).unwrap();
        let q = m.upper_support_point(1e-12, u64::MAX / 4).unwrap();
        assert!((m.cdf(q).unwrap() - 1.0).abs() <= 1e-12);
        assert!(1.0 - m.cdf(q - 1).unwrap() > 1e-12);
    }

    #[test]
    fn dln_extreme_location() {
        let p = DiscretisedLognormalParams::new(-7.23, 1.34).unwrap();
        let m = DlnModel::new(p).unwrap();
        // mpmath closed form
        let p1 = m.log_pmf(1).unwrap().exp();
        assert!((p1 - 0.988_681_516_681_813_2).abs() < 1e-12, "{p1}");
        let p2 = m.log_pmf(2).unwrap().exp();
        assert!((p2 - 0.010_190_857_090_823_54).abs() < 1e-12, "{p2}");
    }

    #[test]
    fn rejects_inadmissible_params() {
        assert!(HookedPowerLawParams::new(0.0, 1.0).is_err());
        assert!(HookedPowerLawParams::new(2.0, -0.5).is_err());
        assert!(HookedPowerLawParams::new(2.0, 1.0).unwrap().with_truncation(0).is_err());
        assert!(DiscretisedLognormalParams::new(0.0, 0.0).is_err());
        assert!(DiscretisedLognormalParams::new(f64::NAN, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn hooked_strictly_decreasing(alpha in 0.1f64..200.0, b in 0.0f64..1e4, n in 1u64..9_999) {
            let m = HookedModel::new(hooked(alpha, b)).unwrap();
            let a = m.log_pmf(n).unwrap().ln();
            let c = m.log_pmf(n + 1).unwrap().ln();
            prop_assert!(a > c);
        }

        #[test]
        fn dln_telescopes(mu in -3.0f64..5.0, sigma in 0.2f64..2.5, n in 2u64..2_000) {
            let m = DlnModel::new(DiscretisedLognormalParams::new(mu, sigma).unwrap()).unwrap();
            let diff = m.cdf(n).unwrap() - m.cdf(n - 1).unwrap();
            prop_assert!((diff - m.log_pmf(n).unwrap().exp()).abs() <= 1e-12);
        }

        #[test]
        fn cdfs_monotone_and_bounded(mu in -3.0f64..5.0, sigma in 0.2f64..2.5, alpha in 0.5f64..50.0, b in 0.0f64..500.0, n in 1u64..5_000) {
            let d = DlnModel::new(DiscretisedLognormalParams::new(mu, sigma).unwrap()).unwrap();
            let h = HookedModel::new(hooked(alpha, b)).unwrap();
            for m in [Model::Lognormal(d), Model::Hooked(h)] {
                let a = m.cdf(n).unwrap();
                let c = m.cdf(n + 1).unwrap();
                prop_assert!((0.0..=1.0).contains(&a));
                prop_assert!(c >= a);
                prop_assert!(m.log_pmf(n).unwrap().ln() <= 0.0);
            }
        }
    }

    #[test]
    fn dln_has_at_most_one_local_max() {
        for &mu in &[-7.0, -1.0, 0.0, 1.5, 3.0, 4.5] {
            for &sigma in &[0.2, 0.5, 1.0, 2.0] {
                let m = Model::new(DiscretisedLognormalParams::new(mu, sigma).unwrap().into()).unwrap();
                let end = m.upper_support_point(1e-3, 1 << 20).unwrap();
                let pm: Vec<f64> = (1..=end + 1).map(|n| m.log_pmf(n).unwrap().ln()).collect();
                let peaks = (0..pm.len())
                    .filter(|&i| {
                        let left = if i == 0 { f64::NEG_INFINITY } else { pm[i - 1] };
                        let right = pm.get(i + 1).copied().unwrap_or(f64::NEG_INFINITY);
                        pm[i] > left && pm[i] > right
                    })
                    .count();
                assert!(peaks <= 1, "mu={mu} sigma={sigma} peaks={peaks}");
            }
        }
    }
}
