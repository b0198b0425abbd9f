//! Model comparison: total log-likelihood, AIC and the Vuong test.

use serde::{Deserialize, Serialize};

use crate::distributions::{Model, ModelKind, ModelParams};
use crate::error::{Error, Result};
use crate::fitting::{CitationDataset, FitResult};
use crate::numerics::{phi, CompensatedSum};

pub const DEFAULT_Z_THRESHOLD: f64 = 1.96;

/// Total log-likelihood of a dataset, with the counts that had zero mass.
#[derive(Debug, Clone, PartialEq)]
pub struct LogLikelihood {
    pub value: f64,
    /// Distinct counts the model gives zero probability; `value` is `-inf`
    /// whenever this is non-empty.
    pub offending: Vec<u64>,
}

pub fn total_log_likelihood(ds: &CitationDataset, params: &ModelParams) -> Result<LogLikelihood> {
    ds.require_shifted()?;
    let model = Model::new(*params)?;
    let hist = ds.histogram();
    let mut sum = CompensatedSum::default();
    let mut offending = Vec::new();
    for (&v, &f) in hist.values.iter().zip(&hist.freqs) {
        let lp = log_pmf_or_zero(&model, v)?;
        if lp == f64::NEG_INFINITY {
            offending.push(v);
        } else {
            sum.add(f as f64 * lp);
        }
    }
    let value = if offending.is_empty() { sum.value() } else { f64::NEG_INFINITY };
    Ok(LogLikelihood { value, offending })
}

/// Log-probability with counts outside a bounded support mapped to `-inf`.
fn log_pmf_or_zero(model: &Model, n: u64) -> Result<f64> {
    match model.log_pmf(n) {
        Ok(lp) => Ok(lp.ln()),
        Err(Error::SupportRange { .. }) => Ok(f64::NEG_INFINITY),
        Err(e) => Err(e),
    }
}

/// Akaike information criterion `2k - 2 ll`.
pub fn aic(ll: f64, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("AIC needs at least one parameter"));
    }
    Ok(2.0 * k as f64 - 2.0 * ll)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    L,
    #[serde(rename = "L_star")]
    LStar,
    H,
    #[serde(rename = "H_star")]
    HStar,
    #[serde(rename = "undefined")]
    Undefined,
}

impl Winner {
    /// Table label: `L`, `L*`, `H`, `H*`, or `-` when undefined.
    pub fn label(self) -> &'static str {
        match self {
            Winner::L => "L",
            Winner::LStar => "L*",
            Winner::H => "H",
            Winner::HStar => "H*",
            Winner::Undefined => "-",
        }
    }

    pub fn is_significant(self) -> bool {
        matches!(self, Winner::LStar | Winner::HStar)
    }

    pub fn from_label(s: &str) -> Option<Winner> {
        Some(match s {
            "L" => Winner::L,
            "L*" => Winner::LStar,
            "H" => Winner::H,
            "H*" => Winner::HStar,
            "-" => Winner::Undefined,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Winner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VuongStatus {
    Ok,
    /// The pointwise log-ratios are all equal; the models cannot be told apart.
    ZeroVariance,
    /// Some observation has zero probability under one of the models.
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub ll_lognormal: f64,
    pub ll_hooked: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vuong_z: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_two_sided: Option<f64>,
    pub winner: Winner,
    pub status: VuongStatus,
    pub n_articles: usize,
}

/// Significance-aware label for a Vuong statistic, positive favouring the
/// hooked model. A zero statistic goes to the lognormal.
pub fn classify_winner(z: f64, threshold: f64) -> Winner {
    if !z.is_finite() {
        return Winner::Undefined;
    }
    if z < -threshold {
        Winner::LStar
    } else if z > threshold {
        Winner::HStar
    } else if z > 0.0 {
        Winner::H
    } else {
        Winner::L
    }
}

/// Two-sided normal p-value of a z statistic.
pub fn two_sided_p(z: f64) -> f64 {
    (2.0 * phi(-z.abs())).min(1.0)
}

/// Vuong test of `hooked` (model A) against `lognormal` (model B).
///
/// The numerator is the log-likelihood difference itself, so the sign of `z`
/// always equals the sign of `ll_hooked - ll_lognormal`.
pub fn vuong_test(
    ds: &CitationDataset,
    hooked: &ModelParams,
    lognormal: &ModelParams,
    z_threshold: f64,
) -> Result<ComparisonResult> {
    ds.require_shifted()?;
    if ds.len() < 2 {
        return Err(Error::domain("the Vuong test needs at least two observations"));
    }
    if !(z_threshold > 0.0) {
        return Err(Error::Config(format!("z threshold must be positive, got {z_threshold}")));
    }
    let ma = Model::new(*hooked)?;
    let mb = Model::new(*lognormal)?;
    let hist = ds.histogram();
    let n = ds.len() as f64;

    let mut lla = CompensatedSum::default();
    let mut llb = CompensatedSum::default();
    let mut diffs = Vec::with_capacity(hist.values.len());
    let mut finite = true;
    for (&v, &f) in hist.values.iter().zip(&hist.freqs) {
        let a = log_pmf_or_zero(&ma, v)?;
        let b = log_pmf_or_zero(&mb, v)?;
        if !a.is_finite() || !b.is_finite() {
            finite = false;
        }
        lla.add(f as f64 * a);
        llb.add(f as f64 * b);
        diffs.push((a - b, f as f64));
    }
    let (ll_hooked, ll_lognormal) = (lla.value(), llb.value());
    let mut result = ComparisonResult {
        ll_lognormal,
        ll_hooked,
        vuong_z: None,
        p_two_sided: None,
        winner: Winner::Undefined,
        status: VuongStatus::NonFinite,
        n_articles: ds.len(),
    };
    if !finite {
        return Ok(result);
    }

    let total = ll_hooked - ll_lognormal;
    let mean = total / n;
    let mut ss = CompensatedSum::default();
    for &(m, f) in &diffs {
        ss.add(f * (m - mean) * (m - mean));
    }
    let sd = (ss.value() / (n - 1.0)).sqrt();
    if !(sd > 0.0) || diffs.iter().all(|&(m, _)| m == diffs[0].0) {
        result.status = VuongStatus::ZeroVariance;
        return Ok(result);
    }
    let z = total / (n.sqrt() * sd);
    result.vuong_z = Some(z);
    result.p_two_sided = Some(two_sided_p(z));
    result.winner = classify_winner(z, z_threshold);
    result.status = VuongStatus::Ok;
    Ok(result)
}

/// Vuong comparison of two fits of the same dataset.
pub fn compare_fits(
    ds: &CitationDataset,
    hooked: &FitResult,
    lognormal: &FitResult,
    z_threshold: f64,
) -> Result<ComparisonResult> {
    if hooked.model() != ModelKind::Hooked || lognormal.model() != ModelKind::Lognormal {
        return Err(Error::domain("compare_fits expects a hooked and a lognormal fit"));
    }
    vuong_test(ds, &hooked.params, &lognormal.params, z_threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{DiscretisedLognormalParams, HookedPowerLawParams};
    use proptest::prelude::*;

    fn shifted(counts: &[u64]) -> CitationDataset {
        CitationDataset::from_shifted("t", counts.to_vec()).unwrap()
    }

    fn hooked(alpha: f64, b: f64) -> ModelParams {
        HookedPowerLawParams::new(alpha, b).unwrap().into()
    }

    fn dln(mu: f64, sigma: f64) -> ModelParams {
        DiscretisedLognormalParams::new(mu, sigma).unwrap().into()
    }

    #[test]
    fn single_count_log_likelihood() {
        // (B + 1)^-2 / Σ_{n≥1} (n + 1)^-2 over the truncated support
        let ll = total_log_likelihood(&shifted(&[1]), &hooked(2.0, 1.0)).unwrap();
        let tail: f64 = (1..=10_000u64).map(|n| 1.0 / ((n + 1) as f64).powi(2)).sum();
        assert!((ll.value - (0.25 / tail).ln()).abs() < 1e-12);
        assert!(ll.offending.is_empty());
        // against the infinite-support constant the value is ln 0.3876...
        assert!((ll.value - (1.0 / (std::f64::consts::PI.powi(2) / 6.0 - 1.0) / 4.0).ln()).abs() < 1e-3);
    }

    #[test]
    fn log_likelihood_is_additive() {
        let p = dln(1.0, 0.8);
        let a = total_log_likelihood(&shifted(&[1, 2, 3]), &p).unwrap().value;
        let b = total_log_likelihood(&shifted(&[7, 2]), &p).unwrap().value;
        let ab = total_log_likelihood(&shifted(&[1, 2, 3, 7, 2]), &p).unwrap().value;
        assert!((a + b - ab).abs() < 1e-12);
    }

    #[test]
    fn out_of_support_counts_are_flagged() {
        let p: ModelParams = HookedPowerLawParams::new(2.0, 0.0)
            .unwrap()
            .with_truncation(5)
            .unwrap()
            .into();
        let ll = total_log_likelihood(&shifted(&[1, 9, 9, 12]), &p).unwrap();
        assert_eq!(ll.value, f64::NEG_INFINITY);
        assert_eq!(ll.offending, vec![9, 12]);
    }

    #[test]
    fn unshifted_is_rejected() {
        let ds = CitationDataset::new("j", vec![0, 1]).unwrap();
        assert!(total_log_likelihood(&ds, &dln(0.0, 1.0)).is_err());
    }

    #[test]
    fn aic_examples() {
        assert_eq!(aic(-4490.0, 2).unwrap(), 8984.0);
        assert_eq!(aic(0.0, 2).unwrap(), 4.0);
        assert!(aic(0.0, 0).is_err());
    }

    #[test]
    fn identical_models_have_zero_variance() {
        let p = dln(1.0, 1.0);
        let r = vuong_test(&shifted(&[1, 2, 3, 5, 8]), &p, &p, 1.96).unwrap();
        assert_eq!(r.status, VuongStatus::ZeroVariance);
        assert_eq!(r.winner, Winner::Undefined);
        assert_eq!(r.vuong_z, None);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_winner(-2.58, 1.96), Winner::LStar);
        assert_eq!(classify_winner(1.52, 1.96), Winner::H);
        assert_eq!(classify_winner(0.0, 1.96), Winner::L);
        assert_eq!(classify_winner(-1.17, 1.96), Winner::L);
        assert_eq!(classify_winner(1.96, 1.96), Winner::H);
        assert_eq!(classify_winner(-1.96, 1.96), Winner::L);
        assert_eq!(classify_winner(2.06, 1.96), Winner::HStar);
        assert_eq!(classify_winner(f64::NAN, 1.96), Winner::Undefined);
        assert_eq!(classify_winner(f64::INFINITY, 1.96), Winner::Undefined);
    }

    #[test]
    fn labels_round_trip() {
        for w in [Winner::L, Winner::LStar, Winner::H, Winner::HStar, Winner::Undefined] {
            assert_eq!(Winner::from_label(w.label()), Some(w));
        }
        assert_eq!(Winner::HStar.to_string(), "H*");
    }

    #[test]
    fn p_value_edges() {
        assert_eq!(two_sided_p(0.0), 1.0);
        assert!((two_sided_p(1.959963984540054) - 0.05).abs() < 1e-12);
        assert!(two_sided_p(30.0) > 0.0);
    }

    proptest! {
        #[test]
        fn z_sign_follows_ll_difference(
            counts in prop::collection::vec(1u64..200, 2..60),
            alpha in 1.2f64..6.0,
            b in 0.0f64..50.0,
            mu in -1.0f64..4.0,
            sigma in 0.2f64..2.5,
        ) {
            let ds = shifted(&counts);
            let r = vuong_test(&ds, &hooked(alpha, b), &dln(mu, sigma), 1.96).unwrap();
            if let Some(z) = r.vuong_z {
                let d = r.ll_hooked - r.ll_lognormal;
                prop_assert_eq!(z > 0.0, d > 0.0);
                prop_assert_eq!(z < 0.0, d < 0.0);
                let p = r.p_two_sided.unwrap();
                prop_assert!((0.0..=1.0).contains(&p));
            }
        }

        #[test]
        fn z_is_permutation_invariant(mut counts in prop::collection::vec(1u64..100, 2..40)) {
            let h = hooked(2.5, 3.0);
            let l = dln(1.5, 1.0);
            let a = vuong_test(&shifted(&counts), &h, &l, 1.96).unwrap();
            counts.reverse();
            let b = vuong_test(&shifted(&counts), &h, &l, 1.96).unwrap();
            prop_assert_eq!(a.vuong_z, b.vuong_z);
        }

        #[test]
        fn aic_orders_like_ll(a in -1e6f64..0.0, b in -1e6f64..0.0) {
            prop_assert_eq!(aic(a, 2).unwrap() < aic(b, 2).unwrap(), a > b);
        }

        #[test]
        fn p_decreases_in_abs_z(z in 0.0f64..8.0, dz in 0.01f64..1.0) {
            prop_assert!(two_sided_p(z + dz) < two_sided_p(z));
            prop_assert_eq!(two_sided_p(z), two_sided_p(-z));
        }

        #[test]
        fn labels_mirror(z in -10.0f64..10.0) {
            prop_assume!(z != 0.0);
            let mirror = |w: Winner| match w {
                Winner::L => Winner::H,
                Winner::H => Winner::L,
                Winner::LStar => Winner::HStar,
                Winner::HStar => Winner::LStar,
                Winner::Undefined => Winner::Undefined,
            };
            prop_assert_eq!(classify_winner(-z, 1.96), mirror(classify_winner(z, 1.96)));
        }
    }
}
