//! Maximum-likelihood fitting of both models to a shifted count dataset.
//!
//! Both fitters run a Nelder–Mead search in an unconstrained transform of the
//! parameters: `(mu, ln sigma)` for the lognormal and `(ln alpha, ln(B + 1))`
//! for the hooked power law. Points outside the admissible region are mapped
//! back onto its boundary before evaluation, so every likelihood evaluated
//! comes from a valid parameter set.
//!
//! The hooked likelihood has a long ridge towards `alpha, B → ∞` where the
//! model tends to a geometric law. When the search runs into `alpha_cap`,
//! alpha is pinned there and `B` is re-optimised on its own.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::distributions::{
    DiscretisedLognormalParams, HookedPowerLawParams, Model, ModelKind, ModelParams,
    DEFAULT_ALPHA_CAP, DEFAULT_SIGMA_MIN, DEFAULT_TRUNCATION,
};
use crate::error::{Error, Result};
use crate::optim::{minimize, SimplexOptions};

/// Fits on fewer articles than this carry a warning.
pub const MIN_RECOMMENDED_ARTICLES: usize = 30;

const GRID_POINTS: usize = 17;
const MAX_RESTARTS: usize = 8;
const X_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationDataset {
    pub label: String,
    pub counts: Vec<u64>,
    pub shifted: bool,
}

impl CitationDataset {
    /// Raw citation counts, not yet shifted.
    pub fn new(label: impl Into<String>, counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyDataset);
        }
        Ok(CitationDataset {
            label: label.into(),
            counts,
            shifted: false,
        })
    }

    /// Counts already on the `1, 2, ...` support.
    pub fn from_shifted(label: impl Into<String>, counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if counts.contains(&0) {
            return Err(Error::domain("shifted counts must all be at least 1"));
        }
        Ok(CitationDataset {
            label: label.into(),
            counts,
            shifted: true,
        })
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max_count(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn histogram(&self) -> CountHistogram {
        CountHistogram::from_counts(&self.counts)
    }

    pub(crate) fn require_shifted(&self) -> Result<()> {
        if !self.shifted {
            return Err(Error::domain(format!(
                "dataset `{}` must be shifted by one before fitting",
                self.label
            )));
        }
        if self.counts.is_empty() {
            return Err(Error::EmptyDataset);
        }
        Ok(())
    }
}

/// Adds one to every count so uncited articles land on the support minimum.
pub fn shift_counts(ds: &CitationDataset) -> Result<CitationDataset> {
    if ds.shifted {
        return Err(Error::DoubleShift(ds.label.clone()));
    }
    Ok(CitationDataset {
        label: ds.label.clone(),
        counts: ds.counts.iter().map(|c| c + 1).collect(),
        shifted: true,
    })
}

/// Distinct values with their multiplicities, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountHistogram {
    pub values: Vec<u64>,
    pub freqs: Vec<u64>,
}

impl CountHistogram {
    pub fn from_counts(counts: &[u64]) -> Self {
        let mut map = BTreeMap::new();
        for &c in counts {
            *map.entry(c).or_insert(0u64) += 1;
        }
        let (values, freqs) = map.into_iter().unzip();
        CountHistogram { values, freqs }
    }

    pub fn total(&self) -> u64 {
        self.freqs.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.values.last().copied().unwrap_or(0)
    }
}

/// Σ log pmf over a histogram; `-inf` if any observed value has zero mass.
pub(crate) fn histogram_log_likelihood(hist: &CountHistogram, model: &Model) -> Result<f64> {
    let mut ll = 0.0;
    for (&v, &f) in hist.values.iter().zip(&hist.freqs) {
        let lp = model.log_pmf(v)?;
        if lp.is_zero() {
            return Ok(f64::NEG_INFINITY);
        }
        ll += f as f64 * lp.ln();
    }
    Ok(ll)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub alpha_cap: f64,
    pub truncation: u64,
    pub tail_correction: bool,
    pub max_iterations: usize,
    pub ll_tolerance: f64,
    pub sigma_min: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            alpha_cap: DEFAULT_ALPHA_CAP,
            truncation: DEFAULT_TRUNCATION,
            tail_correction: false,
            max_iterations: 10_000,
            ll_tolerance: 1e-8,
            sigma_min: DEFAULT_SIGMA_MIN,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_cap > 1.0) || !self.alpha_cap.is_finite() {
            return Err(Error::Config(format!("alpha cap must exceed 1, got {}", self.alpha_cap)));
        }
        if self.max_iterations < 100 {
            return Err(Error::Config(format!(
                "max iterations must be at least 100, got {}",
                self.max_iterations
            )));
        }
        if self.truncation == 0 {
            return Err(Error::Config("truncation must be at least 1".into()));
        }
        if !(self.ll_tolerance > 0.0) {
            return Err(Error::Config("log-likelihood tolerance must be positive".into()));
        }
        if !(self.sigma_min > 0.0) {
            return Err(Error::Config("sigma floor must be positive".into()));
        }
        Ok(())
    }

    fn simplex(&self, step: f64) -> SimplexOptions {
        SimplexOptions {
            max_iterations: self.max_iterations,
            f_tolerance: self.ll_tolerance,
            x_tolerance: X_TOLERANCE,
            initial_step: step,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    SigmaFloor,
    AlphaCap,
    OffsetZero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitTrace {
    pub initial_log_likelihood: f64,
    pub evaluations: usize,
    pub restarts: usize,
    pub final_diameter: f64,
    #[serde(default)]
    pub boundaries: Vec<Boundary>,
    /// Fewer than [`MIN_RECOMMENDED_ARTICLES`] observations.
    #[serde(default)]
    pub small_sample: bool,
    /// Truncation actually used when the data outran the configured one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_raised: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: ModelParams,
    pub log_likelihood: f64,
    pub converged: bool,
    pub alpha_capped: bool,
    pub iterations: usize,
    pub n_articles: usize,
    pub trace: FitTrace,
}

impl FitResult {
    pub fn model(&self) -> ModelKind {
        self.params.kind()
    }

    pub fn lognormal(&self) -> Option<&DiscretisedLognormalParams> {
        match &self.params {
            ModelParams::Lognormal(p) => Some(p),
            ModelParams::Hooked(_) => None,
        }
    }

    pub fn hooked(&self) -> Option<&HookedPowerLawParams> {
        match &self.params {
            ModelParams::Hooked(p) => Some(p),
            ModelParams::Lognormal(_) => None,
        }
    }
}

/// Runs the simplex search, restarting from the best point until a restart
/// no longer improves the objective.
struct SearchSummary {
    x: Vec<f64>,
    f: f64,
    iterations: usize,
    evaluations: usize,
    restarts: usize,
    converged: bool,
    diameter: f64,
}

fn search<F>(mut objective: F, x0: &[f64], opts: &SimplexOptions) -> SearchSummary
where
    F: FnMut(&[f64]) -> f64,
{
    let mut out = minimize(&mut objective, x0, opts);
    let mut summary = SearchSummary {
        x: out.x.clone(),
        f: out.f,
        iterations: out.iterations,
        evaluations: out.evaluations,
        restarts: 0,
        converged: out.converged,
        diameter: out.diameter,
    };
    while summary.restarts < MAX_RESTARTS && summary.iterations < opts.max_iterations {
        let remaining = opts.max_iterations - summary.iterations;
        let restart_opts = SimplexOptions {
            max_iterations: remaining,
            ..*opts
        };
        out = minimize(&mut objective, &summary.x, &restart_opts);
        summary.restarts += 1;
        summary.iterations += out.iterations;
        summary.evaluations += out.evaluations;
        let improvement = summary.f - out.f;
        if out.f < summary.f {
            summary.x = out.x.clone();
            summary.f = out.f;
        }
        summary.converged = out.converged;
        summary.diameter = out.diameter;
        if improvement <= opts.f_tolerance * summary.f.abs().max(1.0) {
            break;
        }
    }
    summary
}

// ---------------------------------------------------------------------------
// Lognormal
// ---------------------------------------------------------------------------

/// Moment estimates of the underlying normal: mean and sample standard
/// deviation of `ln(count)`, the latter floored at `sigma_min`.
pub fn init_lognormal(ds: &CitationDataset, sigma_min: f64) -> Result<DiscretisedLognormalParams> {
    ds.require_shifted()?;
    let n = ds.len() as f64;
    let logs: Vec<f64> = ds.counts.iter().map(|&c| (c as f64).ln()).collect();
    let mean = logs.iter().sum::<f64>() / n;
    let sd = if ds.len() > 1 {
        (logs.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    DiscretisedLognormalParams::new(mean, sd.max(sigma_min))
}

/// Relative slack when deciding that a transformed coordinate sits on a bound.
const BOUND_SLACK: f64 = 1e-12;

fn lognormal_from(x: &[f64], sigma_min: f64) -> DiscretisedLognormalParams {
    let sigma = x[1].exp();
    DiscretisedLognormalParams {
        mu: x[0],
        sigma: if sigma <= sigma_min * (1.0 + BOUND_SLACK) { sigma_min } else { sigma },
    }
}

fn lognormal_ll(hist: &CountHistogram, p: DiscretisedLognormalParams) -> f64 {
    Model::new(p.into())
        .and_then(|m| histogram_log_likelihood(hist, &m))
        .unwrap_or(f64::NEG_INFINITY)
}

pub fn fit_lognormal(ds: &CitationDataset, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    ds.require_shifted()?;
    let hist = ds.histogram();
    let start = init_lognormal(ds, cfg.sigma_min)?;
    let initial_ll = lognormal_ll(&hist, start);

    let objective = |x: &[f64]| -lognormal_ll(&hist, lognormal_from(x, cfg.sigma_min));
    let x0 = [start.mu, start.sigma.ln()];
    let s = search(objective, &x0, &cfg.simplex(0.1));

    let params = lognormal_from(&s.x, cfg.sigma_min);
    let mut boundaries = Vec::new();
    if params.sigma == cfg.sigma_min {
        boundaries.push(Boundary::SigmaFloor);
    }
    Ok(FitResult {
        params: params.into(),
        log_likelihood: -s.f,
        converged: s.converged,
        alpha_capped: false,
        iterations: s.iterations,
        n_articles: ds.len(),
        trace: FitTrace {
            initial_log_likelihood: initial_ll,
            evaluations: s.evaluations,
            restarts: s.restarts,
            final_diameter: s.diameter,
            boundaries,
            small_sample: ds.len() < MIN_RECOMMENDED_ARTICLES,
            truncation_raised: None,
        },
    })
}

// ---------------------------------------------------------------------------
// Hooked power law
// ---------------------------------------------------------------------------

/// Truncation long enough to cover every observed count.
pub fn effective_truncation(ds: &CitationDataset, cfg: &FitConfig) -> u64 {
    let max = ds.max_count();
    if max > cfg.truncation {
        cfg.truncation.max(2 * max)
    } else {
        cfg.truncation
    }
}

#[derive(Debug, Clone, Copy)]
struct HookedSpace {
    alpha_cap: f64,
    truncation: u64,
    tail_correction: bool,
}

impl HookedSpace {
    /// Maps `(ln alpha, ln(B + 1))` into the admissible region.
    fn params(&self, ln_alpha: f64, ln_b1: f64) -> HookedPowerLawParams {
        HookedPowerLawParams {
            alpha: if self.capped(ln_alpha) { self.alpha_cap } else { ln_alpha.exp() },
            offset: ln_b1.exp_m1().max(0.0),
            truncation: self.truncation,
            tail_correction: self.tail_correction,
        }
    }

    fn capped(&self, ln_alpha: f64) -> bool {
        ln_alpha.exp() >= self.alpha_cap * (1.0 - BOUND_SLACK)
    }
}

fn hooked_ll(hist: &CountHistogram, p: HookedPowerLawParams) -> f64 {
    Model::new(p.into())
        .and_then(|m| histogram_log_likelihood(hist, &m))
        .unwrap_or(f64::NEG_INFINITY)
}

/// One evaluated grid point of the hooked initialisation search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub params: HookedPowerLawParams,
    pub log_likelihood: f64,
}

/// Evaluates the 17 × 17 log-spaced initialisation grid, row-major in alpha.
pub fn hooked_grid(ds: &CitationDataset, cfg: &FitConfig) -> Result<Vec<GridPoint>> {
    cfg.validate()?;
    ds.require_shifted()?;
    let hist = ds.histogram();
    let space = HookedSpace {
        alpha_cap: cfg.alpha_cap,
        truncation: effective_truncation(ds, cfg),
        tail_correction: cfg.tail_correction,
    };
    let lo_a = 1.01f64.ln();
    let hi_a = cfg.alpha_cap.ln();
    let hi_b = (10.0 * ds.max_count() as f64).ln();
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (GRID_POINTS - 1) as f64;
    let mut out = Vec::with_capacity(GRID_POINTS * GRID_POINTS);
    for i in 0..GRID_POINTS {
        for j in 0..GRID_POINTS {
            let mut p = space.params(step(lo_a, hi_a, i), step(0.0, hi_b, j));
            if i == GRID_POINTS - 1 {
                p.alpha = cfg.alpha_cap;
            }
            out.push(GridPoint {
                params: p,
                log_likelihood: hooked_ll(&hist, p),
            });
        }
    }
    Ok(out)
}

/// Grid maximiser of the hooked likelihood.
///
/// Exact ties happen when the likelihood saturates in binary64 (all mass on
/// `n = 1`); they resolve towards larger alpha, then smaller B.
pub fn init_hooked(ds: &CitationDataset, cfg: &FitConfig) -> Result<HookedPowerLawParams> {
    let grid = hooked_grid(ds, cfg)?;
    Ok(best_grid_point(&grid).params)
}

fn best_grid_point(grid: &[GridPoint]) -> GridPoint {
    let mut best = grid[0];
    for g in &grid[1..] {
        let tie = g.log_likelihood == best.log_likelihood
            && (g.params.alpha > best.params.alpha
                || (g.params.alpha == best.params.alpha && g.params.offset < best.params.offset));
        if g.log_likelihood > best.log_likelihood || tie {
            best = *g;
        }
    }
    best
}

pub fn fit_hooked(ds: &CitationDataset, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    ds.require_shifted()?;
    let hist = ds.histogram();
    let truncation = effective_truncation(ds, cfg);
    let space = HookedSpace {
        alpha_cap: cfg.alpha_cap,
        truncation,
        tail_correction: cfg.tail_correction,
    };
    let start = best_grid_point(&hooked_grid(ds, cfg)?);
    let initial_ll = start.log_likelihood;

    let objective = |x: &[f64]| -hooked_ll(&hist, space.params(x[0], x[1]));
    let x0 = [start.params.alpha.ln(), start.params.offset.ln_1p()];
    let opts = cfg.simplex(0.3);
    let s = search(objective, &x0, &opts);

    let mut iterations = s.iterations;
    let mut evaluations = s.evaluations;
    let mut restarts = s.restarts;
    let mut converged = s.converged;
    let mut diameter = s.diameter;
    let mut best_x = s.x.clone();
    let mut best_f = s.f;

    let alpha_capped = space.capped(s.x[0]);
    if alpha_capped {
        let ln_cap = cfg.alpha_cap.ln();
        let objective_b = |x: &[f64]| -hooked_ll(&hist, space.params(ln_cap, x[0]));
        let remaining = cfg.max_iterations.saturating_sub(iterations).max(100);
        let b_opts = SimplexOptions {
            max_iterations: remaining,
            ..opts
        };
        let sb = search(objective_b, &[s.x[1]], &b_opts);
        iterations += sb.iterations;
        evaluations += sb.evaluations;
        restarts += sb.restarts;
        converged = sb.converged;
        diameter = sb.diameter;
        // the pinned search starts from the joint optimum, so it can only improve on it
        if sb.f <= best_f {
            best_f = sb.f;
            best_x = vec![ln_cap, sb.x[0]];
        } else {
            best_x = vec![ln_cap, s.x[1]];
        }
    }

    let params = space.params(best_x[0], best_x[1]);
    let mut boundaries = Vec::new();
    if alpha_capped {
        boundaries.push(Boundary::AlphaCap);
    }
    if best_x[1] <= 0.0 {
        boundaries.push(Boundary::OffsetZero);
    }
    Ok(FitResult {
        params: params.into(),
        log_likelihood: -best_f,
        converged,
        alpha_capped,
        iterations,
        n_articles: ds.len(),
        trace: FitTrace {
            initial_log_likelihood: initial_ll,
            evaluations,
            restarts,
            final_diameter: diameter,
            boundaries,
            small_sample: ds.len() < MIN_RECOMMENDED_ARTICLES,
            truncation_raised: (truncation != cfg.truncation).then_some(truncation),
        },
    })
}

/// Fits the requested family.
pub fn fit(ds: &CitationDataset, kind: ModelKind, cfg: &FitConfig) -> Result<FitResult> {
    match kind {
        ModelKind::Lognormal => fit_lognormal(ds, cfg),
        ModelKind::Hooked => fit_hooked(ds, cfg),
    }
}
