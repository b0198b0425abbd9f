//! Seeded sampling from either model, parameter recovery, and mixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::{DiscretisedLognormalParams, Model, ModelParams, SUPPORT_TAIL};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fitting::{fit, fit_hooked, fit_lognormal, CitationDataset, FitConfig, FitResult};
use crate::selection::{compare_fits, total_log_likelihood, ComparisonResult};

/// Identifier of the pseudo-random stream; bump it if the stream ever changes.
pub const GENERATOR_ALGORITHM: &str = "chacha8-v1";

/// Longest inversion table built for one model.
pub const MAX_TABLE_LEN: u64 = 1 << 22;

pub const MIN_EXPERIMENT_SIZE: usize = 1000;

#[derive(Debug, Clone)]
pub struct SeededGenerator {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        SeededGenerator {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm(&self) -> &'static str {
        GENERATOR_ALGORITHM
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

/// Inversion sampler over a prefix CDF table.
///
/// The table runs to the `1 - 1e-12` quantile (or the end of a bounded
/// support, or [`MAX_TABLE_LEN`]); draws past its last entry map to that
/// last point.
#[derive(Debug, Clone)]
pub struct Sampler {
    cdf: Vec<f64>,
}

impl Sampler {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let model = Model::new(*params)?;
        let top = model.upper_support_point(SUPPORT_TAIL, MAX_TABLE_LEN)?;
        let cdf = model.cdf_table(top)?;
        Ok(Sampler { cdf })
    }

    /// Last point of the table.
    pub fn table_len(&self) -> u64 {
        self.cdf.len() as u64
    }

    pub fn draw(&self, u: f64) -> u64 {
        let i = self.cdf.partition_point(|&f| f <= u);
        (i.min(self.cdf.len() - 1) + 1) as u64
    }

    pub fn draw_many(&self, n: usize, gen: &mut SeededGenerator) -> Vec<u64> {
        (0..n).map(|_| self.draw(gen.uniform())).collect()
    }
}

/// `n` independent draws as a shifted dataset.
pub fn sample(params: &ModelParams, n: usize, gen: &mut SeededGenerator) -> Result<CitationDataset> {
    if n == 0 {
        return Err(Error::domain("sample size must be at least 1"));
    }
    let s = Sampler::new(params)?;
    CitationDataset::from_shifted(format!("synthetic-{}", gen.seed()), s.draw_many(n, gen))
}

/// Parameter values in a fixed order: `(mu, sigma)` or `(alpha, B)`.
pub fn param_values(p: &ModelParams) -> [f64; 2] {
    match p {
        ModelParams::Lognormal(d) => [d.mu, d.sigma],
        ModelParams::Hooked(h) => [h.alpha, h.offset],
    }
}

pub fn param_names(p: &ModelParams) -> [&'static str; 2] {
    match p {
        ModelParams::Lognormal(_) => ["mu", "sigma"],
        ModelParams::Hooked(_) => ["alpha", "offset"],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryRun {
    /// Decimal string so that seeds above `i64::MAX` survive every format.
    pub seed: String,
    pub fitted: FitResult,
    pub truth_log_likelihood: f64,
    /// `|fitted - truth|` per parameter.
    pub abs_errors: Vec<f64>,
    /// Fitted minus true-parameter log-likelihood on the same sample.
    pub ll_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub truth: ModelParams,
    pub n: usize,
    pub parameters: Vec<String>,
    pub median_abs_errors: Vec<f64>,
    pub worst_abs_errors: Vec<f64>,
    pub median_ll_gap: f64,
    pub min_ll_gap: f64,
    pub runs: Vec<RecoveryRun>,
}

/// Midpoint average for even lengths; NaN when empty.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn recovery_run(truth: &ModelParams, sampler: &Sampler, n: usize, seed: u64, cfg: &FitConfig) -> Result<RecoveryRun> {
    let mut gen = SeededGenerator::new(seed);
    let ds = CitationDataset::from_shifted(format!("synthetic-{seed}"), sampler.draw_many(n, &mut gen))?;
    let fitted = fit(&ds, truth.kind(), cfg)?;
    let truth_ll = total_log_likelihood(&ds, truth)?.value;
    let t = param_values(truth);
    let f = param_values(&fitted.params);
    Ok(RecoveryRun {
        seed: seed.to_string(),
        abs_errors: vec![(f[0] - t[0]).abs(), (f[1] - t[1]).abs()],
        ll_gap: fitted.log_likelihood - truth_ll,
        truth_log_likelihood: truth_ll,
        fitted,
    })
}

/// Samples from `truth` once per seed and refits the same family.
pub fn recovery_experiment(
    truth: &ModelParams,
    n: usize,
    seeds: &[u64],
    cfg: &FitConfig,
    exec: Execution,
) -> Result<RecoveryReport> {
    if n < MIN_EXPERIMENT_SIZE {
        return Err(Error::domain(format!(
            "recovery needs at least {MIN_EXPERIMENT_SIZE} samples, got {n}"
        )));
    }
    if seeds.is_empty() {
        return Err(Error::domain("recovery needs at least one seed"));
    }
    cfg.validate()?;
    let sampler = Sampler::new(truth)?;
    let runs = exec
        .map(seeds, |&seed| recovery_run(truth, &sampler, n, seed, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let column = |i: usize| runs.iter().map(|r| r.abs_errors[i]).collect::<Vec<_>>();
    let gaps: Vec<f64> = runs.iter().map(|r| r.ll_gap).collect();
    Ok(RecoveryReport {
        truth: *truth,
        n,
        parameters: param_names(truth).iter().map(|s| s.to_string()).collect(),
        median_abs_errors: (0..2).map(|i| median(&column(i))).collect(),
        worst_abs_errors: (0..2).map(|i| column(i).into_iter().fold(0.0, f64::max)).collect(),
        median_ll_gap: median(&gaps),
        min_ll_gap: gaps.iter().copied().fold(f64::INFINITY, f64::min),
        runs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub params: DiscretisedLognormalParams,
    pub weight: f64,
}

/// Weighted lognormal components; weights are normalised on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    components: Vec<MixtureComponent>,
}

impl MixtureSpec {
    pub fn new(components: Vec<(DiscretisedLognormalParams, f64)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("a mixture needs at least one component"));
        }
        let mut total = 0.0;
        for (p, w) in &components {
            p.validate()?;
            if !(*w > 0.0) || !w.is_finite() {
                return Err(Error::domain(format!("mixture weights must be positive, got {w}")));
            }
            total += w;
        }
        Ok(MixtureSpec {
            components: components
                .into_iter()
                .map(|(params, w)| MixtureComponent { params, weight: w / total })
                .collect(),
        })
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureReport {
    pub seed: String,
    pub components: Vec<MixtureComponent>,
    /// Draws that came from each component.
    pub component_counts: Vec<usize>,
    pub lognormal: FitResult,
    pub hooked: FitResult,
    pub comparison: ComparisonResult,
}

/// Draws component labels by weight and counts from the chosen component.
pub fn sample_mixture(spec: &MixtureSpec, n: usize, gen: &mut SeededGenerator) -> Result<(CitationDataset, Vec<usize>)> {
    if n == 0 {
        return Err(Error::domain("sample size must be at least 1"));
    }
    let samplers = spec
        .components
        .iter()
        .map(|c| Sampler::new(&c.params.into()))
        .collect::<Result<Vec<_>>>()?;
    let mut bounds = Vec::with_capacity(spec.components.len());
    let mut acc = 0.0;
    for c in &spec.components {
        acc += c.weight;
        bounds.push(acc);
    }
    let mut counts = vec![0usize; samplers.len()];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u = gen.uniform();
        let k = bounds.partition_point(|&b| b <= u).min(samplers.len() - 1);
        counts[k] += 1;
        out.push(samplers[k].draw(gen.uniform()));
    }
    Ok((CitationDataset::from_shifted(format!("mixture-{}", gen.seed()), out)?, counts))
}

/// Fits both models to pooled mixture data and compares them. The direction
/// of the outcome is reported, not checked.
pub fn mixture_experiment(
    spec: &MixtureSpec,
    n: usize,
    gen: &mut SeededGenerator,
    cfg: &FitConfig,
    z_threshold: f64,
) -> Result<(CitationDataset, MixtureReport)> {
    if n < MIN_EXPERIMENT_SIZE {
        return Err(Error::domain(format!(
            "mixture experiment needs at least {MIN_EXPERIMENT_SIZE} samples, got {n}"
        )));
    }
    let (ds, component_counts) = sample_mixture(spec, n, gen)?;
    let lognormal = fit_lognormal(&ds, cfg)?;
    let hooked = fit_hooked(&ds, cfg)?;
    let comparison = compare_fits(&ds, &hooked, &lognormal, z_threshold)?;
    let report = MixtureReport {
        seed: gen.seed().to_string(),
        components: spec.components.clone(),
        component_counts,
        lognormal,
        hooked,
        comparison,
    };
    Ok((ds, report))
}
