//! Command-line front end: `fit`, `compare`, `diagnose`, `simulate`, `report`.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::data_io::{
    parse_counts, read_result, render_table, write_atomic, write_result, Experiment, Format, MixtureTruth,
    Provenance, ResultDocument, TableStyle,
};
use crate::diagnostics::{plot_series, segment_differences, segments_for, DEFAULT_SEGMENTS};
use crate::distributions::{
    DiscretisedLognormalParams, HookedPowerLawParams, ModelKind, ModelParams, DEFAULT_ALPHA_CAP,
    DEFAULT_SIGMA_MIN, DEFAULT_TRUNCATION,
};
use crate::error::{Error, Result};
use crate::exec::{with_jobs, Execution};
use crate::fitting::{fit, shift_counts, CitationDataset, FitConfig};
use crate::selection::{compare_fits, DEFAULT_Z_THRESHOLD};
use crate::synthesis::{
    mixture_experiment, recovery_experiment, MixtureSpec, SeededGenerator, GENERATOR_ALGORITHM,
};

const EXIT_CODES: &str = "\
Exit status:
  0  success
  2  usage error (unknown flag, bad value)
  3  I/O error
  4  malformed input data or result document
  5  invalid or conflicting configuration
  6  numerical failure

Errors are printed to stderr as a single line `error[<category>]: <message>`.";

#[derive(Debug, Parser)]
#[command(name = "citedist", version, about = "Fit and compare the discretised lognormal and hooked power law on citation counts", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shift counts by one, fit the selected models and write one result document per dataset.
    Fit(FitCmd),
    /// Fit both models, run the Vuong test and print the parameters table.
    Compare(CompareCmd),
    /// Segment diagnostics and CDF plots.
    Diagnose(DiagnoseCmd),
    /// Synthetic-data experiments.
    #[command(subcommand)]
    Simulate(SimulateCmd),
    /// Render tables from stored result documents.
    Report(ReportCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Lognormal,
    Hooked,
    Both,
}

impl ModelChoice {
    fn kinds(self) -> Vec<ModelKind> {
        match self {
            ModelChoice::Lognormal => vec![ModelKind::Lognormal],
            ModelChoice::Hooked => vec![ModelKind::Hooked],
            ModelChoice::Both => vec![ModelKind::Lognormal, ModelKind::Hooked],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Labeled if any line contains a comma.
    Auto,
    OnePerLine,
    Labeled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Parameters,
    Segments,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Upper bound on the hooked exponent alpha.
    #[arg(long, default_value_t = DEFAULT_ALPHA_CAP)]
    pub alpha_cap: f64,
    /// Number of terms in the hooked normalisation sum.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: u64,
    /// Add the integral tail bound to the hooked normalisation.
    #[arg(long)]
    pub tail_correct: bool,
    /// Simplex iteration budget per fit.
    #[arg(long, default_value_t = 10_000)]
    pub max_iterations: usize,
    /// Relative log-likelihood tolerance for convergence.
    #[arg(long, default_value_t = 1e-8)]
    pub ll_tolerance: f64,
    /// Smallest lognormal sigma the fitter may return.
    #[arg(long, default_value_t = DEFAULT_SIGMA_MIN)]
    pub sigma_min: f64,
}

impl FitArgs {
    pub fn config(&self) -> Result<FitConfig> {
        let cfg = FitConfig {
            alpha_cap: self.alpha_cap,
            truncation: self.truncation,
            tail_correction: self.tail_correct,
            max_iterations: self.max_iterations,
            ll_tolerance: self.ll_tolerance,
            sigma_min: self.sigma_min,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct AnalysisArgs {
    #[command(flatten)]
    pub fit: FitArgs,
    /// Models to fit.
    #[arg(long, value_enum, default_value_t = ModelChoice::Both)]
    pub model: ModelChoice,
    /// Number of log-spaced diagnostic segments.
    #[arg(long, default_value_t = DEFAULT_SEGMENTS)]
    pub segments: usize,
    /// |z| above which a Vuong result is significant.
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    /// Input layout.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// Worker threads for independent datasets (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

impl AnalysisArgs {
    fn validate(&self) -> Result<()> {
        if self.segments == 0 {
            return Err(Error::Config("--segments must be at least 1".into()));
        }
        if !(self.z_threshold > 0.0) || !self.z_threshold.is_finite() {
            return Err(Error::Config("--z-threshold must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
pub struct FitCmd {
    /// Count file: one count per line, or `label,count` rows.
    pub input: PathBuf,
    /// Directory for the result documents.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
}

#[derive(Debug, Args)]
pub struct CompareCmd {
    /// Count files, or stored `.toml` result documents.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Also write the table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
}

#[derive(Debug, Args)]
pub struct DiagnoseCmd {
    pub input: PathBuf,
    /// CDF plot: an `.svg` file for a single dataset, otherwise a directory.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Also write the segments table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
}

#[derive(Debug, Subcommand)]
pub enum SimulateCmd {
    /// Sample from a known model and refit it, once per seed.
    Recovery(RecoveryCmd),
    /// Fit both models to pooled draws from a lognormal mixture.
    Mixture(MixtureCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Lognormal,
    Hooked,
}

#[derive(Debug, Args)]
pub struct RecoveryCmd {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, allow_hyphen_values = true, required_if_eq("family", "lognormal"))]
    pub mu: Option<f64>,
    #[arg(long, required_if_eq("family", "lognormal"))]
    pub sigma: Option<f64>,
    #[arg(long, required_if_eq("family", "hooked"))]
    pub alpha: Option<f64>,
    /// Hooked offset B.
    #[arg(long, required_if_eq("family", "hooked"))]
    pub offset: Option<f64>,
    /// Sample size per seed.
    #[arg(long, default_value_t = 20_000)]
    pub n: usize,
    /// First seed; runs use `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub replicates: u64,
    /// Result document path.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub fit: FitArgs,
}

#[derive(Debug, Args)]
pub struct MixtureCmd {
    /// `mu:sigma:weight`, repeatable.
    #[arg(long = "component", required = true, allow_hyphen_values = true)]
    pub components: Vec<String>,
    #[arg(long, default_value_t = 20_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    #[arg(long, default_value_t = DEFAULT_SEGMENTS)]
    pub segments: usize,
    /// Result document path.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub fit: FitArgs,
}

#[derive(Debug, Args)]
pub struct ReportCmd {
    /// Result documents, rendered in the order given.
    #[arg(required = true)]
    pub documents: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Style::Parameters)]
    pub style: Style,
    /// Also write the table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure category and exit status for an error.
pub fn classify(err: &Error) -> (&'static str, i32) {
    match err {
        Error::Io { .. } => ("io", 3),
        Error::Parse { .. } | Error::Document(_) | Error::SchemaVersion { .. } | Error::EmptyDataset => ("parse", 4),
        Error::Config(_) | Error::Domain(_) | Error::DoubleShift(_) => ("config", 5),
        Error::SupportRange { .. } | Error::OracleTimeout { .. } => ("numeric", 6),
    }
}

fn read_datasets(path: &Path, format: InputFormat) -> Result<Vec<CitationDataset>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let format = match format {
        InputFormat::Auto => Format::detect(&text),
        InputFormat::OnePerLine => Format::OnePerLine,
        InputFormat::Labeled => Format::LabeledTwoColumn,
    };
    let mut sets = parse_counts(&text, format)?;
    if format == Format::OnePerLine {
        sets[0].label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(sets)
}

/// Shift, fit, compare and diagnose one raw dataset.
pub fn analyse(raw: &CitationDataset, args: &AnalysisArgs, cfg: &FitConfig) -> Result<ResultDocument> {
    let ds = shift_counts(raw)?;
    let mut doc = ResultDocument::new(raw.label.clone(), ds.len(), Provenance::new(*cfg, args.segments, args.z_threshold));
    doc.provenance.timestamp = std::env::var("SOURCE_DATE_EPOCH").ok();
    for kind in args.model.kinds() {
        let r = fit(&ds, kind, cfg)?;
        match kind {
            ModelKind::Lognormal => doc.lognormal = Some(r),
            ModelKind::Hooked => doc.hooked = Some(r),
        }
    }
    if let (Some(h), Some(l)) = (&doc.hooked, &doc.lognormal) {
        if ds.len() >= 2 {
            doc.comparison = Some(compare_fits(&ds, h, l, args.z_threshold)?);
        }
    }
    let segments = segments_for(&ds, args.segments)?;
    for r in [&doc.lognormal, &doc.hooked].into_iter().flatten() {
        doc.diagnostics.push(segment_differences(&ds, &r.params, &segments)?);
    }
    Ok(doc)
}

/// File-name stems from labels: lowercase alphanumerics joined by `-`,
/// de-duplicated in order.
pub fn slugs(labels: &[&str]) -> Vec<String> {
    let mut seen = HashSet::new();
    labels
        .iter()
        .map(|l| {
            let mut s = String::new();
            for c in l.chars() {
                if c.is_ascii_alphanumeric() {
                    s.push(c.to_ascii_lowercase());
                } else if !s.is_empty() && !s.ends_with('-') {
                    s.push('-');
                }
            }
            let base = match s.trim_end_matches('-') {
                "" => "dataset".to_string(),
                t => t.to_string(),
            };
            let mut candidate = base.clone();
            let mut k = 2;
            while !seen.insert(candidate.clone()) {
                candidate = format!("{base}-{k}");
                k += 1;
            }
            candidate
        })
        .collect()
}

fn analyse_all(raws: &[CitationDataset], args: &AnalysisArgs, cfg: &FitConfig) -> Result<Vec<ResultDocument>> {
    let docs = Execution::Parallel.map_with_jobs(raws, args.jobs, |raw| analyse(raw, args, cfg));
    let mut out = Vec::with_capacity(docs.len());
    for (raw, d) in raws.iter().zip(docs) {
        let d = d?;
        let verdict = d.comparison.as_ref().map_or("-", |c| c.winner.label());
        eprintln!("{}: n={} best={}", display_label(&raw.label), d.n_articles, verdict);
        out.push(d);
    }
    Ok(out)
}

fn display_label(l: &str) -> &str {
    if l.is_empty() {
        "(unlabeled)"
    } else {
        l
    }
}

fn emit(table: &str, out: Option<&Path>) -> Result<()> {
    print!("{table}");
    std::io::stdout().flush().map_err(|e| Error::io("<stdout>", e))?;
    if let Some(p) = out {
        write_atomic(p, table.as_bytes())?;
    }
    Ok(())
}

fn run_fit(cmd: &FitCmd) -> Result<()> {
    cmd.analysis.validate()?;
    let cfg = cmd.analysis.fit.config()?;
    let raws = read_datasets(&cmd.input, cmd.analysis.format)?;
    let docs = analyse_all(&raws, &cmd.analysis, &cfg)?;
    fs::create_dir_all(&cmd.out).map_err(|e| Error::io(&cmd.out, e))?;
    let labels: Vec<&str> = docs.iter().map(|d| d.label.as_str()).collect();
    for (doc, slug) in docs.iter().zip(slugs(&labels)) {
        let path = cmd.out.join(format!("{slug}.toml"));
        write_result(doc, &path)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn run_compare(cmd: &CompareCmd) -> Result<()> {
    cmd.analysis.validate()?;
    let cfg = cmd.analysis.fit.config()?;
    let args = AnalysisArgs {
        model: ModelChoice::Both,
        ..cmd.analysis.clone()
    };
    let mut docs = Vec::new();
    for input in &cmd.inputs {
        if input.extension().is_some_and(|e| e == "toml") {
            docs.push(read_result(input)?);
        } else {
            let raws = read_datasets(input, args.format)?;
            docs.extend(analyse_all(&raws, &args, &cfg)?);
        }
    }
    emit(&render_table(&docs, TableStyle::Parameters)?, cmd.out.as_deref())
}

fn run_diagnose(cmd: &DiagnoseCmd) -> Result<()> {
    cmd.analysis.validate()?;
    let cfg = cmd.analysis.fit.config()?;
    let raws = read_datasets(&cmd.input, cmd.analysis.format)?;
    let docs = analyse_all(&raws, &cmd.analysis, &cfg)?;
    if let Some(plot) = &cmd.plot {
        let single_file = docs.len() == 1 && plot.extension().is_some_and(|e| e == "svg");
        if !single_file {
            fs::create_dir_all(plot).map_err(|e| Error::io(plot, e))?;
        }
        let labels: Vec<&str> = docs.iter().map(|d| d.label.as_str()).collect();
        for ((raw, doc), slug) in raws.iter().zip(&docs).zip(slugs(&labels)) {
            let ds = shift_counts(raw)?;
            let models: Vec<ModelParams> = [&doc.lognormal, &doc.hooked]
                .into_iter()
                .flatten()
                .map(|r| r.params)
                .collect();
            let path = if single_file { plot.clone() } else { plot.join(format!("{slug}.svg")) };
            plot_series(&ds, &models)?.write(&path)?;
        }
    }
    emit(&render_table(&docs, TableStyle::Segments)?, cmd.out.as_deref())
}

fn run_recovery(cmd: &RecoveryCmd) -> Result<()> {
    let cfg = cmd.fit.config()?;
    let truth: ModelParams = match cmd.family {
        Family::Lognormal => DiscretisedLognormalParams::new(cmd.mu.unwrap_or_default(), cmd.sigma.unwrap_or_default())?.into(),
        Family::Hooked => HookedPowerLawParams::new(cmd.alpha.unwrap_or_default(), cmd.offset.unwrap_or_default())?
            .with_truncation(cfg.truncation)?
            .with_tail_correction(cfg.tail_correction)
            .into(),
    };
    if cmd.replicates == 0 {
        return Err(Error::Config("--replicates must be at least 1".into()));
    }
    let seeds: Vec<u64> = (0..cmd.replicates).map(|i| cmd.seed.wrapping_add(i)).collect();
    let report = with_jobs(cmd.jobs, || recovery_experiment(&truth, cmd.n, &seeds, &cfg, Execution::Parallel))?;
    for r in &report.runs {
        eprintln!(
            "seed {}: |error| {}={:.4} {}={:.4} ll_gap {:.4}",
            r.seed, report.parameters[0], r.abs_errors[0], report.parameters[1], r.abs_errors[1], r.ll_gap
        );
    }
    let mut doc = ResultDocument::new(format!("recovery-{}", truth.kind()), cmd.n, Provenance::new(cfg, DEFAULT_SEGMENTS, DEFAULT_Z_THRESHOLD));
    doc.provenance.generator = Some(GENERATOR_ALGORITHM.into());
    doc.provenance.seed = Some(cmd.seed.to_string());
    doc.provenance.timestamp = std::env::var("SOURCE_DATE_EPOCH").ok();
    println!(
        "median |error| {}={:.4} {}={:.4}; min ll gap {:.4}",
        report.parameters[0], report.median_abs_errors[0], report.parameters[1], report.median_abs_errors[1], report.min_ll_gap
    );
    doc.experiment = Some(Experiment::Recovery(report));
    write_result(&doc, &cmd.out)
}

fn parse_component(s: &str) -> Result<(DiscretisedLognormalParams, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Config(format!("component `{s}` is not `mu:sigma:weight`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    Ok((DiscretisedLognormalParams::new(v[0], v[1])?, v[2]))
}

fn run_mixture(cmd: &MixtureCmd) -> Result<()> {
    let cfg = cmd.fit.config()?;
    let comps = cmd.components.iter().map(|c| parse_component(c)).collect::<Result<Vec<_>>>()?;
    let spec = MixtureSpec::new(comps)?;
    let mut gen = SeededGenerator::new(cmd.seed);
    let (ds, report) = mixture_experiment(&spec, cmd.n, &mut gen, &cfg, cmd.z_threshold)?;
    let mut doc = ResultDocument::new(ds.label.clone(), ds.len(), Provenance::new(cfg, cmd.segments, cmd.z_threshold));
    doc.provenance.generator = Some(GENERATOR_ALGORITHM.into());
    doc.provenance.seed = Some(cmd.seed.to_string());
    doc.provenance.timestamp = std::env::var("SOURCE_DATE_EPOCH").ok();
    let segments = segments_for(&ds, cmd.segments)?;
    for r in [&report.lognormal, &report.hooked] {
        doc.diagnostics.push(segment_differences(&ds, &r.params, &segments)?);
    }
    eprintln!(
        "mixture n={} counts {:?}: z={} best={}",
        ds.len(),
        report.component_counts,
        report.comparison.vuong_z.map_or("-".into(), |z| format!("{z:.2}")),
        report.comparison.winner
    );
    doc.lognormal = Some(report.lognormal);
    doc.hooked = Some(report.hooked);
    doc.comparison = Some(report.comparison);
    doc.experiment = Some(Experiment::Mixture(MixtureTruth {
        components: report.components,
        component_counts: report.component_counts,
    }));
    print!("{}", render_table(std::slice::from_ref(&doc), TableStyle::Parameters)?);
    write_result(&doc, &cmd.out)
}

fn run_report(cmd: &ReportCmd) -> Result<()> {
    let docs = cmd.documents.iter().map(|p| read_result(p)).collect::<Result<Vec<_>>>()?;
    let style = match cmd.style {
        Style::Parameters => TableStyle::Parameters,
        Style::Segments => TableStyle::Segments,
    };
    emit(&render_table(&docs, style)?, cmd.out.as_deref())
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Fit(c) => run_fit(c),
        Command::Compare(c) => run_compare(c),
        Command::Diagnose(c) => run_diagnose(c),
        Command::Simulate(SimulateCmd::Recovery(c)) => run_recovery(c),
        Command::Simulate(SimulateCmd::Mixture(c)) => run_mixture(c),
        Command::Report(c) => run_report(c),
    }
}

/// Parses arguments, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            return 2;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            let (category, code) = classify(&e);
            eprintln!("error[{category}]: {}", e.to_string().replace('\n', " "));
            code
        }
    }
}
