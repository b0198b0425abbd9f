//! Count ingestion, result documents and plain-text tables.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagnostics::SegmentDiagnostics;
use crate::distributions::ModelKind;
use crate::error::{Error, Result};
use crate::fitting::{CitationDataset, FitConfig, FitResult};
use crate::selection::{ComparisonResult, Winner};
use crate::synthesis::{median, MixtureComponent, RecoveryReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// One non-negative count per line.
    OnePerLine,
    /// `label,count` rows, optionally under a header row.
    LabeledTwoColumn,
}

impl Format {
    /// Labeled if any non-blank line has a comma.
    pub fn detect(text: &str) -> Format {
        if text.lines().any(|l| l.contains(',')) {
            Format::LabeledTwoColumn
        } else {
            Format::OnePerLine
        }
    }
}

fn parse_count(field: &str, line: usize) -> Result<u64> {
    let t = field.trim();
    t.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: if t.starts_with('-') {
            format!("negative count `{t}`")
        } else {
            format!("`{t}` is not a non-negative integer count")
        },
    })
}

/// Reads raw (unshifted) datasets. Blank lines are skipped; line numbers in
/// errors are 1-based.
pub fn parse_counts(text: &str, format: Format) -> Result<Vec<CitationDataset>> {
    let rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    match format {
        Format::OnePerLine => {
            let counts = rows.map(|(i, l)| parse_count(l, i)).collect::<Result<Vec<_>>>()?;
            Ok(vec![CitationDataset::new("", counts)?])
        }
        Format::LabeledTwoColumn => {
            let mut groups: Vec<(String, Vec<u64>)> = Vec::new();
            for (k, (i, l)) in rows.enumerate() {
                let (label, count) = l.rsplit_once(',').ok_or_else(|| Error::Parse {
                    line: i,
                    message: "expected `label,count`".into(),
                })?;
                if k == 0 && count.trim().parse::<f64>().is_err() {
                    continue;
                }
                let c = parse_count(count, i)?;
                match groups.iter_mut().find(|(g, _)| g == label) {
                    Some((_, v)) => v.push(c),
                    None => groups.push((label.to_string(), vec![c])),
                }
            }
            if groups.is_empty() {
                return Err(Error::EmptyDataset);
            }
            groups.into_iter().map(|(l, c)| CitationDataset::new(l, c)).collect()
        }
    }
}

/// Writes through a sibling temporary file and renames it into place, so a
/// reader never sees a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::io(path, std::io::ErrorKind::InvalidInput.into()))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub config: FitConfig,
    pub segments: usize,
    pub z_threshold: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    /// Decimal string so that seeds above `i64::MAX` survive the format.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl Provenance {
    pub fn new(config: FitConfig, segments: usize, z_threshold: f64) -> Self {
        Provenance {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            segments,
            z_threshold,
            generator: None,
            seed: None,
            timestamp: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureTruth {
    pub components: Vec<MixtureComponent>,
    pub component_counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Experiment {
    Recovery(RecoveryReport),
    Mixture(MixtureTruth),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct EndMarker {
    complete: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub label: String,
    pub n_articles: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lognormal: Option<FitResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hooked: Option<FitResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<SegmentDiagnostics>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<Experiment>,
    pub provenance: Provenance,
    /// Written last; a document cut short loses it and fails to parse.
    end: EndMarker,
}

impl ResultDocument {
    pub fn new(label: impl Into<String>, n_articles: usize, provenance: Provenance) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION,
            label: label.into(),
            n_articles,
            lognormal: None,
            hooked: None,
            comparison: None,
            diagnostics: Vec::new(),
            experiment: None,
            provenance,
            end: EndMarker { complete: true },
        }
    }

    pub fn fit(&self, kind: ModelKind) -> Option<&FitResult> {
        match kind {
            ModelKind::Lognormal => self.lognormal.as_ref(),
            ModelKind::Hooked => self.hooked.as_ref(),
        }
    }

    pub fn diagnostics_for(&self, kind: ModelKind) -> Option<&SegmentDiagnostics> {
        self.diagnostics.iter().find(|d| d.model == kind)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Document(e.to_string()))?;
        let found = table
            .get("schema_version")
            .and_then(|v| v.as_integer())
            .ok_or_else(|| Error::Document("missing integer `schema_version`".into()))?;
        if found != SCHEMA_VERSION as i64 {
            return Err(Error::SchemaVersion {
                found,
                expected: SCHEMA_VERSION,
            });
        }
        let doc: ResultDocument = toml::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        if !doc.end.complete {
            return Err(Error::Document("document is not marked complete".into()));
        }
        Ok(doc)
    }
}

pub fn write_result(doc: &ResultDocument, path: &Path) -> Result<()> {
    write_atomic(path, doc.to_toml()?.as_bytes())
}

pub fn read_result(path: &Path) -> Result<ResultDocument> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ResultDocument::from_toml(&text).map_err(|e| match e {
        Error::Document(m) => Error::Document(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStyle {
    Parameters,
    Segments,
}

/// Fixed-point formatting without a negative zero.
fn fixed(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn alpha_cell(fit: &FitResult) -> String {
    match fit.hooked() {
        Some(_) if fit.alpha_capped => "10k".to_string(),
        Some(h) => fixed(h.alpha, 1),
        None => "-".into(),
    }
}

fn offset_cell(fit: &FitResult) -> String {
    match fit.hooked() {
        Some(h) if h.offset >= 1e5 => fixed(h.offset, 0),
        Some(h) => fixed(h.offset, 1),
        None => "-".into(),
    }
}

/// Signed whole percent, rounded half away from zero.
pub fn whole_percent(v: f64) -> i64 {
    (v * 100.0).round() as i64
}

fn layout(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i == 0 {
                write!(s, "{c:<w$}").unwrap();
            } else {
                write!(s, "  {c:>w$}").unwrap();
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header);
    for r in rows {
        line(r);
    }
    out
}

fn parameters_table(docs: &[ResultDocument]) -> String {
    let header: Vec<String> = ["Journal", "Art.", "Ln μ", "Ln σ", "Ln LL", "Hk α", "Hk B", "Hk LL", "Vuong", "Best"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let dash = || "-".to_string();
    let rows: Vec<Vec<String>> = docs
        .iter()
        .map(|d| {
            let ln = d.lognormal.as_ref();
            let hk = d.hooked.as_ref();
            let cmp = d.comparison.as_ref();
            vec![
                d.label.clone(),
                d.n_articles.to_string(),
                ln.and_then(|f| f.lognormal()).map_or_else(dash, |p| fixed(p.mu, 2)),
                ln.and_then(|f| f.lognormal()).map_or_else(dash, |p| fixed(p.sigma, 2)),
                ln.map_or_else(dash, |f| fixed(f.log_likelihood, 1)),
                hk.map_or_else(dash, alpha_cell),
                hk.map_or_else(dash, offset_cell),
                hk.map_or_else(dash, |f| fixed(f.log_likelihood, 1)),
                cmp.and_then(|c| c.vuong_z).map_or_else(dash, |z| fixed(z, 2)),
                cmp.map_or_else(dash, |c| c.winner.label().to_string()),
            ]
        })
        .collect();
    layout(&header, &rows)
}

fn segments_table(docs: &[ResultDocument]) -> String {
    let k = docs
        .iter()
        .flat_map(|d| d.diagnostics.iter().map(|s| s.signed_max_diff.len()))
        .max()
        .unwrap_or(0);
    let kinds = [(ModelKind::Lognormal, "Ln"), (ModelKind::Hooked, "hk")];
    let mut header = vec!["Journal".to_string()];
    for (_, tag) in kinds {
        for j in 1..=k {
            header.push(format!("S{j} {tag}"));
        }
    }

    // full-precision values per column, for sign counts
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); 2 * k];
    let mut rows = Vec::with_capacity(docs.len() + 7);
    for d in docs {
        let mut row = vec![d.label.clone()];
        for (m, (kind, _)) in kinds.iter().enumerate() {
            let diag = d.diagnostics_for(*kind);
            for j in 0..k {
                match diag.and_then(|g| g.signed_max_diff.get(j)) {
                    Some(&v) => {
                        columns[m * k + j].push(v);
                        row.push(format!("{}%", whole_percent(v)));
                    }
                    None => row.push("-".into()),
                }
            }
        }
        rows.push(row);
    }

    // mean and median come from the rendered whole percents; sign counts
    // from full precision, so a rendered 0% still lands on one side
    let rendered = |c: &[f64]| c.iter().map(|&v| whole_percent(v) as f64).collect::<Vec<_>>();
    let pct = |v: f64| if v.is_finite() { format!("{}%", fixed(v, 1)) } else { "-".into() };
    let count = |c: &[f64], keep: fn(f64) -> bool| c.iter().filter(|&&v| keep(v)).count().to_string();
    let summaries: [&str; 7] = ["Mean", "Median", "Total >0", "Total <0", "Total >1%", "Total <-1%", "Total within ±1%"];
    for name in summaries {
        let mut row = vec![name.to_string()];
        for c in &columns {
            row.push(match name {
                "Mean" if c.is_empty() => "-".into(),
                "Mean" => pct(rendered(c).iter().sum::<f64>() / c.len() as f64),
                "Median" => pct(median(&rendered(c))),
                "Total >0" => count(c, |v| v > 0.0),
                "Total <0" => count(c, |v| v < 0.0),
                "Total >1%" => count(c, |v| v > 0.01),
                "Total <-1%" => count(c, |v| v < -0.01),
                _ => count(c, |v| v.abs() <= 0.01),
            });
        }
        rows.push(row);
    }
    layout(&header, &rows)
}

/// Plain-text table over stored results, in input order.
pub fn render_table(docs: &[ResultDocument], style: TableStyle) -> Result<String> {
    if docs.is_empty() {
        return Err(Error::domain("nothing to render"));
    }
    Ok(match style {
        TableStyle::Parameters => parameters_table(docs),
        TableStyle::Segments => segments_table(docs),
    })
}

/// The winner column of a rendered parameters row.
pub fn row_winner(row: &str) -> Option<Winner> {
    row.split_whitespace().last().and_then(Winner::from_label)
}
