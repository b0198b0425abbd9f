//! Empirical CDFs, log-spaced segment diagnostics and CDF plots.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::data_io::write_atomic;
use crate::distributions::{Model, ModelKind, ModelParams};
use crate::error::{Error, Result};
use crate::fitting::CitationDataset;

pub const DEFAULT_SEGMENTS: usize = 4;

/// Right-continuous step function `F(x) = #{counts ≤ x} / n` on `x = 1..=max`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    cum: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn max(&self) -> u64 {
        self.cum.len() as u64
    }

    pub fn at(&self, x: u64) -> f64 {
        match x {
            0 => 0.0,
            x if x > self.max() => 1.0,
            x => self.cum[(x - 1) as usize],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.cum
    }
}

pub fn empirical_cdf(ds: &CitationDataset) -> Result<EmpiricalCdf> {
    ds.require_shifted()?;
    let max = ds.max_count() as usize;
    let mut freq = vec![0u64; max];
    for &c in &ds.counts {
        freq[(c - 1) as usize] += 1;
    }
    let n = ds.len() as f64;
    let mut seen = 0u64;
    let cum = freq
        .into_iter()
        .map(|f| {
            seen += f;
            seen as f64 / n
        })
        .collect();
    Ok(EmpiricalCdf { cum })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentSpec {
    pub index: usize,
    pub start: u64,
    pub end: u64,
    pub empty: bool,
}

impl SegmentSpec {
    pub fn contains(&self, x: u64) -> bool {
        !self.empty && (self.start..=self.end).contains(&x)
    }
}

/// Snaps values within 1e-9 of an integer onto it before rounding, so that
/// `exp(ln 8) = 7.999...` still counts as 8.
fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r
    } else {
        x
    }
}

/// `k` log-spaced inclusive segments over shifted counts `1..=1 + n_max`.
///
/// Segment `j` spans `[ceil(e^{L_{j-1}}), floor(e^{L_j})]` with
/// `L_j = j ln(1 + n_max) / k`. The first start is pinned to 1 and the last end
/// to `1 + n_max`. When a breakpoint is itself an integer, the next segment
/// starts one past it so no point belongs to two segments.
pub fn make_segments(n_max: u64, k: usize) -> Result<Vec<SegmentSpec>> {
    if k == 0 {
        return Err(Error::domain("segment count must be at least 1"));
    }
    let top = 1 + n_max;
    let width = (top as f64).ln() / k as f64;
    let mut out = Vec::with_capacity(k);
    let mut next_free = 1u64;
    for j in 1..=k {
        let mut start = if j == 1 {
            1
        } else {
            snap((width * (j - 1) as f64).exp()).ceil() as u64
        };
        let end = if j == k {
            top
        } else {
            (snap((width * j as f64).exp()).floor() as u64).min(top)
        };
        start = start.max(next_free);
        let empty = start > end;
        if !empty {
            next_free = end + 1;
        }
        out.push(SegmentSpec { index: j, start, end, empty });
    }
    Ok(out)
}

/// Segments over a shifted dataset's range.
pub fn segments_for(ds: &CitationDataset, k: usize) -> Result<Vec<SegmentSpec>> {
    ds.require_shifted()?;
    make_segments(ds.max_count() - 1, k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDiagnostics {
    pub model: ModelKind,
    pub segments: Vec<SegmentSpec>,
    /// Empirical minus model CDF at the point of largest magnitude; positive
    /// where the model underestimates cumulative mass.
    pub signed_max_diff: Vec<f64>,
}

/// `F(1), ..., F(upto)`, padded with 1 past a bounded support.
fn model_cdf_upto(model: &Model, upto: u64) -> Result<Vec<f64>> {
    let mut t = model.cdf_table(upto)?;
    t.resize(upto as usize, 1.0);
    Ok(t)
}

pub fn segment_differences(
    ds: &CitationDataset,
    params: &ModelParams,
    segments: &[SegmentSpec],
) -> Result<SegmentDiagnostics> {
    let emp = empirical_cdf(ds)?;
    let model = Model::new(*params)?;
    let upto = segments.iter().filter(|s| !s.empty).map(|s| s.end).max().unwrap_or(0);
    let table = if upto > 0 { model_cdf_upto(&model, upto)? } else { Vec::new() };
    let signed_max_diff = segments
        .iter()
        .map(|s| {
            if s.empty {
                return 0.0;
            }
            let mut best = 0.0f64;
            for x in s.start..=s.end {
                let d = emp.at(x) - table[(x - 1) as usize];
                if d.abs() > best.abs() {
                    best = d;
                }
            }
            best
        })
        .collect();
    Ok(SegmentDiagnostics {
        model: params.kind(),
        segments: segments.to_vec(),
        signed_max_diff,
    })
}

/// A rendered CDF chart and the table of plotted points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotDocument {
    pub svg: String,
    pub csv: String,
}

impl PlotDocument {
    /// Sidecar path: the plot path with a `.csv` extension.
    pub fn sidecar_path(svg_path: &Path) -> PathBuf {
        svg_path.with_extension("csv")
    }

    pub fn write(&self, svg_path: &Path) -> Result<()> {
        write_atomic(svg_path, self.svg.as_bytes())?;
        write_atomic(&Self::sidecar_path(svg_path), self.csv.as_bytes())
    }
}

const DENSE_LIMIT: u64 = 2000;
const SPARSE_POINTS: usize = 1000;

/// Plotted x positions: every integer for small ranges, otherwise the first
/// hundred integers and a log-spaced thinning of the rest.
fn plot_points(max: u64) -> Vec<u64> {
    if max <= DENSE_LIMIT {
        return (1..=max).collect();
    }
    let mut xs: Vec<u64> = (1..=100).collect();
    let (lo, hi) = (100f64.ln(), (max as f64).ln());
    for i in 1..=SPARSE_POINTS {
        let x = (lo + (hi - lo) * i as f64 / SPARSE_POINTS as f64).exp().round() as u64;
        if x > *xs.last().unwrap() {
            xs.push(x.min(max));
        }
    }
    if *xs.last().unwrap() != max {
        xs.push(max);
    }
    xs
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLOURS: [&str; 6] = ["#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/// CDF chart of the data and each model on a logarithmic x axis.
pub fn plot_series(ds: &CitationDataset, models: &[ModelParams]) -> Result<PlotDocument> {
    if models.is_empty() {
        return Err(Error::domain("a plot needs at least one model"));
    }
    let emp = empirical_cdf(ds)?;
    let max = emp.max();
    let xs = plot_points(max);
    let mut curves: Vec<(String, Vec<f64>)> = vec![(
        "empirical".to_string(),
        xs.iter().map(|&x| emp.at(x)).collect(),
    )];
    for p in models {
        let table = model_cdf_upto(&Model::new(*p)?, max)?;
        curves.push((p.kind().name().to_string(), xs.iter().map(|&x| table[(x - 1) as usize]).collect()));
    }

    let mut csv = String::from("x");
    for (name, _) in &curves {
        csv.push(',');
        csv.push_str(name);
    }
    csv.push('\n');
    for (i, x) in xs.iter().enumerate() {
        write!(csv, "{x}").unwrap();
        for (_, ys) in &curves {
            write!(csv, ",{}", ys[i]).unwrap();
        }
        csv.push('\n');
    }

    Ok(PlotDocument {
        svg: render_svg(&ds.label, &xs, &curves),
        csv,
    })
}

fn render_svg(title: &str, xs: &[u64], curves: &[(String, Vec<f64>)]) -> String {
    let x_hi = (*xs.last().unwrap() as f64).ln().max(2f64.ln());
    let px = |x: u64| MARGIN + (x as f64).ln() / x_hi * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - y * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        xml_escape(title)
    )
    .unwrap();

    // axes
    writeln!(
        s,
        r#"<path d="M{m},{t} V{b} H{r}" fill="none" stroke="black"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    )
    .unwrap();
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let y = py(tick);
        writeln!(
            s,
            r#"<line x1="{a:.2}" y1="{y:.2}" x2="{MARGIN}" y2="{y:.2}" stroke="black"/><text x="{tx:.2}" y="{ty:.2}" text-anchor="end">{tick}</text>"#,
            a = MARGIN - 5.0,
            tx = MARGIN - 8.0,
            ty = y + 4.0
        )
        .unwrap();
    }
    let mut decade = 1u64;
    let last = *xs.last().unwrap();
    while decade <= last {
        let x = px(decade);
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{b}" x2="{x:.2}" y2="{bb}" stroke="black"/><text x="{x:.2}" y="{ty}" text-anchor="middle">{decade}</text>"#,
            b = HEIGHT - MARGIN,
            bb = HEIGHT - MARGIN + 5.0,
            ty = HEIGHT - MARGIN + 18.0
        )
        .unwrap();
        decade = decade.saturating_mul(10);
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">citations + 1</text>"#,
        WIDTH / 2.0,
        HEIGHT - 20.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">cumulative probability</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    )
    .unwrap();

    for (i, (name, ys)) in curves.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let mut d = String::new();
        for (j, (&x, &y)) in xs.iter().zip(ys).enumerate() {
            // empirical data is a step function; models are drawn point to point
            if i == 0 && j > 0 {
                write!(d, " H{:.2}", px(x)).unwrap();
                write!(d, " V{:.2}", py(y)).unwrap();
            } else {
                write!(d, "{}{:.2},{:.2}", if j == 0 { "M" } else { " L" }, px(x), py(y)).unwrap();
            }
        }
        let dash = if i == 0 { "" } else { r#" stroke-dasharray="6 3""# };
        writeln!(s, r#"<path d="{d}" fill="none" stroke="{colour}" stroke-width="1.5"{dash}/>"#).unwrap();
        let ly = MARGIN + 16.0 * i as f64 + 10.0;
        let lx = WIDTH - MARGIN - 140.0;
        writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{x2}" y2="{ly}" stroke="{colour}" stroke-width="1.5"{dash}/><text x="{tx}" y="{ty}">{}</text>"#,
            xml_escape(name),
            x2 = lx + 24.0,
            tx = lx + 30.0,
            ty = ly + 4.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
