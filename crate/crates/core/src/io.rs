//! Series files, run configuration and experiment design files.
//!
//! A series file is CSV with optional `# key = value` header lines and one
//! object per row:
//!
//! ```text
//! # kind = wasserstein
//! # grid = 100
//! # format = samples
//! 0.31,1.2,-0.4,...
//! ```
//!
//! Header keys: `kind` (`scalar`, `function`, `wasserstein`, `frobenius`,
//! `log-euclidean`, `laplacian`), `grid`, `dim`, `floor`, `format`
//! (`values` or `samples`; samples are raw draws turned into empirical
//! quantiles) and `probs` (probabilities at which quantile rows are
//! tabulated; rows are linearly interpolated onto the midpoint grid).

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::changepoint::{CpVariant, WbsConfig};
use crate::dgp::{Dgp, DgpSpec, MultiCpModel, MultiCpSpec, DEFAULT_BURN_IN};
use crate::error::{Error, Result};
use crate::experiment::Design;
use crate::null_dist::{DEFAULT_NULL_GRID, DEFAULT_NULL_REPS};
use crate::prefix::ObjectSeries;
use crate::rng::DEFAULT_SEED;
use crate::space::{midpoint_grid, MetricObject, Space, DEFAULT_GRID, DEFAULT_SPD_FLOOR};
use crate::two_sample::TestVariant;

/// Asymmetry above this is an error; below it matrices are symmetrized.
pub const SYMMETRY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    Scalar,
    Function,
    Wasserstein,
    Frobenius,
    LogEuclidean,
    Laplacian,
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "scalar" => SpaceKind::Scalar,
            "function" | "l2" | "l2-function" => SpaceKind::Function,
            "wasserstein" | "distribution" | "quantile" => SpaceKind::Wasserstein,
            "frobenius" | "matrix" => SpaceKind::Frobenius,
            "log-euclidean" | "spd" | "covariance" => SpaceKind::LogEuclidean,
            "laplacian" | "graph-laplacian" => SpaceKind::Laplacian,
            other => return Err(Error::InvalidParameter(format!("unknown space kind '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordFormat {
    Values,
    Samples,
}

impl std::str::FromStr for RecordFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "values" | "quantiles" => Ok(RecordFormat::Values),
            "samples" | "raw" => Ok(RecordFormat::Samples),
            other => Err(Error::InvalidParameter(format!("unknown record format '{other}'"))),
        }
    }
}

/// Format settings; anything set here takes precedence over the file header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FormatHints {
    pub kind: Option<SpaceKind>,
    pub grid: Option<usize>,
    pub dim: Option<usize>,
    pub floor: Option<f64>,
    pub format: Option<RecordFormat>,
    pub probs: Option<Vec<f64>>,
}

impl FormatHints {
    fn or(self, other: FormatHints) -> FormatHints {
        FormatHints {
            kind: self.kind.or(other.kind),
            grid: self.grid.or(other.grid),
            dim: self.dim.or(other.dim),
            floor: self.floor.or(other.floor),
            format: self.format.or(other.format),
            probs: self.probs.or(other.probs),
        }
    }
}

fn parse_header(lines: &[(usize, &str)], err: &dyn Fn(String) -> Error) -> Result<FormatHints> {
    let mut h = FormatHints::default();
    for &(line, text) in lines {
        let body = text.trim_start_matches('#').trim();
        let Some((key, value)) = body.split_once('=').or_else(|| body.split_once(':')) else {
            continue;
        };
        let (key, value) = (key.trim().to_ascii_lowercase(), value.trim());
        let bad = |what: &str| err(format!("line {line}: invalid {what} '{value}'"));
        match key.as_str() {
            "kind" => h.kind = Some(value.parse().map_err(|_| bad("kind"))?),
            "grid" | "m" => h.grid = Some(value.parse().map_err(|_| bad("grid"))?),
            "dim" | "p" => h.dim = Some(value.parse().map_err(|_| bad("dim"))?),
            "floor" => h.floor = Some(value.parse().map_err(|_| bad("floor"))?),
            "format" => h.format = Some(value.parse().map_err(|_| bad("format"))?),
            "probs" => {
                let probs = value
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("probs"))?;
                h.probs = Some(probs);
            }
            _ => {}
        }
    }
    Ok(h)
}

/// Linear interpolation of a nondecreasing quantile row tabulated at `probs`
/// onto the midpoint grid; outside the tabulated range the end segments are
/// extended linearly.
pub fn interpolate_quantiles(probs: &[f64], values: &[f64], grid: usize) -> Result<Vec<f64>> {
    if probs.len() != values.len() || probs.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "{} probabilities for {} values (need at least 2)",
            probs.len(),
            values.len()
        )));
    }
    if probs.windows(2).any(|w| w[0] >= w[1]) || probs[0] < 0.0 || probs[probs.len() - 1] > 1.0 {
        return Err(Error::InvalidParameter(
            "probabilities must increase strictly within [0, 1]".into(),
        ));
    }
    Ok(midpoint_grid(grid)
        .into_iter()
        .map(|p| {
            let i = probs.partition_point(|&q| q <= p).clamp(1, probs.len() - 1);
            let (q0, q1, v0, v1) = (probs[i - 1], probs[i], values[i - 1], values[i]);
            v0 + (p - q0) / (q1 - q0) * (v1 - v0)
        })
        .collect())
}

fn is_square(len: usize) -> Option<usize> {
    let p = (len as f64).sqrt().round() as usize;
    (p * p == len).then_some(p)
}

fn build_object(h: &FormatHints, row: &[f64], grid_default: usize) -> Result<MetricObject> {
    let kind = h.kind.expect("kind resolved before rows");
    match kind {
        SpaceKind::Scalar => {
            if row.len() != 1 {
                return Err(Error::InvalidObject(format!("expected 1 value, found {}", row.len())));
            }
            MetricObject::scalar(row[0])
        }
        SpaceKind::Function | SpaceKind::Wasserstein => {
            let samples = h.format == Some(RecordFormat::Samples);
            if samples && kind == SpaceKind::Function {
                return Err(Error::InvalidObject(
                    "raw samples are only meaningful for distributions".into(),
                ));
            }
            let grid = h.grid.unwrap_or(if samples || h.probs.is_some() {
                grid_default
            } else {
                row.len()
            });
            let values = if samples {
                return MetricObject::from_samples(row, grid);
            } else if let Some(probs) = &h.probs {
                interpolate_quantiles(probs, row, grid)?
            } else {
                if row.len() != grid {
                    return Err(Error::InvalidObject(format!(
                        "expected {grid} values, found {}",
                        row.len()
                    )));
                }
                row.to_vec()
            };
            let space = if kind == SpaceKind::Function {
                Space::L2Function { grid }
            } else {
                Space::Wasserstein1D { grid }
            };
            MetricObject::new(space, values)
        }
        SpaceKind::Frobenius | SpaceKind::LogEuclidean | SpaceKind::Laplacian => {
            let dim = match h.dim {
                Some(d) => d,
                None => is_square(row.len()).ok_or_else(|| {
                    Error::InvalidObject(format!("{} entries do not form a square matrix", row.len()))
                })?,
            };
            if row.len() != dim * dim {
                return Err(Error::InvalidObject(format!(
                    "expected {} entries, found {}",
                    dim * dim,
                    row.len()
                )));
            }
            let mut m = row.to_vec();
            let scale = m.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let (a, b) = (m[i * dim + j], m[j * dim + i]);
                    if (a - b).abs() > SYMMETRY_TOL * scale {
                        return Err(Error::InvalidObject(format!(
                            "matrix is not symmetric at ({i}, {j}): {a} vs {b}"
                        )));
                    }
                    let avg = 0.5 * (a + b);
                    m[i * dim + j] = avg;
                    m[j * dim + i] = avg;
                }
            }
            let space = match kind {
                SpaceKind::Frobenius => Space::Frobenius { dim },
                SpaceKind::Laplacian => Space::GraphLaplacian { dim },
                _ => Space::LogEuclidean {
                    dim,
                    floor: h.floor.unwrap_or(DEFAULT_SPD_FLOOR),
                },
            };
            MetricObject::new(space, m).map_err(|e| match (kind, e) {
                (SpaceKind::LogEuclidean, Error::InvalidObject(msg)) if msg.contains("SPD floor") => Error::InvalidObject(
                    format!("{msg}; the log-Euclidean metric needs positive definite matrices (add a small ridge to the diagonal)"),
                ),
                (_, e) => e,
            })
        }
    }
}

/// Parses series text; `origin` names the source in error messages.
pub fn parse_series_str(text: &str, hints: &FormatHints, origin: &Path) -> Result<ObjectSeries> {
    let err = |message: String| Error::Parse {
        path: origin.to_path_buf(),
        message,
    };
    let header: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l))
        .collect();
    let h = hints.clone().or(parse_header(&header, &err)?);
    let kind = h
        .kind
        .ok_or_else(|| err("no space kind given (header '# kind = ...' or a flag)".into()))?;
    let h = FormatHints { kind: Some(kind), ..h };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut objects = Vec::new();
    let mut width = None;
    for record in reader.records() {
        let record = record.map_err(|e| err(format!("malformed CSV: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        let row: Vec<f64> = record
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| err(format!("line {line}: '{f}' is not a number")))
            })
            .collect::<Result<_>>()?;
        if row.is_empty() {
            continue;
        }
        if h.format != Some(RecordFormat::Samples) {
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(err(format!(
                        "line {line}: {} values, previous rows have {w}",
                        row.len()
                    )))
                }
                _ => {}
            }
        }
        let obj = build_object(&h, &row, DEFAULT_GRID).map_err(|e| err(format!("line {line}: {e}")))?;
        objects.push(obj);
    }
    ObjectSeries::new(objects).map_err(|e| err(e.to_string()))
}

pub fn parse_series(path: &Path, hints: &FormatHints) -> Result<ObjectSeries> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_series_str(&text, hints, path)
}

/// Writes a series with a header that [`parse_series`] reads back exactly.
pub fn write_series<W: Write>(series: &ObjectSeries, mut out: W) -> Result<()> {
    let mut header = String::new();
    match *series.space() {
        Space::Scalar => writeln!(header, "# kind = scalar"),
        Space::L2Function { grid } => writeln!(header, "# kind = function\n# grid = {grid}"),
        Space::Wasserstein1D { grid } => writeln!(header, "# kind = wasserstein\n# grid = {grid}"),
        Space::Frobenius { dim } => writeln!(header, "# kind = frobenius\n# dim = {dim}"),
        Space::GraphLaplacian { dim } => writeln!(header, "# kind = laplacian\n# dim = {dim}"),
        Space::LogEuclidean { dim, floor } => {
            writeln!(header, "# kind = log-euclidean\n# dim = {dim}\n# floor = {floor:e}")
        }
    }
    .expect("writing to a String");
    out.write_all(header.as_bytes())?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for o in series.objects() {
        w.write_record(o.values().iter().map(|v| format!("{v:?}")))
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes columns with a header row as CSV.
pub fn write_columns<W: Write>(out: W, names: &[&str], columns: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(names).map_err(csv_err)?;
    let rows = columns.first().map_or(0, Vec::len);
    for i in 0..rows {
        w.write_record(columns.iter().map(|c| c[i].as_str())).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn default_eta() -> f64 {
    0.15
}
fn default_eta2() -> f64 {
    0.05
}
fn default_alpha() -> f64 {
    0.05
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_null_grid() -> usize {
    DEFAULT_NULL_GRID
}
fn default_null_reps() -> usize {
    DEFAULT_NULL_REPS
}

/// Settings shared by all commands, as read from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default = "default_eta")]
    pub eta1: f64,
    #[serde(default = "default_eta2")]
    pub eta2: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_variant")]
    pub variant: TestVariant,
    #[serde(default = "default_cp_variant")]
    pub cp_variant: CpVariant,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_null_grid")]
    pub null_grid: usize,
    #[serde(default = "default_null_reps")]
    pub null_reps: usize,
    #[serde(default)]
    pub wbs: WbsSection,
}

fn default_variant() -> TestVariant {
    TestVariant::D2
}
fn default_cp_variant() -> CpVariant {
    CpVariant::SN2
}

/// WBS settings; trimming and seed come from the enclosing config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WbsSection {
    pub intervals: usize,
    pub calibration_reps: usize,
    pub min_len: usize,
    pub quantile: f64,
}

impl Default for WbsSection {
    fn default() -> Self {
        let d = WbsConfig::default();
        WbsSection {
            intervals: d.intervals,
            calibration_reps: d.calibration_reps,
            min_len: d.min_len,
            quantile: d.quantile,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn wbs_config(&self) -> WbsConfig {
        WbsConfig {
            intervals: self.wbs.intervals,
            calibration_reps: self.wbs.calibration_reps,
            min_len: self.wbs.min_len,
            eta1: self.eta1,
            eta2: self.eta2,
            quantile: self.wbs.quantile,
            seed: self.seed,
        }
    }
}

/// A scalar or a list of values to sweep over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sweep {
    One(f64),
    Many(Vec<f64>),
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Sweep::One(x) => vec![*x],
            Sweep::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    TwoSample,
    ChangePoint,
    Wbs,
}

/// A Monte Carlo design file. Fields given as lists are swept over and
/// produce one result row per combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub kind: ExperimentKind,
    #[serde(default)]
    pub dgp: Option<Dgp>,
    #[serde(default = "zero_sweep")]
    pub rho: Sweep,
    #[serde(default = "zero_sweep")]
    pub cross: Sweep,
    #[serde(default = "zero_sweep")]
    pub delta1: Sweep,
    #[serde(default = "one_sweep")]
    pub delta2: Sweep,
    #[serde(default)]
    pub n1: Option<usize>,
    #[serde(default)]
    pub n2: Option<usize>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub tau: Option<f64>,
    #[serde(default)]
    pub nodes: Option<usize>,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default = "default_reps")]
    pub replications: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default = "default_eta")]
    pub eta1: f64,
    #[serde(default = "default_eta2")]
    pub eta2: f64,
    /// Multiple change-point model and case.
    #[serde(default)]
    pub model: Option<MultiCpModel>,
    #[serde(default)]
    pub case: Option<u8>,
    #[serde(default)]
    pub wbs: WbsSection,
}

fn zero_sweep() -> Sweep {
    Sweep::One(0.0)
}
fn one_sweep() -> Sweep {
    Sweep::One(1.0)
}
fn default_reps() -> usize {
    500
}

impl ExperimentFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("experiment file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// All designs of a two-sample or change-point file, in sweep order
    /// (rho outermost, then cross, delta1, delta2).
    pub fn designs(&self) -> Result<Vec<Design>> {
        let dgp = self
            .dgp
            .ok_or_else(|| Error::InvalidParameter("experiment needs a 'dgp'".into()))?;
        let mut out = Vec::new();
        for rho in self.rho.values() {
            for cross in self.cross.values() {
                for d1 in self.delta1.values() {
                    for d2 in self.delta2.values() {
                        let base = match self.kind {
                            ExperimentKind::TwoSample => DgpSpec::two_sample(dgp, rho, cross),
                            _ => DgpSpec::change_point(dgp, rho, cross),
                        };
                        let spec = DgpSpec {
                            nodes: self.nodes.unwrap_or(base.nodes),
                            grid: self.grid.unwrap_or(base.grid),
                            burn_in: DEFAULT_BURN_IN,
                            ..base.with_deltas(d1, d2)
                        };
                        spec.validate()?;
                        out.push(match self.kind {
                            ExperimentKind::TwoSample => {
                                let n1 = self.n1.or(self.n).unwrap_or(100);
                                Design::TwoSample {
                                    spec,
                                    n1,
                                    n2: self.n2.unwrap_or(n1),
                                    eta: self.eta,
                                }
                            }
                            ExperimentKind::ChangePoint => Design::ChangePoint {
                                spec,
                                n: self.n.unwrap_or(400),
                                tau: self.tau.unwrap_or(1.0),
                                eta1: self.eta1,
                                eta2: self.eta2,
                            },
                            ExperimentKind::Wbs => {
                                return Err(Error::InvalidParameter(
                                    "WBS experiments have no size/power designs".into(),
                                ))
                            }
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiple change-point specs for a WBS file, one per `rho`.
    pub fn multicp_specs(&self) -> Result<Vec<MultiCpSpec>> {
        let model = self.model.unwrap_or(MultiCpModel::GaussianDist);
        self.rho
            .values()
            .into_iter()
            .map(|rho| {
                let spec = MultiCpSpec::case(model, self.case.unwrap_or(1), rho)?;
                Ok(MultiCpSpec {
                    grid: self.grid.unwrap_or(spec.grid),
                    ..spec
                })
            })
            .collect()
    }

    pub fn wbs_config(&self) -> WbsConfig {
        WbsConfig {
            intervals: self.wbs.intervals,
            calibration_reps: self.wbs.calibration_reps,
            min_len: self.wbs.min_len,
            eta1: self.eta1,
            eta2: self.eta2,
            quantile: self.wbs.quantile,
            seed: self.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ObjectSeries> {
        parse_series_str(text, &FormatHints::default(), Path::new("test.csv"))
    }

    #[test]
    fn quantile_rows() {
        let s = parse("# kind = wasserstein\n0,1,2\n1,1.5,3\n").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.space(), &Space::Wasserstein1D { grid: 3 });
    }

    #[test]
    fn decreasing_quantiles_name_the_line() {
        let e = parse("# kind = wasserstein\n0,1,2\n1,0.5,3\n").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
    }

    #[test]
    fn ragged_rows_are_rejected_unless_samples() {
        assert!(parse("# kind = wasserstein\n0,1,2\n1,2\n").is_err());
        let s = parse("# kind = wasserstein\n# format = samples\n# grid = 4\n3,1,2\n5,4\n").unwrap();
        assert_eq!(s.objects()[0].values(), &[1.25, 1.75, 2.25, 2.75]);
        assert_eq!(s.objects()[1].values(), &[4.125, 4.375, 4.625, 4.875]);
    }

    #[test]
    fn symmetry_tolerance() {
        let ok = parse("# kind = frobenius\n1,0.5,0.5000005,2\n").unwrap();
        assert_eq!(ok.objects()[0].entry(0, 1), ok.objects()[0].entry(1, 0));
        assert!(parse("# kind = frobenius\n1,0.5,0.50001,2\n").is_err());
    }

    #[test]
    fn singular_correlation_matrix_mentions_ridge() {
        let e = parse("# kind = log-euclidean\n1,1,1,1\n").unwrap_err().to_string();
        assert!(e.contains("ridge"), "{e}");
    }

    #[test]
    fn hints_override_header_and_missing_kind_fails() {
        let hints = FormatHints {
            kind: Some(SpaceKind::Function),
            ..FormatHints::default()
        };
        let s = parse_series_str("# kind = wasserstein\n2,1\n", &hints, Path::new("x")).unwrap();
        assert_eq!(s.space(), &Space::L2Function { grid: 2 });
        assert!(parse("1\n2\n").is_err());
    }

    #[test]
    fn probability_grid_interpolation() {
        let v = interpolate_quantiles(&[0.0, 1.0], &[0.0, 2.0], 4).unwrap();
        assert_eq!(v, vec![0.25, 0.75, 1.25, 1.75]);
        let s = parse("# kind = wasserstein\n# grid = 4\n# probs = 0, 0.5, 1\n0,1,3\n").unwrap();
        assert_eq!(s.objects()[0].values(), &[0.25, 0.75, 1.5, 2.5]);
    }

    #[test]
    fn write_then_parse_round_trips() {
        let objs = vec![
            MetricObject::new(Space::log_euclidean(2), vec![2.0, 0.1, 0.1, 1.0 / 3.0]).unwrap(),
            MetricObject::new(Space::log_euclidean(2), vec![1.0, 0.0, 0.0, 1.0]).unwrap(),
        ];
        let s = ObjectSeries::new(objs).unwrap();
        let mut buf = Vec::new();
        write_series(&s, &mut buf).unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn config_defaults_and_overrides() {
        let c = RunConfig::default();
        assert_eq!((c.eta, c.eta1, c.eta2, c.alpha), (0.15, 0.15, 0.05, 0.05));
        assert_eq!(c.wbs.min_len, 20);
        let c = RunConfig::from_toml("eta = 0.1\n[wbs]\nintervals = 7\n").unwrap();
        assert_eq!(c.eta, 0.1);
        assert_eq!(c.wbs_config().intervals, 7);
        assert!(RunConfig::from_toml("etaa = 0.1").is_err());
    }

    #[test]
    fn experiment_sweeps() {
        let f = ExperimentFile::from_toml(
            "kind = 'two-sample'\ndgp = 'gaussian-dist'\nrho = [0.0, 0.4]\ncross = [0.0, 0.5]\nn1 = 50\n",
        )
        .unwrap();
        let d = f.designs().unwrap();
        assert_eq!(d.len(), 4);
        match d[3] {
            Design::TwoSample { spec, n1, n2, .. } => {
                assert_eq!((spec.rho, spec.cross, n1, n2), (0.4, 0.5, 50, 50));
            }
            _ => panic!("wrong design"),
        }
    }
}
