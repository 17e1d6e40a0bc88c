//! Simulated limiting null distributions of the self-normalized statistics.
//!
//! Brownian motion on `[0, 1]` is approximated by the standardized partial
//! sums `B(j/G) = G^{-1/2} sum_{t<=j} Z_t` of iid standard normals, and
//! integrals by left Riemann sums on the same grid:
//!
//! ```text
//! D_eta = B(1)^2 / int_eta^1 (B(r) - r B(1))^2 dr
//! S_eta = sup_{r in [eta1, 1-eta1]} (B(r) - r B(1))^2 / V(r)
//! V(r)  = int_{eta2}^{r-eta2} (B(u) - (u/r) B(r))^2 du
//!       + int_{r+eta2}^{1-eta2} (C(u) - ((1-u)/(1-r)) C(r))^2 du,   C = B(1) - B
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{par_map, rng_for};

pub const DEFAULT_NULL_GRID: usize = 5000;
pub const DEFAULT_NULL_REPS: usize = 10_000;
/// Environment variable naming the null cache directory.
pub const CACHE_ENV: &str = "FRECHET_SN_CACHE";

const CACHE_FORMAT: &str = "frechet-sn-null";
const CACHE_VERSION: u32 = 1;
const MIN_NORMALIZER: f64 = 1e-300;
const MAX_REDRAWS: u64 = 1000;

/// `floor(n * x)` robust to `x` being a rounded ratio of integers.
pub(crate) fn floor_frac(n: usize, x: f64) -> usize {
    (n as f64 * x + 1e-9).floor().max(0.0) as usize
}

/// Which limiting functional a draw set approximates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum NullFamily {
    /// The two-sample limit, trimmed at `eta`.
    Deta { eta: f64 },
    /// The change-point limit with trimming `eta1` on the split and `eta2`
    /// inside the self-normalizer.
    Seta { eta1: f64, eta2: f64 },
}

impl NullFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NullFamily::Deta { eta } => {
                if !(eta > 0.0 && eta < 1.0) {
                    return Err(Error::InvalidParameter(format!("eta = {eta} must lie in (0, 1)")));
                }
            }
            NullFamily::Seta { eta1, eta2 } => {
                if !(eta1 > 0.0 && eta1 < 0.5) {
                    return Err(Error::InvalidParameter(format!("eta1 = {eta1} must lie in (0, 1/2)")));
                }
                if !(eta2 > 0.0 && eta2 < 0.5) {
                    return Err(Error::InvalidParameter(format!("eta2 = {eta2} must lie in (0, 1/2)")));
                }
            }
        }
        Ok(())
    }

    fn file_stem(&self) -> String {
        match *self {
            NullFamily::Deta { eta } => format!("deta_eta{eta}"),
            NullFamily::Seta { eta1, eta2 } => format!("seta_eta1-{eta1}_eta2-{eta2}"),
        }
    }
}

/// Metadata identifying a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NullProvenance {
    #[serde(flatten)]
    pub family: NullFamily,
    pub grid: usize,
    pub replications: usize,
    pub seed: u64,
    /// Draws rejected because the self-normalizer vanished.
    pub redraws: u64,
}

/// Sorted simulated draws of a limiting functional.
#[derive(Debug, Clone, PartialEq)]
pub struct NullSampleSet {
    meta: NullProvenance,
    draws: Vec<f64>,
}

/// One row per significance level: `(alpha, 1 - alpha quantile)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueTable {
    #[serde(flatten)]
    pub family: NullFamily,
    pub rows: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    #[serde(flatten)]
    meta: NullProvenance,
    draws: Vec<f64>,
}

/// `B(j/G)`, `j = 0..=G`, from increments `z`.
pub fn brownian_path_from_increments(z: &[f64]) -> Vec<f64> {
    let scale = 1.0 / (z.len() as f64).sqrt();
    let mut path = Vec::with_capacity(z.len() + 1);
    path.push(0.0);
    let mut acc = 0.0;
    for x in z {
        acc += x;
        path.push(acc * scale);
    }
    path
}

pub fn simulate_brownian_path<R: Rng + ?Sized>(grid: usize, rng: &mut R) -> Vec<f64> {
    let z: Vec<f64> = (0..grid).map(|_| rng.sample(StandardNormal)).collect();
    brownian_path_from_increments(&z)
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den.is_finite() && den > MIN_NORMALIZER).then(|| num / den)
}

/// The two-sample functional on a path `B(0), ..., B(G)`; `None` when the
/// normalizing integral vanishes.
pub fn deta_functional(path: &[f64], eta: f64) -> Option<f64> {
    let g = path.len() - 1;
    let gf = g as f64;
    let b1 = path[g];
    let den: f64 = (floor_frac(g, eta)..=g)
        .map(|j| {
            let d = path[j] - (j as f64 / gf) * b1;
            d * d
        })
        .sum();
    ratio(b1 * b1, den / gf)
}

/// Split range `[floor(G eta1), G - floor(G eta1)]` and inner trim `floor(G eta2)`,
/// checking that every split has a nonempty normalizer.
fn seta_ranges(g: usize, eta1: f64, eta2: f64) -> Result<(usize, usize, usize)> {
    let lo = floor_frac(g, eta1);
    let hi = g.saturating_sub(lo);
    let h = floor_frac(g, eta2);
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty split range for eta1 = {eta1}")));
    }
    if (lo..=hi).any(|k| k < 2 * h && k + 2 * h > g) {
        return Err(Error::InvalidParameter(format!(
            "eta2 = {eta2} leaves an empty self-normalizer for some split"
        )));
    }
    Ok((lo, hi, h))
}

/// Prefix sums for `O(1)` evaluation of the change-point self-normalizer.
struct SetaSums {
    g: usize,
    b1: f64,
    // Left half: sums of B_j^2, j B_j, j^2.
    lb2: Vec<f64>,
    ljb: Vec<f64>,
    lj2: Vec<f64>,
    // Right half with C_j = B(1) - B_j and v = G - j: C^2, v C, v^2.
    rc2: Vec<f64>,
    rvc: Vec<f64>,
    rv2: Vec<f64>,
}

impl SetaSums {
    fn new(path: &[f64]) -> Self {
        let g = path.len() - 1;
        let b1 = path[g];
        let mut s = SetaSums {
            g,
            b1,
            lb2: vec![0.0; g + 2],
            ljb: vec![0.0; g + 2],
            lj2: vec![0.0; g + 2],
            rc2: vec![0.0; g + 2],
            rvc: vec![0.0; g + 2],
            rv2: vec![0.0; g + 2],
        };
        for (j, &b) in path.iter().enumerate() {
            let (jf, c, v) = (j as f64, b1 - b, (g - j) as f64);
            s.lb2[j + 1] = s.lb2[j] + b * b;
            s.ljb[j + 1] = s.ljb[j] + jf * b;
            s.lj2[j + 1] = s.lj2[j] + jf * jf;
            s.rc2[j + 1] = s.rc2[j] + c * c;
            s.rvc[j + 1] = s.rvc[j] + v * c;
            s.rv2[j + 1] = s.rv2[j] + v * v;
        }
        s
    }

    fn range(p: &[f64], lo: usize, hi: usize) -> f64 {
        p[hi + 1] - p[lo]
    }

    /// `(G * num, G * V)` at split `k`; the common factor cancels in the ratio.
    fn parts(&self, path: &[f64], k: usize, h: usize) -> (f64, f64) {
        let g = self.g;
        let d = path[k] - (k as f64 / g as f64) * self.b1;
        let mut v = 0.0;
        if k >= 2 * h {
            let (lo, hi) = (h, k - h);
            let c = path[k] / k as f64;
            v += Self::range(&self.lb2, lo, hi) - 2.0 * c * Self::range(&self.ljb, lo, hi)
                + c * c * Self::range(&self.lj2, lo, hi);
        }
        if k + 2 * h <= g {
            let (lo, hi) = (k + h, g - h);
            let c = (self.b1 - path[k]) / (g - k) as f64;
            v += Self::range(&self.rc2, lo, hi) - 2.0 * c * Self::range(&self.rvc, lo, hi)
                + c * c * Self::range(&self.rv2, lo, hi);
        }
        (g as f64 * d * d, v.max(0.0))
    }
}

/// The change-point ratio at the single split `k` of a path.
pub fn seta_ratio(path: &[f64], k: usize, eta2: f64) -> Option<f64> {
    let g = path.len() - 1;
    let h = floor_frac(g, eta2);
    let (num, den) = SetaSums::new(path).parts(path, k, h);
    ratio(num, den)
}

/// The change-point functional on a path; `None` when some split has a
/// vanishing normalizer.
pub fn seta_functional(path: &[f64], eta1: f64, eta2: f64) -> Result<Option<f64>> {
    let g = path.len() - 1;
    let (lo, hi, h) = seta_ranges(g, eta1, eta2)?;
    let sums = SetaSums::new(path);
    let mut best = f64::NEG_INFINITY;
    for k in lo..=hi {
        let (num, den) = sums.parts(path, k, h);
        match ratio(num, den) {
            Some(x) => best = best.max(x),
            None => return Ok(None),
        }
    }
    Ok(Some(best))
}

impl NullSampleSet {
    /// Simulates `replications` draws; replication `r` uses stream `r` of `seed`.
    pub fn simulate(family: NullFamily, grid: usize, replications: usize, seed: u64) -> Result<Self> {
        family.validate()?;
        if grid < 100 {
            return Err(Error::InvalidParameter(format!("null grid {grid} < 100")));
        }
        if replications == 0 {
            return Err(Error::InvalidParameter("zero replications".into()));
        }
        if let NullFamily::Seta { eta1, eta2 } = family {
            seta_ranges(grid, eta1, eta2)?;
        }
        let results = par_map(replications, |r| {
            let mut rng = rng_for(seed, r as u64);
            let mut redraws = 0u64;
            loop {
                let path = simulate_brownian_path(grid, &mut rng);
                let value = match family {
                    NullFamily::Deta { eta } => deta_functional(&path, eta),
                    NullFamily::Seta { eta1, eta2 } => seta_functional(&path, eta1, eta2)?,
                };
                match value {
                    Some(v) => return Ok((v, redraws)),
                    None if redraws >= MAX_REDRAWS => {
                        return Err(Error::Numerical(format!(
                            "replication {r}: normalizer vanished {MAX_REDRAWS} times"
                        )))
                    }
                    None => redraws += 1,
                }
            }
        });
        let mut draws = Vec::with_capacity(replications);
        let mut redraws = 0;
        for res in results {
            let (v, k) = res?;
            draws.push(v);
            redraws += k;
        }
        draws.sort_by(f64::total_cmp);
        Ok(NullSampleSet {
            meta: NullProvenance {
                family,
                grid,
                replications,
                seed,
                redraws,
            },
            draws,
        })
    }

    /// Builds a set from externally produced draws (sorted here).
    pub fn from_draws(meta: NullProvenance, mut draws: Vec<f64>) -> Result<Self> {
        if draws.len() != meta.replications || draws.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{} draws for {} replications",
                draws.len(),
                meta.replications
            )));
        }
        if draws.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidParameter("draws must be finite and nonnegative".into()));
        }
        draws.sort_by(f64::total_cmp);
        Ok(NullSampleSet { meta, draws })
    }

    pub fn provenance(&self) -> &NullProvenance {
        &self.meta
    }

    pub fn family(&self) -> NullFamily {
        self.meta.family
    }

    pub fn draws(&self) -> &[f64] {
        &self.draws
    }

    /// Order-statistic quantile: the `ceil(level * R)`-th smallest draw.
    pub fn quantile(&self, level: f64) -> f64 {
        let r = self.draws.len();
        let idx = ((level * r as f64).ceil() as usize).clamp(1, r) - 1;
        self.draws[idx]
    }

    /// Right-tail p-value `(#{draws >= x} + 1) / (R + 1)`.
    pub fn p_value(&self, x: f64) -> f64 {
        let below = self.draws.partition_point(|&d| d < x);
        let above = self.draws.len() - below;
        (above + 1) as f64 / (self.draws.len() + 1) as f64
    }

    pub fn critical_values(&self, alphas: &[f64]) -> CriticalValueTable {
        CriticalValueTable {
            family: self.meta.family,
            rows: alphas.iter().map(|&a| (a, self.quantile(1.0 - a))).collect(),
        }
    }

    pub fn cache_file_name(family: NullFamily, grid: usize, replications: usize, seed: u64) -> String {
        format!("{}_G{grid}_R{replications}_seed{seed}.json", family.file_stem())
    }

    /// Writes the set atomically (temporary file, then rename).
    pub fn store(&self, path: &Path) -> Result<()> {
        let file = CacheFile {
            format: CACHE_FORMAT.into(),
            version: CACHE_VERSION,
            meta: self.meta,
            draws: self.draws.clone(),
        };
        let cache_err = |message: String| Error::Cache {
            path: path.to_path_buf(),
            message,
        };
        let dir = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let name = path
            .file_name()
            .ok_or_else(|| cache_err("cache path has no file name".into()))?
            .to_string_lossy();
        let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer(&mut f, &file)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads a cached set, checking that it describes exactly the requested simulation.
    pub fn load(path: &Path, family: NullFamily, grid: usize, replications: usize, seed: u64) -> Result<Self> {
        let cache_err = |message: String| Error::Cache {
            path: path.to_path_buf(),
            message,
        };
        let text = fs::read_to_string(path)?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| cache_err(format!("corrupt cache: {e}")))?;
        if file.format != CACHE_FORMAT || file.version != CACHE_VERSION {
            return Err(cache_err(format!(
                "unsupported format {} v{}",
                file.format, file.version
            )));
        }
        let m = file.meta;
        if m.family != family || m.grid != grid || m.replications != replications || m.seed != seed {
            return Err(Error::NullMismatch(format!(
                "cache holds {:?} G={} R={} seed={}, requested {:?} G={grid} R={replications} seed={seed}",
                m.family, m.grid, m.replications, m.seed, family
            )));
        }
        if file.draws.len() != replications || file.draws.windows(2).any(|w| w[0] > w[1]) {
            return Err(cache_err("draw count or ordering is inconsistent".into()));
        }
        NullSampleSet::from_draws(m, file.draws)
    }

    /// Loads from `dir` when a matching cache exists, otherwise simulates and stores.
    pub fn load_or_simulate(
        dir: Option<&Path>,
        family: NullFamily,
        grid: usize,
        replications: usize,
        seed: u64,
    ) -> Result<Self> {
        let Some(dir) = dir else {
            return NullSampleSet::simulate(family, grid, replications, seed);
        };
        let path = dir.join(Self::cache_file_name(family, grid, replications, seed));
        if path.exists() {
            return NullSampleSet::load(&path, family, grid, replications, seed);
        }
        let set = NullSampleSet::simulate(family, grid, replications, seed)?;
        set.store(&path)?;
        Ok(set)
    }
}

/// Cache directory from the environment, if set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}
