//! Browser bindings for three interactive views: a simulated null
//! distribution, the change-point scan curves of a synthetic series, and the
//! two-sample recursive profiles.
//!
//! Each view has a plain Rust constructor (usable and testable off the web)
//! and a thin `wasm_bindgen` export that turns errors into JS exceptions.

use frechet_sn::changepoint::contrast_curves;
use frechet_sn::dgp::{gen_cp_series, gen_two_samples, Dgp, DgpSpec};
use frechet_sn::null_dist::{NullFamily, NullSampleSet};
use frechet_sn::two_sample::{d1_statistic, d2_statistic, profiles};
use wasm_bindgen::prelude::*;

/// Browser-sized null simulations; the full default takes minutes in wasm.
const MAX_NULL_WORK: usize = 20_000_000;

fn parse_dgp(name: &str) -> Result<Dgp, String> {
    match name {
        "gaussian" | "gaussian-dist" => Ok(Dgp::GaussianDist),
        "graph" | "graph-laplacian" => Ok(Dgp::GraphLaplacian),
        "covariance" | "covariance-matrix" => Ok(Dgp::CovarianceMatrix),
        other => Err(format!("unknown design '{other}'")),
    }
}

fn nan_if(degenerate: &[bool], values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .zip(degenerate)
        .map(|(&v, &d)| if d { f64::NAN } else { v })
        .collect()
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct NullView {
    lo: f64,
    hi: f64,
    counts: Vec<u32>,
    q90: f64,
    q95: f64,
    q99: f64,
}

#[wasm_bindgen]
impl NullView {
    /// Left edge of the first bin.
    pub fn lo(&self) -> f64 {
        self.lo
    }
    /// Right edge of the last bin.
    pub fn hi(&self) -> f64 {
        self.hi
    }
    pub fn counts(&self) -> Vec<u32> {
        self.counts.clone()
    }
    pub fn q90(&self) -> f64 {
        self.q90
    }
    pub fn q95(&self) -> f64 {
        self.q95
    }
    pub fn q99(&self) -> f64 {
        self.q99
    }
}

/// Histogram of a null simulation. `family` is `"deta"` (trimmed at `eta`)
/// or `"seta"` (trimmed at `eta` and `eta2`). The histogram covers the lower
/// 99.5% of the draws so the tail does not flatten it.
pub fn null_view(
    family: &str,
    eta: f64,
    eta2: f64,
    grid: usize,
    reps: usize,
    seed: u32,
    bins: usize,
) -> Result<NullView, String> {
    let family = match family {
        "deta" => NullFamily::Deta { eta },
        "seta" => NullFamily::Seta { eta1: eta, eta2 },
        other => return Err(format!("unknown null family '{other}'")),
    };
    if grid.saturating_mul(reps) > MAX_NULL_WORK {
        return Err(format!(
            "grid x replications is capped at {MAX_NULL_WORK} in the browser"
        ));
    }
    if bins == 0 {
        return Err("need at least one bin".into());
    }
    let set = NullSampleSet::simulate(family, grid, reps, u64::from(seed)).map_err(|e| e.to_string())?;
    let draws = set.draws();
    let lo = draws[0].min(0.0);
    let hi = set.quantile(0.995).max(lo + f64::EPSILON);
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u32; bins];
    for &x in draws.iter().filter(|&&x| x <= hi) {
        counts[(((x - lo) / width) as usize).min(bins - 1)] += 1;
    }
    Ok(NullView {
        lo,
        hi,
        counts,
        q90: set.quantile(0.90),
        q95: set.quantile(0.95),
        q99: set.quantile(0.99),
    })
}

#[wasm_bindgen(js_name = simulateNull)]
pub fn simulate_null(
    family: &str,
    eta: f64,
    eta2: f64,
    grid: usize,
    reps: usize,
    seed: u32,
    bins: usize,
) -> Result<NullView, JsError> {
    null_view(family, eta, eta2, grid, reps, seed, bins).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct CurveView {
    n: usize,
    k_start: usize,
    sn1: Vec<f64>,
    sn2: Vec<f64>,
    k_hat1: Option<usize>,
    k_hat2: Option<usize>,
}

#[wasm_bindgen]
impl CurveView {
    pub fn n(&self) -> usize {
        self.n
    }
    /// Split index of the first curve value.
    pub fn k_start(&self) -> usize {
        self.k_start
    }
    /// SN1 curve; degenerate splits are NaN.
    pub fn sn1(&self) -> Vec<f64> {
        self.sn1.clone()
    }
    pub fn sn2(&self) -> Vec<f64> {
        self.sn2.clone()
    }
    pub fn k_hat1(&self) -> Option<usize> {
        self.k_hat1
    }
    pub fn k_hat2(&self) -> Option<usize> {
        self.k_hat2
    }
}

/// Scan curves of a synthetic series of length `n` whose law changes at
/// `floor(n tau)` by `(delta1, delta2)`; `tau = 1` gives no change.
#[allow(clippy::too_many_arguments)]
pub fn curve_view(
    dgp: &str,
    n: usize,
    tau: f64,
    delta1: f64,
    delta2: f64,
    rho: f64,
    eta1: f64,
    eta2: f64,
    seed: u32,
) -> Result<CurveView, String> {
    let spec = DgpSpec::change_point(parse_dgp(dgp)?, rho, 0.0).with_deltas(delta1, delta2);
    let series = gen_cp_series(&spec, n, tau, u64::from(seed)).map_err(|e| e.to_string())?;
    let (c1, c2) = contrast_curves(&series, eta1, eta2).map_err(|e| e.to_string())?;
    Ok(CurveView {
        n,
        k_start: c1.k_start,
        sn1: nan_if(&c1.degenerate, &c1.values),
        sn2: nan_if(&c2.degenerate, &c2.values),
        k_hat1: c1.argmax().map(|b| b.0),
        k_hat2: c2.argmax().map(|b| b.0),
    })
}

#[wasm_bindgen(js_name = changePointScan)]
#[allow(clippy::too_many_arguments)]
pub fn change_point_scan(
    dgp: &str,
    n: usize,
    tau: f64,
    delta1: f64,
    delta2: f64,
    rho: f64,
    eta1: f64,
    eta2: f64,
    seed: u32,
) -> Result<CurveView, JsError> {
    curve_view(dgp, n, tau, delta1, delta2, rho, eta1, eta2, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct ProfileView {
    n: usize,
    k_start: usize,
    t: Vec<f64>,
    tc: Vec<f64>,
    d1: f64,
    d2: f64,
}

#[wasm_bindgen]
impl ProfileView {
    /// Pooled sample size.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k_start(&self) -> usize {
        self.k_start
    }
    /// Variance-difference profile.
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }
    /// Mean-gap (contaminated) profile.
    pub fn tc(&self) -> Vec<f64> {
        self.tc.clone()
    }
    /// NaN when the self-normalizer vanishes.
    pub fn d1(&self) -> f64 {
        self.d1
    }
    pub fn d2(&self) -> f64 {
        self.d2
    }
}

/// Profiles and statistics for two synthetic samples, the second shifted
/// by `(delta1, delta2)`.
#[allow(clippy::too_many_arguments)]
pub fn profile_view(
    dgp: &str,
    n1: usize,
    n2: usize,
    delta1: f64,
    delta2: f64,
    rho: f64,
    eta: f64,
    seed: u32,
) -> Result<ProfileView, String> {
    let spec = DgpSpec::two_sample(parse_dgp(dgp)?, rho, 0.0).with_deltas(delta1, delta2);
    let (a, b) = gen_two_samples(&spec, n1, n2, u64::from(seed)).map_err(|e| e.to_string())?;
    let p = profiles(&a, &b, eta).map_err(|e| e.to_string())?;
    Ok(ProfileView {
        n: p.n(),
        k_start: p.k_start,
        d1: d1_statistic(&p).unwrap_or(f64::NAN),
        d2: d2_statistic(&p).unwrap_or(f64::NAN),
        t: p.t,
        tc: p.tc,
    })
}

#[wasm_bindgen(js_name = twoSampleProfiles)]
#[allow(clippy::too_many_arguments)]
pub fn two_sample_profiles(
    dgp: &str,
    n1: usize,
    n2: usize,
    delta1: f64,
    delta2: f64,
    rho: f64,
    eta: f64,
    seed: u32,
) -> Result<ProfileView, JsError> {
    profile_view(dgp, n1, n2, delta1, delta2, rho, eta, seed).map_err(|e| JsError::new(&e))
}
