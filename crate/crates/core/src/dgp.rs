//! Simulation designs: a bivariate VAR(1) latent process and the object
//! laws built on it.
//!
//! With latents `(U_{t,1}, U_{t,2})` and change parameters `(d1, d2)`, where
//! `(0, 1)` is the no-change law:
//!
//! - Gaussian: `N(atan U + d1, d2^2 (atan(U^2) + 1)^2)` as a quantile object.
//! - Graph: two communities of `floor(0.4 N)` and `N - floor(0.4 N)` nodes with
//!   weights `d2 (0.4 + atan U^2)`, `d2 (0.2 + atan U'^2)` and `0.1 + d1`
//!   between; the object is the Laplacian `D - W`.
//! - Covariance: `(2I + Z)(2I + Z)^T` where the nine entries of `Z` are
//!   `d1 + d2 atan U^(e)` on independent latent streams.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::null_dist::floor_frac;
use crate::prefix::ObjectSeries;
use crate::rng::rng_for;
use crate::space::{MetricObject, Space, DEFAULT_GRID};

pub const DEFAULT_BURN_IN: usize = 200;
/// Regime boundaries of the multiple change-point designs.
pub const MULTI_CP_POINTS: [usize; 3] = [110, 250, 370];
pub const MULTI_CP_LEN: usize = 500;

const COV_DIM: usize = 3;
const COV_STREAMS: usize = COV_DIM * COV_DIM;

/// SPD floor of generated covariance objects. `2I + Z` can come arbitrarily
/// close to singular (about 5 in 10^7 draws have an eigenvalue below 1e-10),
/// so only numerically singular draws are rejected.
pub const DGP_SPD_FLOOR: f64 = f64::MIN_POSITIVE;

fn covariance_space() -> Space {
    Space::LogEuclidean {
        dim: COV_DIM,
        floor: DGP_SPD_FLOOR,
    }
}

/// `U_t = rho U_{t-1} + e_t` with unit-variance innovations of correlation `cross`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatentVarProcess {
    pub rho: f64,
    pub cross: f64,
    pub n: usize,
    pub seed: u64,
    pub burn_in: usize,
}

impl LatentVarProcess {
    pub fn new(rho: f64, cross: f64, n: usize, seed: u64) -> Self {
        LatentVarProcess {
            rho,
            cross,
            n,
            seed,
            burn_in: DEFAULT_BURN_IN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_latent(self.rho, self.cross)
    }

    /// Draws from `rng`, discarding `burn_in` steps after starting at 0.
    pub fn generate_with<R: Rng + ?Sized>(&self, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
        let c = (1.0 - self.cross * self.cross).sqrt();
        let (mut u1, mut u2) = (0.0, 0.0);
        let mut out1 = Vec::with_capacity(self.n);
        let mut out2 = Vec::with_capacity(self.n);
        for t in 0..self.burn_in + self.n {
            let z1: f64 = rng.sample(StandardNormal);
            let z2: f64 = rng.sample(StandardNormal);
            u1 = self.rho * u1 + z1;
            u2 = self.rho * u2 + self.cross * z1 + c * z2;
            if t >= self.burn_in {
                out1.push(u1);
                out2.push(u2);
            }
        }
        (out1, out2)
    }
}

fn check_latent(rho: f64, cross: f64) -> Result<()> {
    if rho.is_nan() || rho.abs() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "|rho| = {} must be below 1",
            rho.abs()
        )));
    }
    if !(0.0..1.0).contains(&cross) {
        return Err(Error::InvalidParameter(format!(
            "cross-correlation {cross} must lie in [0, 1)"
        )));
    }
    Ok(())
}

/// The pair `(U_{t,1}, U_{t,2})` for `t = 1..=n`.
pub fn gen_var1(process: &LatentVarProcess) -> Result<(Vec<f64>, Vec<f64>)> {
    process.validate()?;
    Ok(process.generate_with(&mut rng_for(process.seed, 0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dgp {
    GaussianDist,
    GraphLaplacian,
    CovarianceMatrix,
}

/// One simulation design; `(delta1, delta2) = (0, 1)` is the null.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DgpSpec {
    pub dgp: Dgp,
    pub delta1: f64,
    pub delta2: f64,
    /// Graph size for the Laplacian design.
    pub nodes: usize,
    /// Quantile grid for the Gaussian design.
    pub grid: usize,
    pub rho: f64,
    pub cross: f64,
    pub burn_in: usize,
}

impl DgpSpec {
    /// Null design with 10-node graphs.
    pub fn two_sample(dgp: Dgp, rho: f64, cross: f64) -> Self {
        DgpSpec {
            dgp,
            delta1: 0.0,
            delta2: 1.0,
            nodes: 10,
            grid: DEFAULT_GRID,
            rho,
            cross,
            burn_in: DEFAULT_BURN_IN,
        }
    }

    /// Null design with 5-node graphs.
    pub fn change_point(dgp: Dgp, rho: f64, cross: f64) -> Self {
        DgpSpec {
            nodes: 5,
            ..DgpSpec::two_sample(dgp, rho, cross)
        }
    }

    pub fn with_deltas(self, delta1: f64, delta2: f64) -> Self {
        DgpSpec { delta1, delta2, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        check_latent(self.rho, self.cross)?;
        if !(self.delta1.is_finite() && self.delta2.is_finite() && self.delta2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "deltas ({}, {}) must be finite with delta2 > 0",
                self.delta1, self.delta2
            )));
        }
        match self.dgp {
            Dgp::GraphLaplacian if self.nodes < 3 => Err(Error::InvalidParameter(format!(
                "{} nodes cannot form two communities",
                self.nodes
            ))),
            Dgp::GaussianDist if self.grid < 2 => Err(Error::InvalidParameter(format!("grid {} < 2", self.grid))),
            _ => Ok(()),
        }
    }

    pub fn space(&self) -> Space {
        match self.dgp {
            Dgp::GaussianDist => Space::Wasserstein1D { grid: self.grid },
            Dgp::GraphLaplacian => Space::GraphLaplacian { dim: self.nodes },
            Dgp::CovarianceMatrix => covariance_space(),
        }
    }

    fn streams(&self) -> usize {
        match self.dgp {
            Dgp::GaussianDist => 1,
            Dgp::GraphLaplacian => 2,
            Dgp::CovarianceMatrix => COV_STREAMS,
        }
    }

    /// Latent pairs for every stream the design needs, each of length `n`.
    fn latents(&self, n: usize, seed: u64) -> Vec<(Vec<f64>, Vec<f64>)> {
        let process = LatentVarProcess {
            rho: self.rho,
            cross: self.cross,
            n,
            seed,
            burn_in: self.burn_in,
        };
        (0..self.streams())
            .map(|s| process.generate_with(&mut rng_for(seed, s as u64)))
            .collect()
    }
}

/// Gaussian quantile object with location `atan u + d1` and scale `d2 (atan(u^2) + 1)`.
pub fn gaussian_object(u: f64, d1: f64, d2: f64, grid: usize) -> Result<MetricObject> {
    MetricObject::gaussian(u.atan() + d1, d2 * ((u * u).atan() + 1.0), grid)
}

/// Two-community graph Laplacian from latents `u` and `u'`.
pub fn graph_object(u: f64, u_prime: f64, d1: f64, d2: f64, nodes: usize) -> Result<MetricObject> {
    let first = floor_frac(nodes, 0.4);
    let w_first = d2 * (0.4 + (u * u).atan());
    let w_second = d2 * (0.2 + (u_prime * u_prime).atan());
    let w_between = 0.1 + d1;
    let mut l = vec![0.0; nodes * nodes];
    for i in 0..nodes {
        for j in 0..nodes {
            if i == j {
                continue;
            }
            let w = match (i < first, j < first) {
                (true, true) => w_first,
                (false, false) => w_second,
                _ => w_between,
            };
            l[i * nodes + j] = -w;
            l[i * nodes + i] += w;
        }
    }
    MetricObject::new(Space::GraphLaplacian { dim: nodes }, l)
}

/// `(2I + Z)(2I + Z)^T` with `Z_e = d1 + d2 atan(u_e)`, entries row-major.
pub fn covariance_object(u: &[f64; COV_STREAMS], d1: f64, d2: f64) -> Result<MetricObject> {
    let mut a = [0.0; COV_STREAMS];
    for (e, x) in a.iter_mut().enumerate() {
        *x = d1 + d2 * u[e].atan();
        if e / COV_DIM == e % COV_DIM {
            *x += 2.0;
        }
    }
    let mut y = vec![0.0; COV_STREAMS];
    for i in 0..COV_DIM {
        for j in 0..COV_DIM {
            y[i * COV_DIM + j] = (0..COV_DIM).map(|k| a[i * COV_DIM + k] * a[j * COV_DIM + k]).sum();
        }
    }
    MetricObject::new(covariance_space(), y)
}

/// Object at time `t` from latent component `comp` (0 or 1) with change parameters `(d1, d2)`.
fn object_at(
    spec: &DgpSpec,
    lat: &[(Vec<f64>, Vec<f64>)],
    comp: usize,
    t: usize,
    d1: f64,
    d2: f64,
) -> Result<MetricObject> {
    let pick = |s: usize| if comp == 0 { lat[s].0[t] } else { lat[s].1[t] };
    match spec.dgp {
        Dgp::GaussianDist => gaussian_object(pick(0), d1, d2, spec.grid),
        Dgp::GraphLaplacian => graph_object(pick(0), pick(1), d1, d2, spec.nodes),
        Dgp::CovarianceMatrix => {
            let mut u = [0.0; COV_STREAMS];
            for (e, x) in u.iter_mut().enumerate() {
                *x = pick(e);
            }
            covariance_object(&u, d1, d2)
        }
    }
}

/// Sample 1 (no-change law on `U_{t,1}`) and sample 2 (changed law on `U_{t,2}`).
pub fn gen_two_samples(spec: &DgpSpec, n1: usize, n2: usize, seed: u64) -> Result<(ObjectSeries, ObjectSeries)> {
    spec.validate()?;
    if n1 == 0 || n2 == 0 {
        return Err(Error::Empty("sample"));
    }
    let lat = spec.latents(n1.max(n2), seed);
    let s1 = (0..n1)
        .map(|t| object_at(spec, &lat, 0, t, 0.0, 1.0))
        .collect::<Result<_>>()?;
    let s2 = (0..n2)
        .map(|t| object_at(spec, &lat, 1, t, spec.delta1, spec.delta2))
        .collect::<Result<_>>()?;
    Ok((ObjectSeries::new(s1)?, ObjectSeries::new(s2)?))
}

/// A length-`n` series whose first `floor(n tau)` objects follow the
/// no-change law on `U_{t,1}` and the rest the changed law on `U_{t,2}`.
/// `tau = 1` gives the null series.
pub fn gen_cp_series(spec: &DgpSpec, n: usize, tau: f64, seed: u64) -> Result<ObjectSeries> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::Empty("series"));
    }
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidParameter(format!("tau = {tau} must lie in [0, 1]")));
    }
    let lat = spec.latents(n, seed);
    let k = floor_frac(n, tau);
    let objs = (0..n)
        .map(|t| {
            if t < k {
                object_at(spec, &lat, 0, t, 0.0, 1.0)
            } else {
                object_at(spec, &lat, 1, t, spec.delta1, spec.delta2)
            }
        })
        .collect::<Result<_>>()?;
    ObjectSeries::new(objs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiCpModel {
    GaussianDist,
    CovarianceMatrix,
}

/// Piecewise-constant `(delta_{t,1}, delta_{t,2})` over the four regimes split
/// at [`MULTI_CP_POINTS`], driven by AR(1) latents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiCpSpec {
    pub model: MultiCpModel,
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub rho: f64,
    pub grid: usize,
    pub burn_in: usize,
}

impl MultiCpSpec {
    /// One of the three published coefficient cases.
    pub fn case(model: MultiCpModel, case: u8, rho: f64) -> Result<Self> {
        let (a, b) = match (model, case) {
            (MultiCpModel::GaussianDist, 1) => ([0.0, 0.7, 0.0, 0.8], [1.0, 1.5, 0.7, 1.4]),
            (MultiCpModel::GaussianDist, 2) => ([0.0, 0.2, 0.0, 0.3], [0.5, 1.5, 0.4, 1.4]),
            (MultiCpModel::GaussianDist, 3) => ([0.0, 0.5, 1.5, 3.3], [0.2, 1.5, 3.8, 6.5]),
            (MultiCpModel::CovarianceMatrix, 1) => ([0.0, 1.2, 0.0, 1.3], [0.8, 1.5, 0.7, 1.6]),
            (MultiCpModel::CovarianceMatrix, 2) => ([0.0, 1.0, 0.0, 1.0], [0.5, 2.0, 0.4, 1.9]),
            (MultiCpModel::CovarianceMatrix, 3) => ([0.0, 2.0, 3.9, 5.7], [0.2, 0.7, 1.3, 2.0]),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown case {case}; cases are 1, 2, 3"
                )))
            }
        };
        Ok(MultiCpSpec {
            model,
            a,
            b,
            rho,
            grid: DEFAULT_GRID,
            burn_in: DEFAULT_BURN_IN,
        })
    }

    /// Regime index (0..4) of 1-based time `t`.
    pub fn regime(t: usize) -> usize {
        MULTI_CP_POINTS.iter().filter(|&&p| t > p).count()
    }
}

pub fn gen_multicp_series(spec: &MultiCpSpec, seed: u64) -> Result<ObjectSeries> {
    check_latent(spec.rho, 0.0)?;
    if spec.b.iter().any(|b| !(b.is_finite() && *b > 0.0)) || spec.a.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidParameter(
            "regime coefficients must be finite with b > 0".into(),
        ));
    }
    let n = MULTI_CP_LEN;
    let process = LatentVarProcess {
        rho: spec.rho,
        cross: 0.0,
        n,
        seed,
        burn_in: spec.burn_in,
    };
    let streams = match spec.model {
        MultiCpModel::GaussianDist => 1,
        MultiCpModel::CovarianceMatrix => COV_STREAMS,
    };
    let lat: Vec<Vec<f64>> = (0..streams)
        .map(|s| process.generate_with(&mut rng_for(seed, s as u64)).0)
        .collect();
    let objs = (0..n)
        .map(|t| {
            let r = MultiCpSpec::regime(t + 1);
            let (d1, d2) = (spec.a[r], spec.b[r]);
            match spec.model {
                MultiCpModel::GaussianDist => gaussian_object(lat[0][t], d1, d2, spec.grid),
                MultiCpModel::CovarianceMatrix => {
                    let mut u = [0.0; COV_STREAMS];
                    for (e, x) in u.iter_mut().enumerate() {
                        *x = lat[e][t];
                    }
                    covariance_object(&u, d1, d2)
                }
            }
        })
        .collect::<Result<_>>()?;
    ObjectSeries::new(objs)
}
