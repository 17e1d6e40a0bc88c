//! Object spaces, their metrics, and the isometric Euclidean embeddings that
//! make Fréchet means closed-form.
//!
//! Every supported space maps into `R^D` through an embedding `e` with a
//! quadrature weight `w` such that `d(x, y)^2 = w * |e(x) - e(y)|^2`:
//!
//! | space            | embedding                      | weight |
//! |------------------|--------------------------------|--------|
//! | `Scalar`         | the value                      | 1      |
//! | `L2Function`     | values on the midpoint grid    | 1/M    |
//! | `Wasserstein1D`  | quantiles on the midpoint grid | 1/M    |
//! | `Frobenius`      | matrix entries (row-major)     | 1      |
//! | `GraphLaplacian` | matrix entries (row-major)     | 1      |
//! | `LogEuclidean`   | entries of the matrix log      | 1      |
//!
//! The Fréchet mean of any weighted sample is therefore the image of the
//! weighted mean embedding under [`unembed`].

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Default lower bound on eigenvalues of log-Euclidean SPD objects.
pub const DEFAULT_SPD_FLOOR: f64 = 1e-10;

/// Default number of grid points for quantile and function objects.
pub const DEFAULT_GRID: usize = 100;

const MONOTONE_TOL: f64 = 1e-12;
const LAPLACIAN_TOL: f64 = 1e-9;
const SYMMETRY_TOL: f64 = 1e-9;

/// The metric space an object lives in. Two objects are comparable iff their
/// descriptors are equal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Space {
    Scalar,
    /// Square-integrable functions on `[0, 1]` tabulated at `x_j = (j - 1/2)/M`.
    L2Function {
        grid: usize,
    },
    /// Univariate distributions represented by quantiles at `p_j = (j - 1/2)/M`.
    Wasserstein1D {
        grid: usize,
    },
    /// Symmetric `dim x dim` matrices with the Frobenius metric.
    Frobenius {
        dim: usize,
    },
    /// SPD matrices with the log-Euclidean metric.
    LogEuclidean {
        dim: usize,
        floor: f64,
    },
    /// Weighted graph Laplacians with the Frobenius metric.
    GraphLaplacian {
        dim: usize,
    },
}

impl Space {
    pub fn log_euclidean(dim: usize) -> Self {
        Space::LogEuclidean {
            dim,
            floor: DEFAULT_SPD_FLOOR,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Space::Scalar => Ok(()),
            Space::L2Function { grid } | Space::Wasserstein1D { grid } => {
                if grid < 2 {
                    return Err(Error::InvalidSpace(format!("grid size {grid} < 2")));
                }
                Ok(())
            }
            Space::Frobenius { dim } | Space::GraphLaplacian { dim } => {
                if dim == 0 {
                    return Err(Error::InvalidSpace("matrix dimension 0".into()));
                }
                Ok(())
            }
            Space::LogEuclidean { dim, floor } => {
                if dim == 0 {
                    return Err(Error::InvalidSpace("matrix dimension 0".into()));
                }
                if !(floor.is_finite() && floor > 0.0) {
                    return Err(Error::InvalidSpace(format!("spd floor {floor} must be positive")));
                }
                Ok(())
            }
        }
    }

    /// Number of stored values, which is also the embedding dimension.
    pub fn value_len(&self) -> usize {
        match *self {
            Space::Scalar => 1,
            Space::L2Function { grid } | Space::Wasserstein1D { grid } => grid,
            Space::Frobenius { dim } | Space::GraphLaplacian { dim } | Space::LogEuclidean { dim, .. } => dim * dim,
        }
    }

    /// Quadrature weight `w` of the embedding.
    pub fn weight(&self) -> f64 {
        match *self {
            Space::L2Function { grid } | Space::Wasserstein1D { grid } => 1.0 / grid as f64,
            _ => 1.0,
        }
    }

    pub fn matrix_dim(&self) -> Option<usize> {
        match *self {
            Space::Frobenius { dim } | Space::GraphLaplacian { dim } | Space::LogEuclidean { dim, .. } => Some(dim),
            _ => None,
        }
    }

    pub fn grid_size(&self) -> Option<usize> {
        match *self {
            Space::L2Function { grid } | Space::Wasserstein1D { grid } => Some(grid),
            _ => None,
        }
    }

    pub(crate) fn ensure_same(&self, other: &Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Space::Scalar => write!(f, "scalar"),
            Space::L2Function { grid } => write!(f, "L2 function (M = {grid})"),
            Space::Wasserstein1D { grid } => write!(f, "2-Wasserstein (M = {grid})"),
            Space::Frobenius { dim } => write!(f, "Frobenius ({dim}x{dim})"),
            Space::LogEuclidean { dim, floor } => {
                write!(f, "log-Euclidean ({dim}x{dim}, floor {floor:e})")
            }
            Space::GraphLaplacian { dim } => write!(f, "graph Laplacian ({dim}x{dim})"),
        }
    }
}

/// Midpoint grid `(j - 1/2)/M`, `j = 1..=M`.
pub fn midpoint_grid(grid: usize) -> Vec<f64> {
    (0..grid).map(|j| (j as f64 + 0.5) / grid as f64).collect()
}

/// Standard normal quantile function.
pub fn standard_normal_quantile(p: f64) -> f64 {
    // Normal::new only fails for non-finite or non-positive scale.
    Normal::new(0.0, 1.0).expect("unit normal").inverse_cdf(p)
}

/// Linear-interpolation empirical quantile (Hyndman-Fan type 7) of sorted data.
fn sorted_quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// A point in one of the supported metric spaces.
///
/// Payloads are validated on construction, so every `MetricObject` satisfies
/// its space's invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricObject {
    space: Space,
    values: Vec<f64>,
}

impl MetricObject {
    /// Validates `values` against `space`. Matrices that are symmetric up to
    /// rounding are symmetrized exactly.
    pub fn new(space: Space, mut values: Vec<f64>) -> Result<Self> {
        space.validate()?;
        if values.len() != space.value_len() {
            return Err(Error::LengthMismatch {
                expected: space.value_len(),
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidObject(format!("non-finite value at position {bad}")));
        }
        match space {
            Space::Scalar | Space::L2Function { .. } => {}
            Space::Wasserstein1D { .. } => {
                if let Some(j) = values.windows(2).position(|w| w[1] < w[0] - MONOTONE_TOL) {
                    return Err(Error::InvalidObject(format!(
                        "quantile values decrease between positions {j} and {}",
                        j + 1
                    )));
                }
            }
            Space::Frobenius { dim } => symmetrize(&mut values, dim, SYMMETRY_TOL)?,
            Space::GraphLaplacian { dim } => {
                symmetrize(&mut values, dim, SYMMETRY_TOL)?;
                check_laplacian(&values, dim)?;
            }
            Space::LogEuclidean { dim, floor } => {
                symmetrize(&mut values, dim, SYMMETRY_TOL)?;
                let eig = SymmetricEigen::new(DMatrix::from_row_slice(dim, dim, &values));
                let min = eig.eigenvalues.min();
                if min < floor {
                    return Err(Error::InvalidObject(format!(
                        "smallest eigenvalue {min:e} is below the SPD floor {floor:e}"
                    )));
                }
            }
        }
        Ok(MetricObject { space, values })
    }

    pub fn scalar(x: f64) -> Result<Self> {
        MetricObject::new(Space::Scalar, vec![x])
    }

    /// A distribution given by its quantiles on the midpoint grid of size `values.len()`.
    pub fn quantiles(values: Vec<f64>) -> Result<Self> {
        let grid = values.len();
        MetricObject::new(Space::Wasserstein1D { grid }, values)
    }

    /// A function tabulated on the midpoint grid of size `values.len()`.
    pub fn function(values: Vec<f64>) -> Result<Self> {
        let grid = values.len();
        MetricObject::new(Space::L2Function { grid }, values)
    }

    /// `N(mean, sd^2)` as a quantile object on an `grid`-point midpoint grid.
    pub fn gaussian(mean: f64, sd: f64, grid: usize) -> Result<Self> {
        if !(sd.is_finite() && sd >= 0.0) {
            return Err(Error::InvalidObject(format!("standard deviation {sd} is invalid")));
        }
        let values = midpoint_grid(grid)
            .into_iter()
            .map(|p| mean + sd * standard_normal_quantile(p))
            .collect();
        MetricObject::new(Space::Wasserstein1D { grid }, values)
    }

    /// The empirical distribution of `samples`, via linear-interpolation
    /// quantiles evaluated on the midpoint grid.
    pub fn from_samples(samples: &[f64], grid: usize) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty("sample list"));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidObject("non-finite sample".into()));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let values = midpoint_grid(grid)
            .into_iter()
            .map(|p| sorted_quantile(&sorted, p))
            .collect();
        MetricObject::new(Space::Wasserstein1D { grid }, values)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Matrix entry `(i, j)`; `None` for non-matrix spaces.
    pub fn entry(&self, i: usize, j: usize) -> Option<f64> {
        let dim = self.space.matrix_dim()?;
        (i < dim && j < dim).then(|| self.values[i * dim + j])
    }
}

fn symmetrize(values: &mut [f64], dim: usize, tol: f64) -> Result<()> {
    let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    for i in 0..dim {
        for j in (i + 1)..dim {
            let (a, b) = (values[i * dim + j], values[j * dim + i]);
            if (a - b).abs() > tol * scale {
                return Err(Error::InvalidObject(format!(
                    "matrix is not symmetric at ({i}, {j}): {a} vs {b}"
                )));
            }
            let avg = 0.5 * (a + b);
            values[i * dim + j] = avg;
            values[j * dim + i] = avg;
        }
    }
    Ok(())
}

fn check_laplacian(values: &[f64], dim: usize) -> Result<()> {
    for i in 0..dim {
        let row = &values[i * dim..(i + 1) * dim];
        let sum: f64 = row.iter().sum();
        let scale = row.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        if sum.abs() > LAPLACIAN_TOL * scale {
            return Err(Error::InvalidObject(format!("Laplacian row {i} sums to {sum:e}")));
        }
        if let Some(j) = (0..dim).find(|&j| j != i && row[j] > 0.0) {
            return Err(Error::InvalidObject(format!(
                "Laplacian off-diagonal ({i}, {j}) = {} is positive",
                row[j]
            )));
        }
    }
    Ok(())
}

/// Applies `f` to the eigenvalues of a symmetric matrix.
fn spectral_map(values: &[f64], dim: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let eig = SymmetricEigen::new(DMatrix::from_row_slice(dim, dim, values));
    let mapped = eig.eigenvalues.map(f);
    let v = &eig.eigenvectors;
    let mut out = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let x: f64 = (0..dim).map(|k| v[(i, k)] * mapped[k] * v[(j, k)]).sum();
            out[i * dim + j] = x;
            out[j * dim + i] = x;
        }
    }
    out
}

/// Embedded coordinates of an object together with the quadrature weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedVector {
    pub coords: Vec<f64>,
    pub weight: f64,
}

impl EmbeddedVector {
    /// `w * |self - other|^2`.
    pub fn weighted_sq_dist(&self, other: &EmbeddedVector) -> f64 {
        self.weight * sq_dist(&self.coords, &other.coords)
    }
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Embeds an object into `R^D`. Writes into `out`, which must have length `D`.
pub(crate) fn embed_into(x: &MetricObject, out: &mut [f64]) {
    match x.space {
        Space::LogEuclidean { dim, .. } => {
            out.copy_from_slice(&spectral_map(&x.values, dim, f64::ln));
        }
        _ => out.copy_from_slice(&x.values),
    }
}

pub fn embed(x: &MetricObject) -> EmbeddedVector {
    let mut coords = vec![0.0; x.space.value_len()];
    embed_into(x, &mut coords);
    EmbeddedVector {
        coords,
        weight: x.space.weight(),
    }
}

/// Maps embedded coordinates back to an object of `space`, projecting onto
/// the space where needed: quantile vectors are sorted when they decrease by
/// more than rounding, matrices are symmetrized, Laplacian rows are
/// re-centred to sum to zero, and log-Euclidean coordinates are exponentiated.
pub fn unembed(v: &EmbeddedVector, space: &Space) -> Result<MetricObject> {
    space.validate()?;
    if v.coords.len() != space.value_len() {
        return Err(Error::LengthMismatch {
            expected: space.value_len(),
            got: v.coords.len(),
        });
    }
    let mut values = v.coords.clone();
    match *space {
        Space::Scalar | Space::L2Function { .. } => {}
        Space::Wasserstein1D { .. } => {
            if values.windows(2).any(|w| w[1] < w[0] - MONOTONE_TOL) {
                values.sort_by(f64::total_cmp);
            }
        }
        Space::Frobenius { dim } => symmetrize(&mut values, dim, f64::INFINITY)?,
        Space::GraphLaplacian { dim } => {
            symmetrize(&mut values, dim, f64::INFINITY)?;
            for i in 0..dim {
                let mut off = 0.0;
                for j in (0..dim).filter(|&j| j != i) {
                    let w = &mut values[i * dim + j];
                    if *w > 0.0 {
                        if *w > LAPLACIAN_TOL {
                            return Err(Error::InvalidObject(format!(
                                "off-diagonal ({i}, {j}) = {w} is positive"
                            )));
                        }
                        *w = 0.0;
                    }
                    off += *w;
                }
                values[i * dim + i] = -off;
            }
        }
        Space::LogEuclidean { dim, .. } => {
            symmetrize(&mut values, dim, f64::INFINITY)?;
            values = spectral_map(&values, dim, f64::exp);
        }
    }
    MetricObject::new(*space, values)
}

pub fn distance(x: &MetricObject, y: &MetricObject) -> Result<f64> {
    Ok(sq_distance(x, y)?.sqrt())
}

/// `d(x, y)^2`.
pub fn sq_distance(x: &MetricObject, y: &MetricObject) -> Result<f64> {
    x.space.ensure_same(&y.space)?;
    Ok(match x.space {
        Space::LogEuclidean { .. } => embed(x).weighted_sq_dist(&embed(y)),
        space => space.weight() * sq_dist(&x.values, &y.values),
    })
}

/// Shared space of a nonempty object list.
pub(crate) fn common_space(objects: &[MetricObject]) -> Result<Space> {
    let first = objects.first().ok_or(Error::Empty("object list"))?;
    for o in &objects[1..] {
        first.space.ensure_same(&o.space)?;
    }
    Ok(first.space)
}

/// Weighted Fréchet mean `argmin_w sum_t w_t d^2(Y_t, w)`; uniform weights by default.
pub fn frechet_mean(objects: &[MetricObject], weights: Option<&[f64]>) -> Result<MetricObject> {
    let space = common_space(objects)?;
    let uniform;
    let weights = match weights {
        Some(w) => {
            if w.len() != objects.len() {
                return Err(Error::LengthMismatch {
                    expected: objects.len(),
                    got: w.len(),
                });
            }
            if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(Error::InvalidParameter("weights must be finite and nonnegative".into()));
            }
            w
        }
        None => {
            uniform = vec![1.0; objects.len()];
            &uniform
        }
    };
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidParameter("weights sum to zero".into()));
    }
    let dim = space.value_len();
    let mut acc = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    for (o, &w) in objects.iter().zip(weights) {
        if w == 0.0 {
            continue;
        }
        embed_into(o, &mut buf);
        for (a, b) in acc.iter_mut().zip(&buf) {
            *a += w * b;
        }
    }
    acc.iter_mut().for_each(|a| *a /= total);
    unembed(
        &EmbeddedVector {
            coords: acc,
            weight: space.weight(),
        },
        &space,
    )
}

/// `(1/n) sum_t d^2(Y_t, mean)`.
pub fn frechet_variance(objects: &[MetricObject], mean: &MetricObject) -> Result<f64> {
    let space = common_space(objects)?;
    space.ensure_same(mean.space())?;
    let m = embed(mean);
    let total: f64 = objects.iter().map(|o| embed(o).weighted_sq_dist(&m)).sum();
    Ok(total / objects.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> Vec<f64> {
        let p = d.len();
        let mut v = vec![0.0; p * p];
        for (i, x) in d.iter().enumerate() {
            v[i * p + i] = *x;
        }
        v
    }

    #[test]
    fn identical_objects_are_at_distance_zero() {
        let x = MetricObject::gaussian(0.3, 1.2, 50).unwrap();
        assert_eq!(distance(&x, &x).unwrap(), 0.0);
        let s = MetricObject::new(Space::log_euclidean(2), vec![2.0, 0.5, 0.5, 1.0]).unwrap();
        assert_eq!(distance(&s, &s).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_wasserstein_distance_matches_closed_form() {
        let a = MetricObject::gaussian(0.0, 1.0, 1000).unwrap();
        let b = MetricObject::gaussian(1.0, 1.0, 1000).unwrap();
        assert!((distance(&a, &b).unwrap() - 1.0).abs() < 1e-3);

        // d^2 = (m1 - m2)^2 + (s1 - s2)^2 up to the truncation of the
        // midpoint rule: sum z_j^2 / M -> 1 from below.
        let c = MetricObject::gaussian(-0.5, 2.0, 1000).unwrap();
        let d = MetricObject::gaussian(0.7, 0.5, 1000).unwrap();
        let expected = (1.2f64).powi(2) + (1.5f64).powi(2);
        assert!((sq_distance(&c, &d).unwrap() - expected).abs() < 1e-2);
    }

    #[test]
    fn log_euclidean_distance_of_diagonal_matrices() {
        let e = std::f64::consts::E;
        let a = MetricObject::new(Space::log_euclidean(2), diag(&[e, 1.0])).unwrap();
        let id = MetricObject::new(Space::log_euclidean(2), diag(&[1.0, 1.0])).unwrap();
        assert!((distance(&a, &id).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = MetricObject::scalar(1.0).unwrap();
        let b = MetricObject::function(vec![1.0, 2.0]).unwrap();
        assert!(matches!(distance(&a, &b), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn spd_floor_is_enforced() {
        let err = MetricObject::new(Space::log_euclidean(2), diag(&[1.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::InvalidObject(_)));
        let err = MetricObject::new(Space::log_euclidean(2), diag(&[1.0, -1.0])).unwrap_err();
        assert!(matches!(err, Error::InvalidObject(_)));
    }

    #[test]
    fn invariant_violations_are_rejected() {
        assert!(MetricObject::quantiles(vec![0.0, 1.0, 0.5]).is_err());
        // Positive off-diagonal.
        assert!(MetricObject::new(Space::GraphLaplacian { dim: 2 }, vec![-1.0, 1.0, 1.0, -1.0]).is_err());
        // Rows do not sum to zero.
        assert!(MetricObject::new(Space::GraphLaplacian { dim: 2 }, vec![2.0, -1.0, -1.0, 1.0]).is_err());
        assert!(MetricObject::new(Space::Frobenius { dim: 2 }, vec![1.0, 0.2, 0.3, 1.0]).is_err());
        assert!(MetricObject::new(Space::Scalar, vec![f64::NAN]).is_err());
        assert!(MetricObject::new(Space::Wasserstein1D { grid: 1 }, vec![0.0]).is_err());
    }

    #[test]
    fn embed_scalar_and_log_matrix() {
        let e = embed(&MetricObject::scalar(3.5).unwrap());
        assert_eq!(e.coords, vec![3.5]);
        assert_eq!(e.weight, 1.0);

        let e2 = std::f64::consts::E.powi(2);
        let m = MetricObject::new(Space::log_euclidean(2), diag(&[e2, 1.0])).unwrap();
        let v = embed(&m);
        let expected = [2.0, 0.0, 0.0, 0.0];
        for (a, b) in v.coords.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{:?}", v.coords);
        }
    }

    #[test]
    fn unembed_round_trips() {
        let objs = vec![
            MetricObject::gaussian(1.0, 2.0, 20).unwrap(),
            MetricObject::new(Space::log_euclidean(2), vec![2.0, 0.3, 0.3, 1.5]).unwrap(),
            MetricObject::new(
                Space::GraphLaplacian { dim: 3 },
                vec![1.5, -1.0, -0.5, -1.0, 1.2, -0.2, -0.5, -0.2, 0.7],
            )
            .unwrap(),
            MetricObject::function(vec![0.1, -0.4, 2.0]).unwrap(),
        ];
        for x in objs {
            let back = unembed(&embed(&x), x.space()).unwrap();
            assert!(distance(&x, &back).unwrap() < 1e-9);
        }
    }

    #[test]
    fn unembed_sorts_non_monotone_quantiles() {
        let v = EmbeddedVector {
            coords: vec![0.0, 2.0, 1.0],
            weight: 1.0 / 3.0,
        };
        let q = unembed(&v, &Space::Wasserstein1D { grid: 3 }).unwrap();
        assert_eq!(q.values(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn mean_of_monotone_quantiles_needs_no_sorting() {
        let a = MetricObject::quantiles(vec![-1.0, 0.0, 3.0]).unwrap();
        let b = MetricObject::quantiles(vec![0.0, 0.5, 0.6]).unwrap();
        let m = frechet_mean(&[a, b], None).unwrap();
        assert_eq!(m.values(), &[-0.5, 0.25, 1.8]);
    }

    #[test]
    fn wasserstein_mean_of_gaussians_is_gaussian() {
        let a = MetricObject::gaussian(0.0, 1.0, 100).unwrap();
        let b = MetricObject::gaussian(2.0, 1.0, 100).unwrap();
        let expected = MetricObject::gaussian(1.0, 1.0, 100).unwrap();
        let m = frechet_mean(&[a, b], None).unwrap();
        assert!(distance(&m, &expected).unwrap() < 1e-9);
    }

    #[test]
    fn log_euclidean_mean_is_geometric_mean() {
        let (a, b) = (3.0_f64, 0.2_f64);
        let x = MetricObject::new(Space::log_euclidean(2), diag(&[a, 1.0])).unwrap();
        let y = MetricObject::new(Space::log_euclidean(2), diag(&[b, 1.0])).unwrap();
        let m = frechet_mean(&[x, y], None).unwrap();
        assert!((m.entry(0, 0).unwrap() - (a * b).sqrt()).abs() < 1e-12);
        assert!((m.entry(1, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!(m.entry(0, 1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mean_of_identical_objects_is_the_object() {
        let x = MetricObject::new(Space::Frobenius { dim: 2 }, vec![1.0, 2.0, 2.0, -3.0]).unwrap();
        let m = frechet_mean(&[x.clone(), x.clone(), x.clone()], None).unwrap();
        assert!(distance(&m, &x).unwrap() < 1e-15);
        assert_eq!(frechet_variance(&[x.clone(), x.clone()], &m).unwrap(), 0.0);
    }

    #[test]
    fn scalar_variance() {
        let objs = [MetricObject::scalar(0.0).unwrap(), MetricObject::scalar(2.0).unwrap()];
        let mean = MetricObject::scalar(1.0).unwrap();
        assert_eq!(frechet_variance(&objs, &mean).unwrap(), 1.0);
    }

    #[test]
    fn weighted_mean_and_errors() {
        let objs = [MetricObject::scalar(0.0).unwrap(), MetricObject::scalar(4.0).unwrap()];
        let m = frechet_mean(&objs, Some(&[3.0, 1.0])).unwrap();
        assert_eq!(m.values(), &[1.0]);
        assert!(matches!(frechet_mean(&[], None), Err(Error::Empty(_))));
        assert!(frechet_mean(&objs, Some(&[0.0, 0.0])).is_err());
        assert!(frechet_mean(&objs, Some(&[1.0])).is_err());
    }

    #[test]
    fn empirical_quantiles_interpolate_linearly() {
        let q = MetricObject::from_samples(&[3.0, 1.0, 2.0], 4).unwrap();
        // p = 1/8, 3/8, 5/8, 7/8 on (n - 1) p = 0.25, 0.75, 1.25, 1.75
        assert_eq!(q.values(), &[1.25, 1.75, 2.25, 2.75]);
    }

    #[test]
    fn normal_quantile_accuracy() {
        assert!((standard_normal_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-12);
        assert!((standard_normal_quantile(0.5)).abs() < 1e-15);
        assert!((standard_normal_quantile(0.001) + 3.090_232_306_167_813_5).abs() < 1e-9);
    }
}
