//! Random objects for integration tests.
#![allow(dead_code)]

use frechet_sn::prefix::ObjectSeries;
use frechet_sn::space::{MetricObject, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One small representative of every space.
pub fn all_spaces() -> Vec<Space> {
    vec![
        Space::Scalar,
        Space::L2Function { grid: 7 },
        Space::Wasserstein1D { grid: 6 },
        Space::Frobenius { dim: 3 },
        Space::log_euclidean(3),
        Space::GraphLaplacian { dim: 4 },
    ]
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_object(space: &Space, rng: &mut ChaCha8Rng) -> MetricObject {
    let values = match *space {
        Space::Scalar => vec![normal(rng)],
        Space::L2Function { grid } => (0..grid).map(|_| normal(rng)).collect(),
        Space::Wasserstein1D { grid } => {
            let mut acc = normal(rng);
            (0..grid)
                .map(|_| {
                    acc += rng.random::<f64>();
                    acc
                })
                .collect()
        }
        Space::Frobenius { dim } => {
            let mut m = vec![0.0; dim * dim];
            for i in 0..dim {
                for j in i..dim {
                    let v = normal(rng);
                    m[i * dim + j] = v;
                    m[j * dim + i] = v;
                }
            }
            m
        }
        Space::LogEuclidean { dim, .. } => {
            // A A^T + I/2 is safely positive definite.
            let a: Vec<f64> = (0..dim * dim).map(|_| normal(rng)).collect();
            let mut m = vec![0.0; dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    m[i * dim + j] = (0..dim).map(|l| a[i * dim + l] * a[j * dim + l]).sum::<f64>();
                }
                m[i * dim + i] += 0.5;
            }
            m
        }
        Space::GraphLaplacian { dim } => {
            let mut m = vec![0.0; dim * dim];
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let w: f64 = rng.random::<f64>() * 2.0;
                    m[i * dim + j] = -w;
                    m[j * dim + i] = -w;
                    m[i * dim + i] += w;
                    m[j * dim + j] += w;
                }
            }
            m
        }
    };
    MetricObject::new(*space, values).expect("generated object is valid")
}

pub fn random_series(space: &Space, n: usize, rng: &mut ChaCha8Rng) -> ObjectSeries {
    ObjectSeries::new((0..n).map(|_| random_object(space, rng)).collect()).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
