//! Object series and prefix-sum statistics over their embeddings.
//!
//! For a series `Y_1..Y_n` with embeddings `x_t`, [`PrefixStats`] stores
//! `S_k = sum_{t<=k} (x_t - o)` and `Q_k = sum_{t<=k} |x_t - o|^2` for an
//! origin `o`. Any window `(a, b]` then has
//!
//! ```text
//! mean = o + (S_b - S_a) / m
//! V    = w * [ (Q_b - Q_a) / m - |S_b - S_a|^2 / m^2 ],   m = b - a
//! ```
//!
//! in `O(D)`. Measuring from an origin inside the data keeps the subtraction
//! in `V` well conditioned; a constant series gives exact zeros.

use crate::error::{Error, Result};
use crate::space::{common_space, embed_into, sq_dist, unembed, EmbeddedVector, MetricObject, Space};

/// A nonempty sequence of objects from one space.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectSeries {
    space: Space,
    objects: Vec<MetricObject>,
}

impl ObjectSeries {
    pub fn new(objects: Vec<MetricObject>) -> Result<Self> {
        let space = common_space(&objects)?;
        Ok(ObjectSeries { space, objects })
    }

    pub fn scalars(values: &[f64]) -> Result<Self> {
        ObjectSeries::new(values.iter().map(|&v| MetricObject::scalar(v)).collect::<Result<_>>()?)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[MetricObject] {
        &self.objects
    }

    pub fn into_objects(self) -> Vec<MetricObject> {
        self.objects
    }

    /// Objects `lo..=hi` (1-based, inclusive) as a new series.
    pub fn window(&self, lo: usize, hi: usize) -> Result<ObjectSeries> {
        check_window(lo, hi, self.len())?;
        ObjectSeries::new(self.objects[lo - 1..hi].to_vec())
    }
}

fn check_window(lo: usize, hi: usize, n: usize) -> Result<()> {
    if lo == 0 || lo > hi || hi > n {
        return Err(Error::EmptyWindow { lo, hi, n });
    }
    Ok(())
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Prefix sums of embedded coordinates and squared norms.
#[derive(Debug, Clone)]
pub struct PrefixStats {
    space: Space,
    n: usize,
    dim: usize,
    weight: f64,
    origin: Vec<f64>,
    sums: Vec<f64>,
    sq: Vec<f64>,
}

impl PrefixStats {
    /// Prefix sums with the first object's embedding as origin.
    pub fn build(series: &ObjectSeries) -> Self {
        let dim = series.space.value_len();
        let mut origin = vec![0.0; dim];
        embed_into(&series.objects[0], &mut origin);
        Self::build_inner(series, origin)
    }

    /// Prefix sums about a caller-chosen origin, so that windows of several
    /// series can be compared in one coordinate frame.
    pub fn with_origin(series: &ObjectSeries, origin: &[f64]) -> Result<Self> {
        if origin.len() != series.space.value_len() {
            return Err(Error::LengthMismatch {
                expected: series.space.value_len(),
                got: origin.len(),
            });
        }
        Ok(Self::build_inner(series, origin.to_vec()))
    }

    fn build_inner(series: &ObjectSeries, origin: Vec<f64>) -> Self {
        let n = series.len();
        let dim = origin.len();
        let mut sums = vec![0.0; (n + 1) * dim];
        let mut sq = vec![0.0; n + 1];
        let mut acc = vec![Neumaier::default(); dim];
        let mut acc_sq = Neumaier::default();
        let mut x = vec![0.0; dim];
        for (t, obj) in series.objects.iter().enumerate() {
            embed_into(obj, &mut x);
            let row = &mut sums[(t + 1) * dim..(t + 2) * dim];
            let mut norm = 0.0;
            for ((xi, o), (a, s)) in x.iter().zip(&origin).zip(acc.iter_mut().zip(row.iter_mut())) {
                let d = xi - o;
                norm += d * d;
                a.add(d);
                *s = a.value();
            }
            acc_sq.add(norm);
            sq[t + 1] = acc_sq.value();
        }
        PrefixStats {
            space: series.space,
            n,
            dim,
            weight: series.space.weight(),
            origin,
            sums,
            sq,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    /// `S_k`, relative to the origin.
    pub fn cum_sum(&self, k: usize) -> &[f64] {
        &self.sums[k * self.dim..(k + 1) * self.dim]
    }

    /// `Q_k`, relative to the origin and without the weight.
    pub fn cum_sq(&self, k: usize) -> f64 {
        self.sq[k]
    }

    /// Unclipped Fréchet variance of the half-open window `(a, b]`.
    pub(crate) fn raw_var(&self, a: usize, b: usize) -> f64 {
        let m = (b - a) as f64;
        let (sa, sb) = (self.cum_sum(a), self.cum_sum(b));
        let s2: f64 = sa.iter().zip(sb).map(|(x, y)| (y - x) * (y - x)).sum();
        self.weight * ((self.sq[b] - self.sq[a]) / m - s2 / (m * m))
    }

    /// Fréchet variance of `(a, b]`, clipped at zero.
    pub(crate) fn var(&self, a: usize, b: usize) -> f64 {
        self.raw_var(a, b).max(0.0)
    }

    /// Tolerance below zero attributable to cancellation in [`Self::raw_var`].
    fn var_tol(&self, a: usize, b: usize) -> f64 {
        let scale = self.weight * (self.sq[b] - self.sq[a]) / (b - a) as f64;
        1e-12 * scale.max(1.0)
    }

    /// `w * |mean(a, r] - mean(r, b]|^2`.
    pub(crate) fn mean_gap(&self, a: usize, r: usize, b: usize) -> f64 {
        let (sa, sr, sb) = (self.cum_sum(a), self.cum_sum(r), self.cum_sum(b));
        let (m1, m2) = ((r - a) as f64, (b - r) as f64);
        let d: f64 = (0..self.dim)
            .map(|i| {
                let g = (sr[i] - sa[i]) / m1 - (sb[i] - sr[i]) / m2;
                g * g
            })
            .sum();
        self.weight * d
    }

    /// `w * |mean(0, k] - mean'(0, l]|^2` across two series sharing an origin.
    pub(crate) fn prefix_mean_gap(&self, k: usize, other: &PrefixStats, l: usize) -> f64 {
        let (s, t) = (self.cum_sum(k), other.cum_sum(l));
        let (k, l) = (k as f64, l as f64);
        let d: f64 = s
            .iter()
            .zip(t)
            .map(|(x, y)| {
                let g = x / k - y / l;
                g * g
            })
            .sum();
        self.weight * d
    }

    fn window_mean_relative(&self, lo: usize, hi: usize) -> Result<Vec<f64>> {
        check_window(lo, hi, self.n)?;
        let m = (hi - lo + 1) as f64;
        let (sa, sb) = (self.cum_sum(lo - 1), self.cum_sum(hi));
        Ok(sa.iter().zip(sb).map(|(x, y)| (y - x) / m).collect())
    }

    /// Embedded Fréchet mean of objects `lo..=hi` (1-based, inclusive).
    pub fn subsample_mean_embedded(&self, lo: usize, hi: usize) -> Result<EmbeddedVector> {
        let rel = self.window_mean_relative(lo, hi)?;
        Ok(EmbeddedVector {
            coords: rel.iter().zip(&self.origin).map(|(r, o)| r + o).collect(),
            weight: self.weight,
        })
    }

    /// Fréchet mean of objects `lo..=hi` (1-based, inclusive).
    pub fn subsample_mean(&self, lo: usize, hi: usize) -> Result<MetricObject> {
        unembed(&self.subsample_mean_embedded(lo, hi)?, &self.space)
    }

    /// Fréchet variance of objects `lo..=hi` (1-based, inclusive).
    pub fn subsample_variance(&self, lo: usize, hi: usize) -> Result<f64> {
        check_window(lo, hi, self.n)?;
        let v = self.raw_var(lo - 1, hi);
        if v < -self.var_tol(lo - 1, hi) {
            return Err(Error::Numerical(format!(
                "window ({lo}, {hi}) has negative variance {v:e} beyond rounding"
            )));
        }
        Ok(v.max(0.0))
    }

    /// `(1/m) sum_{t=lo..=hi} d^2(Y_t, omega)`, computed as the window
    /// variance plus `w * |mean - omega|^2`.
    pub fn contaminated_window_mean(&self, lo: usize, hi: usize, omega: &MetricObject) -> Result<f64> {
        self.space.ensure_same(omega.space())?;
        let v = self.subsample_variance(lo, hi)?;
        let rel = self.window_mean_relative(lo, hi)?;
        let mut w = vec![0.0; self.dim];
        embed_into(omega, &mut w);
        w.iter_mut().zip(&self.origin).for_each(|(x, o)| *x -= o);
        Ok(v + self.weight * sq_dist(&rel, &w))
    }
}
