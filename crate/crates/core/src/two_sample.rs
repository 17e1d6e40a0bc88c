//! Self-normalized two-sample (and N-sample) tests.
//!
//! With `n = n1 + n2` and `r = k/n`, sample `i` contributes its first
//! `floor(k n_i / n)` objects to the recursive estimates, and
//!
//! ```text
//! T(r)   = r (V1_r - V2_r)
//! T^C(r) = r (V^C1_r + V^C2_r - V1_r - V2_r) = 2 r w |mu1_r - mu2_r|^2
//! ```
//!
//! where the second form uses that the contaminated variance of a window
//! about `omega` exceeds its Fréchet variance by exactly `w |mean - omega|^2`
//! in the embedding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::null_dist::{floor_frac, NullFamily, NullProvenance, NullSampleSet};
use crate::prefix::{ObjectSeries, PrefixStats};
use crate::rng::par_map;
use crate::space::embed;

/// Normalizers below this fraction of the profile energy are treated as zero.
const DEGENERATE_RTOL: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TestVariant {
    D1,
    D2,
    DN1,
    DN2,
}

impl TestVariant {
    fn uses_contamination(self) -> bool {
        matches!(self, TestVariant::D2 | TestVariant::DN2)
    }
}

/// `num / den`, or [`Error::DegenerateNormalizer`] when `den` vanishes
/// relative to `energy` (the sum of squared profile values).
pub(crate) fn sn_ratio(num: f64, den: f64, energy: f64) -> Result<f64> {
    if !(den.is_finite() && num.is_finite()) || den <= DEGENERATE_RTOL * energy || den <= 0.0 {
        return Err(Error::DegenerateNormalizer);
    }
    Ok(num / den)
}

/// Recursive profiles `T(k/n)` and `T^C(k/n)` for `k = floor(n eta)..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoSampleProfiles {
    pub n1: usize,
    pub n2: usize,
    pub eta: f64,
    pub k_start: usize,
    pub t: Vec<f64>,
    pub tc: Vec<f64>,
}

impl TwoSampleProfiles {
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn k_values(&self) -> impl Iterator<Item = usize> {
        self.k_start..=self.n()
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!("eta = {eta} must lie in (0, 1)")));
    }
    Ok(())
}

/// Prefix sums for several samples in one coordinate frame. The origin is
/// the average of the samples' first objects, which for two samples does
/// not depend on their order, so swapping them is exact.
fn shared_prefixes(samples: &[&ObjectSeries]) -> Result<Vec<PrefixStats>> {
    let first = samples.first().ok_or(Error::Empty("sample list"))?;
    for s in &samples[1..] {
        first.space().ensure_same(s.space())?;
    }
    let mut origin = vec![0.0; first.space().value_len()];
    for s in samples {
        for (o, x) in origin.iter_mut().zip(embed(&s.objects()[0]).coords) {
            *o += x;
        }
    }
    let count = samples.len() as f64;
    origin.iter_mut().for_each(|o| *o /= count);
    samples.iter().map(|s| PrefixStats::with_origin(s, &origin)).collect()
}

/// First `k` in the trimmed range and a check that every window is nonempty.
fn start_index(sizes: &[usize], eta: f64) -> Result<usize> {
    check_eta(eta)?;
    let n: usize = sizes.iter().sum();
    let k0 = floor_frac(n, eta);
    if k0 == 0 || sizes.iter().any(|&ni| k0 * ni / n == 0) {
        return Err(Error::InvalidParameter(format!(
            "eta = {eta} leaves an empty recursive subsample for sizes {sizes:?}"
        )));
    }
    Ok(k0)
}

/// Profiles of one pair inside a pooled sample of total size `n`.
fn pair_profiles(p: &PrefixStats, q: &PrefixStats, n: usize, k0: usize) -> (Vec<f64>, Vec<f64>) {
    let (ni, nj) = (p.len(), q.len());
    let mut t = Vec::with_capacity(n - k0 + 1);
    let mut tc = Vec::with_capacity(n - k0 + 1);
    for k in k0..=n {
        let (a, b) = (k * ni / n, k * nj / n);
        let r = k as f64 / n as f64;
        t.push(r * (p.var(0, a) - q.var(0, b)));
        tc.push(2.0 * r * p.prefix_mean_gap(a, q, b));
    }
    (t, tc)
}

pub fn profiles(sample1: &ObjectSeries, sample2: &ObjectSeries, eta: f64) -> Result<TwoSampleProfiles> {
    let prefixes = shared_prefixes(&[sample1, sample2])?;
    let (n1, n2) = (sample1.len(), sample2.len());
    let k0 = start_index(&[n1, n2], eta)?;
    let (t, tc) = pair_profiles(&prefixes[0], &prefixes[1], n1 + n2, k0);
    Ok(TwoSampleProfiles {
        n1,
        n2,
        eta,
        k_start: k0,
        t,
        tc,
    })
}

/// `(sum_k (x_k - (k/n) x_n)^2, sum_k x_k^2)` over a profile starting at `k0`.
fn centred_energy(x: &[f64], k0: usize, n: usize) -> (f64, f64) {
    let last = *x.last().expect("nonempty profile");
    let mut den = 0.0;
    let mut energy = 0.0;
    for (i, v) in x.iter().enumerate() {
        let d = v - (k0 + i) as f64 / n as f64 * last;
        den += d * d;
        energy += v * v;
    }
    (den, energy)
}

/// Self-normalized statistic aggregated over pairwise profiles.
fn aggregate(pairs: &[(&[f64], &[f64])], k0: usize, n: usize, contaminated: bool) -> Result<f64> {
    let (mut num, mut den, mut energy) = (0.0, 0.0, 0.0);
    for &(t, tc) in pairs {
        let profiles: &[&[f64]] = if contaminated { &[t, tc] } else { &[t] };
        for x in profiles {
            let last = x.last().expect("nonempty profile");
            num += last * last;
            let (d, e) = centred_energy(x, k0, n);
            den += d;
            energy += e;
        }
    }
    sn_ratio(n as f64 * num, den, energy)
}

pub fn d1_statistic(p: &TwoSampleProfiles) -> Result<f64> {
    aggregate(&[(&p.t, &p.tc)], p.k_start, p.n(), false)
}

pub fn d2_statistic(p: &TwoSampleProfiles) -> Result<f64> {
    aggregate(&[(&p.t, &p.tc)], p.k_start, p.n(), true)
}

/// Statistics of the N-sample extension; `None` marks a vanishing normalizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NSampleStatistics {
    pub dn1: Option<f64>,
    pub dn2: Option<f64>,
}

fn degenerate_to_none(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::DegenerateNormalizer) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Aggregates all pairwise profiles of `N >= 2` samples with `n = sum n_i`.
pub fn n_sample_statistics(samples: &[ObjectSeries], eta: f64) -> Result<NSampleStatistics> {
    if samples.len() < 2 {
        return Err(Error::InvalidParameter("at least two samples are required".into()));
    }
    let refs: Vec<&ObjectSeries> = samples.iter().collect();
    let prefixes = shared_prefixes(&refs)?;
    let sizes: Vec<usize> = samples.iter().map(ObjectSeries::len).collect();
    let n: usize = sizes.iter().sum();
    let k0 = start_index(&sizes, eta)?;
    let mut pairs = Vec::new();
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            pairs.push(pair_profiles(&prefixes[i], &prefixes[j], n, k0));
        }
    }
    let pairs: Vec<(&[f64], &[f64])> = pairs.iter().map(|(t, tc)| (t.as_slice(), tc.as_slice())).collect();
    Ok(NSampleStatistics {
        dn1: degenerate_to_none(aggregate(&pairs, k0, n, false))?,
        dn2: degenerate_to_none(aggregate(&pairs, k0, n, true))?,
    })
}

/// Outcome of a calibrated test. A degenerate input yields no statistic,
/// p-value 1 and no rejection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub statistic: Option<f64>,
    pub variant: TestVariant,
    pub eta: f64,
    pub alpha: f64,
    pub critical_value: f64,
    pub p_value: f64,
    pub reject: bool,
    pub degenerate: bool,
    pub sample_sizes: Vec<usize>,
    /// Set when the sample sizes differ: the null is then pivotal only if
    /// the samples are cross-independent.
    pub unequal_sizes: bool,
    pub null: NullProvenance,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    Ok(())
}

fn check_deta_null(null: &NullSampleSet, eta: f64) -> Result<()> {
    match null.family() {
        NullFamily::Deta { eta: e } if (e - eta).abs() <= 1e-12 => Ok(()),
        other => Err(Error::NullMismatch(format!(
            "two-sample test with eta = {eta} needs a D_eta null with the same eta, got {other:?}"
        ))),
    }
}

pub(crate) fn report_from(
    statistic: Result<f64>,
    variant: TestVariant,
    eta: f64,
    alpha: f64,
    sizes: Vec<usize>,
    null: &NullSampleSet,
) -> Result<TestReport> {
    let statistic = degenerate_to_none(statistic)?;
    let critical_value = null.quantile(1.0 - alpha);
    let unequal_sizes = sizes.windows(2).any(|w| w[0] != w[1]);
    Ok(TestReport {
        statistic,
        variant,
        eta,
        alpha,
        critical_value,
        p_value: statistic.map_or(1.0, |s| null.p_value(s)),
        reject: statistic.is_some_and(|s| s > critical_value),
        degenerate: statistic.is_none(),
        sample_sizes: sizes,
        unequal_sizes,
        null: *null.provenance(),
    })
}

pub fn run_two_sample_test(
    sample1: &ObjectSeries,
    sample2: &ObjectSeries,
    eta: f64,
    alpha: f64,
    variant: TestVariant,
    null: &NullSampleSet,
) -> Result<TestReport> {
    check_alpha(alpha)?;
    check_deta_null(null, eta)?;
    let p = profiles(sample1, sample2, eta)?;
    let statistic = match variant {
        TestVariant::D1 | TestVariant::DN1 => d1_statistic(&p),
        TestVariant::D2 | TestVariant::DN2 => d2_statistic(&p),
    };
    let variant = if variant.uses_contamination() {
        TestVariant::D2
    } else {
        TestVariant::D1
    };
    report_from(statistic, variant, eta, alpha, vec![p.n1, p.n2], null)
}

/// Pairwise two-sample p-values, mirrored across the diagonal; the diagonal is 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PValueMatrix {
    pub p_values: Vec<Vec<f64>>,
    pub statistics: Vec<Vec<Option<f64>>>,
    pub degenerate: Vec<Vec<bool>>,
}

pub fn pairwise_pvalue_matrix(
    samples: &[ObjectSeries],
    eta: f64,
    variant: TestVariant,
    null: &NullSampleSet,
) -> Result<PValueMatrix> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::InvalidParameter("at least two samples are required".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))).collect();
    let reports = par_map(pairs.len(), |idx| {
        let (i, j) = pairs[idx];
        run_two_sample_test(&samples[i], &samples[j], eta, 0.05, variant, null)
    });
    let mut out = PValueMatrix {
        p_values: vec![vec![1.0; m]; m],
        statistics: vec![vec![None; m]; m],
        degenerate: vec![vec![false; m]; m],
    };
    for ((i, j), rep) in pairs.into_iter().zip(reports) {
        let rep = rep?;
        for (a, b) in [(i, j), (j, i)] {
            out.p_values[a][b] = rep.p_value;
            out.statistics[a][b] = rep.statistic;
            out.degenerate[a][b] = rep.degenerate;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalars(v: impl IntoIterator<Item = f64>) -> ObjectSeries {
        ObjectSeries::scalars(&v.into_iter().collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identical_samples_are_degenerate() {
        let s = scalars((0..30).map(|i| ((i * 7) % 11) as f64));
        let p = profiles(&s, &s, 0.15).unwrap();
        assert!(p.t.iter().all(|&x| x == 0.0));
        assert!(p.tc.iter().all(|&x| x == 0.0));
        assert!(matches!(d1_statistic(&p), Err(Error::DegenerateNormalizer)));
        assert!(matches!(d2_statistic(&p), Err(Error::DegenerateNormalizer)));
    }

    #[test]
    fn d1_matches_hand_evaluation() {
        // Samples 1..=20 and 6..=25: variances agree at every r, so T = 0 and
        // D1 is degenerate; with a spread change it is well defined.
        let a = scalars((1..=20).map(f64::from));
        let b = scalars((1..=20).map(|x| 2.0 * f64::from(x) + 5.0));
        let p = profiles(&a, &b, 0.15).unwrap();
        let n = 40usize;
        let var = |m: usize, scale: f64| {
            // Variance of {scale * 1, ..., scale * m} (shift-free).
            scale * scale * ((m * m) as f64 - 1.0) / 12.0
        };
        let t: Vec<f64> = (6..=n)
            .map(|k| (k as f64 / n as f64) * (var(k / 2, 1.0) - var(k / 2, 2.0)))
            .collect();
        for (x, y) in p.t.iter().zip(&t) {
            assert!((x - y).abs() < 1e-10);
        }
        let t1 = t[t.len() - 1];
        let den: f64 = t
            .iter()
            .enumerate()
            .map(|(i, v)| (v - (6 + i) as f64 / n as f64 * t1).powi(2))
            .sum();
        let d1 = d1_statistic(&p).unwrap();
        assert!((d1 - n as f64 * t1 * t1 / den).abs() < 1e-9 * d1);
    }

    #[test]
    fn pure_shift_has_vanishing_variance_profile() {
        let a = scalars((1..=20).map(f64::from));
        let b = scalars((1..=20).map(|x| f64::from(x) + 5.0));
        let p = profiles(&a, &b, 0.15).unwrap();
        assert!(p.t.iter().all(|x| x.abs() < 1e-12));
        assert!(p.tc.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn swap_invariance_for_equal_sizes() {
        let a = scalars((0..40).map(|i| (i as f64 * 1.3).sin()));
        let b = scalars((0..40).map(|i| 1.5 * (i as f64 * 0.7).cos()));
        let pab = profiles(&a, &b, 0.15).unwrap();
        let pba = profiles(&b, &a, 0.15).unwrap();
        assert_eq!(d1_statistic(&pab).unwrap(), d1_statistic(&pba).unwrap());
        assert_eq!(d2_statistic(&pab).unwrap(), d2_statistic(&pba).unwrap());
    }

    #[test]
    fn n_sample_reduces_to_two_sample() {
        let a = scalars((0..30).map(|i| (i as f64 * 1.3).sin()));
        let b = scalars((0..30).map(|i| 1.5 * (i as f64 * 0.7).cos()));
        let p = profiles(&a, &b, 0.15).unwrap();
        let ns = n_sample_statistics(&[a, b], 0.15).unwrap();
        assert!((ns.dn1.unwrap() - d1_statistic(&p).unwrap()).abs() < 1e-12);
        assert!((ns.dn2.unwrap() - d2_statistic(&p).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn n_sample_identical_is_degenerate() {
        let a = scalars((0..20).map(|i| (i as f64).sqrt()));
        let ns = n_sample_statistics(&[a.clone(), a.clone(), a], 0.15).unwrap();
        assert_eq!(ns, NSampleStatistics { dn1: None, dn2: None });
    }

    #[test]
    fn tiny_samples_are_rejected() {
        let a = scalars([1.0, 2.0, 3.0]);
        assert!(profiles(&a, &a, 0.15).is_err());
        assert!(profiles(&a, &a, 1.5).is_err());
    }

    #[test]
    fn report_decision_rules() {
        let meta = NullProvenance {
            family: NullFamily::Deta { eta: 0.15 },
            grid: 100,
            replications: 4,
            seed: 0,
            redraws: 0,
        };
        let null = NullSampleSet::from_draws(meta, vec![10.0, 20.0, 30.0, 40.0]).unwrap();
        let r = report_from(Ok(5.0), TestVariant::D1, 0.15, 0.25, vec![10, 10], &null).unwrap();
        assert_eq!(r.critical_value, 30.0);
        assert_eq!(r.p_value, 1.0);
        assert!(!r.reject);
        let r = report_from(Ok(35.0), TestVariant::D1, 0.15, 0.25, vec![10, 12], &null).unwrap();
        assert!(r.reject && r.unequal_sizes);
        assert_eq!(r.p_value, 2.0 / 5.0);
        let r = report_from(
            Err(Error::DegenerateNormalizer),
            TestVariant::D2,
            0.15,
            0.25,
            vec![1, 1],
            &null,
        )
        .unwrap();
        assert!(r.degenerate && !r.reject && r.statistic.is_none());
    }
}
