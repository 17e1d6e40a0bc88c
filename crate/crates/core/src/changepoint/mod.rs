//! Self-normalized single change-point tests and wild binary segmentation.
//!
//! On a segment of length `m`, the contrast between windows `(a, l]` and
//! `(l, b]` is
//!
//! ```text
//! T(l; a, b)   = (l - a)(b - l) / (m (b - a)) * (V(a, l) - V(l, b))
//! T^C(l; a, b) = (l - a)(b - l) / (m (b - a)) * 2 w |mean(a, l) - mean(l, b)|^2
//! ```
//!
//! and the scan statistic at a split `k` with inner trim `h = floor(m eta2)` is
//!
//! ```text
//! D(k) = m T(k; 0, m)^2 / ( sum_{l=h}^{k-h} T(l; 0, k)^2 + sum_{l=k+h}^{m-h} T(l; k, m)^2 )
//! ```
//!
//! (SN1), with `T^2 + (T^C)^2` in place of `T^2` throughout for SN2. A full
//! scan costs `O(m^2)` window evaluations.

mod wbs;

pub use wbs::{draw_intervals, wbs_detect, wbs_threshold, Interval, Segmentation, WbsConfig, WbsThreshold};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::null_dist::{floor_frac, NullFamily, NullProvenance, NullSampleSet};
use crate::prefix::{ObjectSeries, PrefixStats};
use crate::two_sample::sn_ratio;

/// Gram matrices are used above this embedding dimension...
const GRAM_MIN_DIM: usize = 4;
/// ...for series up to this length (the matrix has `(n + 1)^2` entries).
const GRAM_MAX_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CpVariant {
    SN1,
    SN2,
}

/// Window queries on a series' prefix sums. With a Gram matrix of the
/// prefix sums each query costs `O(1)` instead of `O(D)`.
pub(crate) struct WindowAlgebra<'a> {
    prefix: &'a PrefixStats,
    gram: Option<Vec<f64>>,
}

impl<'a> WindowAlgebra<'a> {
    pub(crate) fn new(prefix: &'a PrefixStats) -> Self {
        if prefix.dim() >= GRAM_MIN_DIM && prefix.len() <= GRAM_MAX_LEN {
            Self::with_gram(prefix)
        } else {
            Self::direct(prefix)
        }
    }

    pub(crate) fn direct(prefix: &'a PrefixStats) -> Self {
        WindowAlgebra { prefix, gram: None }
    }

    pub(crate) fn with_gram(prefix: &'a PrefixStats) -> Self {
        let rows = prefix.len() + 1;
        let mut s = DMatrix::<f64>::zeros(rows, prefix.dim());
        for k in 0..rows {
            for (j, v) in prefix.cum_sum(k).iter().enumerate() {
                s[(k, j)] = *v;
            }
        }
        let g = &s * s.transpose();
        // Column-major storage of a symmetric matrix reads the same row-major.
        let gram = g.as_slice().to_vec();
        WindowAlgebra {
            prefix,
            gram: Some(gram),
        }
    }

    fn g(gram: &[f64], stride: usize, i: usize, j: usize) -> f64 {
        gram[i * stride + j]
    }

    /// Fréchet variance of `(a, b]`, clipped at zero.
    pub(crate) fn var(&self, a: usize, b: usize) -> f64 {
        match &self.gram {
            None => self.prefix.var(a, b),
            Some(gram) => {
                let st = self.prefix.len() + 1;
                let m = (b - a) as f64;
                let s2 = Self::g(gram, st, b, b) - 2.0 * Self::g(gram, st, a, b) + Self::g(gram, st, a, a);
                let q = self.prefix.cum_sq(b) - self.prefix.cum_sq(a);
                (self.prefix.weight() * (q / m - s2 / (m * m))).max(0.0)
            }
        }
    }

    /// `w |mean(a, r] - mean(r, b]|^2`.
    pub(crate) fn gap(&self, a: usize, r: usize, b: usize) -> f64 {
        match &self.gram {
            None => self.prefix.mean_gap(a, r, b),
            Some(gram) => {
                let st = self.prefix.len() + 1;
                let g = |i, j| Self::g(gram, st, i, j);
                let (m1, m2) = ((r - a) as f64, (b - r) as f64);
                let left = g(r, r) - 2.0 * g(a, r) + g(a, a);
                let right = g(b, b) - 2.0 * g(r, b) + g(r, r);
                let cross = g(r, b) - g(r, r) - g(a, b) + g(a, r);
                let d = left / (m1 * m1) - 2.0 * cross / (m1 * m2) + right / (m2 * m2);
                (self.prefix.weight() * d).max(0.0)
            }
        }
    }

    /// `(T, T^C)` for windows `(a, l]`, `(l, b]` on a segment of length `m`.
    fn contrast(&self, a: usize, l: usize, b: usize, m: usize) -> (f64, f64) {
        let factor = ((l - a) * (b - l)) as f64 / (m as f64 * (b - a) as f64);
        let t = factor * (self.var(a, l) - self.var(l, b));
        let tc = factor * 2.0 * self.gap(a, l, b);
        (t, tc)
    }
}

/// Split range and inner trim for a segment of length `m`.
pub(crate) fn scan_ranges(m: usize, eta1: f64, eta2: f64) -> Result<(usize, usize, usize)> {
    check_etas(eta1, eta2)?;
    let lo = floor_frac(m, eta1);
    let h = floor_frac(m, eta2);
    if h == 0 || lo == 0 || lo > m - lo {
        return Err(Error::InvalidParameter(format!(
            "segment of length {m} is too short for eta1 = {eta1}, eta2 = {eta2}"
        )));
    }
    Ok((lo, m - lo, h))
}

pub(crate) fn check_etas(eta1: f64, eta2: f64) -> Result<()> {
    if !(eta1 > 0.0 && eta1 < 0.5) {
        return Err(Error::InvalidParameter(format!("eta1 = {eta1} must lie in (0, 1/2)")));
    }
    if !(eta2 > 0.0 && eta1 > 2.0 * eta2) {
        return Err(Error::InvalidParameter(format!(
            "eta2 = {eta2} must be positive with eta1 > 2 eta2"
        )));
    }
    Ok(())
}

/// Both scan curves over one segment; degenerate splits hold 0.
pub(crate) struct SegmentScan {
    pub k_start: usize,
    pub sn1: Vec<f64>,
    pub sn2: Vec<f64>,
    pub degenerate1: Vec<bool>,
    pub degenerate2: Vec<bool>,
}

impl SegmentScan {
    /// Largest value and its (smallest) local split, `None` if every split is degenerate.
    pub(crate) fn argmax(values: &[f64], degenerate: &[bool], k_start: usize) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, (&v, &d)) in values.iter().zip(degenerate).enumerate() {
            if !d && best.map_or(true, |(_, b)| v > b) {
                best = Some((k_start + i, v));
            }
        }
        best
    }
}

/// Scans the segment `(s, e]` of the series behind `alg`.
pub(crate) fn scan_segment(
    alg: &WindowAlgebra<'_>,
    s: usize,
    e: usize,
    eta1: f64,
    eta2: f64,
    want_sn1: bool,
) -> Result<SegmentScan> {
    let m = e - s;
    let (lo, hi, h) = scan_ranges(m, eta1, eta2)?;
    let reference = alg.var(s, e);
    let len = hi - lo + 1;
    let mut out = SegmentScan {
        k_start: lo,
        sn1: Vec::with_capacity(len),
        sn2: Vec::with_capacity(len),
        degenerate1: Vec::with_capacity(len),
        degenerate2: Vec::with_capacity(len),
    };
    for k in lo..=hi {
        let (t, tc) = alg.contrast(s, s + k, e, m);
        let (mut den1, mut den2, mut terms) = (0.0, 0.0, 0usize);
        if k >= 2 * h {
            for l in h..=(k - h) {
                let (a, b) = alg.contrast(s, s + l, s + k, m);
                den1 += a * a;
                den2 += a * a + b * b;
            }
            terms += k - 2 * h + 1;
        }
        if k + 2 * h <= m {
            for l in (k + h)..=(m - h) {
                let (a, b) = alg.contrast(s + k, s + l, e, m);
                den1 += a * a;
                den2 += a * a + b * b;
            }
            terms += m - k - 2 * h + 1;
        }
        let energy = terms as f64 * reference * reference;
        let mf = m as f64;
        let push = |r: Result<f64>, vals: &mut Vec<f64>, deg: &mut Vec<bool>| match r {
            Ok(v) => {
                vals.push(v);
                deg.push(false);
            }
            Err(_) => {
                vals.push(0.0);
                deg.push(true);
            }
        };
        if want_sn1 {
            push(sn_ratio(mf * t * t, den1, energy), &mut out.sn1, &mut out.degenerate1);
        }
        push(
            sn_ratio(mf * (t * t + tc * tc), den2, energy),
            &mut out.sn2,
            &mut out.degenerate2,
        );
    }
    Ok(out)
}

/// `(T(r; a, b), T^C(r; a, b))` for fractions `a < r < b` of the series length,
/// using windows `(floor(n a), floor(n r)]` and `(floor(n r), floor(n b)]`.
pub fn window_contrast(prefix: &PrefixStats, r: f64, a: f64, b: f64) -> Result<(f64, f64)> {
    let n = prefix.len();
    if !(0.0 <= a && a < r && r < b && b <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= a < r < b <= 1, got ({a}, {r}, {b})"
        )));
    }
    let (ia, ir, ib) = (floor_frac(n, a), floor_frac(n, r), floor_frac(n, b));
    if ia >= ir || ir >= ib {
        return Err(Error::EmptyWindow {
            lo: ia + 1,
            hi: ir.max(ib),
            n,
        });
    }
    let factor = (r - a) * (b - r) / (b - a);
    let t = factor * (prefix.var(ia, ir) - prefix.var(ir, ib));
    let tc = factor * 2.0 * prefix.mean_gap(ia, ir, ib);
    Ok((t, tc))
}

/// Scan statistic `D(k)` over `k = floor(n eta1)..=n - floor(n eta1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContrastCurve {
    pub n: usize,
    pub eta1: f64,
    pub eta2: f64,
    pub variant: CpVariant,
    pub k_start: usize,
    /// Degenerate splits hold 0.
    pub values: Vec<f64>,
    pub degenerate: Vec<bool>,
}

impl ContrastCurve {
    pub fn k_values(&self) -> impl Iterator<Item = usize> {
        self.k_start..self.k_start + self.values.len()
    }

    /// Smallest split attaining the maximum; `None` if every split is degenerate.
    pub fn argmax(&self) -> Option<(usize, f64)> {
        SegmentScan::argmax(&self.values, &self.degenerate, self.k_start)
    }
}

/// SN1 and SN2 curves from a single scan.
pub fn contrast_curves(series: &ObjectSeries, eta1: f64, eta2: f64) -> Result<(ContrastCurve, ContrastCurve)> {
    let prefix = PrefixStats::build(series);
    let alg = WindowAlgebra::new(&prefix);
    let n = series.len();
    let scan = scan_segment(&alg, 0, n, eta1, eta2, true)?;
    let curve = |variant, values, degenerate| ContrastCurve {
        n,
        eta1,
        eta2,
        variant,
        k_start: scan.k_start,
        values,
        degenerate,
    };
    Ok((
        curve(CpVariant::SN1, scan.sn1.clone(), scan.degenerate1.clone()),
        curve(CpVariant::SN2, scan.sn2.clone(), scan.degenerate2.clone()),
    ))
}

pub fn contrast_curve(series: &ObjectSeries, eta1: f64, eta2: f64, variant: CpVariant) -> Result<ContrastCurve> {
    let (c1, c2) = contrast_curves(series, eta1, eta2)?;
    Ok(match variant {
        CpVariant::SN1 => c1,
        CpVariant::SN2 => c2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChangePointReport {
    /// Maximum of the curve; `None` when every split is degenerate.
    pub statistic: Option<f64>,
    pub k_hat: Option<usize>,
    pub tau_hat: Option<f64>,
    pub critical_value: f64,
    pub p_value: f64,
    pub reject: bool,
    pub degenerate: bool,
    pub variant: CpVariant,
    pub n: usize,
    pub eta1: f64,
    pub eta2: f64,
    pub alpha: f64,
    pub null: NullProvenance,
}

pub(crate) fn check_seta_null(null: &NullSampleSet, eta1: f64, eta2: f64) -> Result<()> {
    match null.family() {
        NullFamily::Seta { eta1: a, eta2: b } if (a - eta1).abs() <= 1e-12 && (b - eta2).abs() <= 1e-12 => Ok(()),
        other => Err(Error::NullMismatch(format!(
            "change-point test with (eta1, eta2) = ({eta1}, {eta2}) needs a matching S_eta null, got {other:?}"
        ))),
    }
}

/// Report for an already computed curve.
pub fn report_for_curve(curve: &ContrastCurve, alpha: f64, null: &NullSampleSet) -> Result<ChangePointReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    check_seta_null(null, curve.eta1, curve.eta2)?;
    let best = curve.argmax();
    let critical_value = null.quantile(1.0 - alpha);
    let statistic = best.map(|(_, v)| v);
    Ok(ChangePointReport {
        statistic,
        k_hat: best.map(|(k, _)| k),
        tau_hat: best.map(|(k, _)| k as f64 / curve.n as f64),
        critical_value,
        p_value: statistic.map_or(1.0, |s| null.p_value(s)),
        reject: statistic.is_some_and(|s| s > critical_value),
        degenerate: best.is_none(),
        variant: curve.variant,
        n: curve.n,
        eta1: curve.eta1,
        eta2: curve.eta2,
        alpha,
        null: *null.provenance(),
    })
}

pub fn run_cp_test(
    series: &ObjectSeries,
    eta1: f64,
    eta2: f64,
    alpha: f64,
    variant: CpVariant,
    null: &NullSampleSet,
) -> Result<ChangePointReport> {
    check_seta_null(null, eta1, eta2)?;
    report_for_curve(&contrast_curve(series, eta1, eta2, variant)?, alpha, null)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::MetricObject;

    fn wiggly(n: usize) -> ObjectSeries {
        ObjectSeries::scalars(&(0..n).map(|i| ((i * i) as f64 * 0.37).sin()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn constant_series_is_degenerate_everywhere() {
        let s = ObjectSeries::scalars(&[2.5; 40]).unwrap();
        let (c1, c2) = contrast_curves(&s, 0.15, 0.05).unwrap();
        assert!(c1.degenerate.iter().all(|&d| d));
        assert!(c2.degenerate.iter().all(|&d| d));
        assert_eq!(c2.argmax(), None);
        let p = PrefixStats::build(&s);
        assert_eq!(window_contrast(&p, 0.5, 0.0, 1.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn window_contrast_matches_integer_form() {
        let s = wiggly(60);
        let p = PrefixStats::build(&s);
        let alg = WindowAlgebra::direct(&p);
        let (t, tc) = window_contrast(&p, 25.0 / 60.0, 10.0 / 60.0, 50.0 / 60.0).unwrap();
        let (t2, tc2) = alg.contrast(10, 25, 50, 60);
        assert!((t - t2).abs() < 1e-14 && (tc - tc2).abs() < 1e-14);
        assert!(tc >= 0.0);
    }

    #[test]
    fn gram_and_direct_paths_agree() {
        let objs = (0..50)
            .map(|t| MetricObject::gaussian((t as f64 * 0.3).sin(), 1.0 + 0.2 * (t as f64).cos().abs(), 8).unwrap())
            .collect();
        let s = ObjectSeries::new(objs).unwrap();
        let p = PrefixStats::build(&s);
        let (d, g) = (WindowAlgebra::direct(&p), WindowAlgebra::with_gram(&p));
        let a = scan_segment(&d, 0, 50, 0.15, 0.05, true).unwrap();
        let b = scan_segment(&g, 0, 50, 0.15, 0.05, true).unwrap();
        for (x, y) in a.sn2.iter().zip(&b.sn2).chain(a.sn1.iter().zip(&b.sn1)) {
            assert!((x - y).abs() <= 1e-8 * x.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn sn2_numerator_dominates() {
        let s = wiggly(40);
        let (c1, c2) = contrast_curves(&s, 0.15, 0.05).unwrap();
        assert_eq!(c1.k_start, 6);
        assert_eq!(c1.values.len(), 29);
        assert!(c1.values.iter().chain(&c2.values).all(|v| v.is_finite() && *v >= 0.0));
    }

    #[test]
    fn invalid_trimming_is_rejected() {
        let s = wiggly(40);
        assert!(contrast_curves(&s, 0.6, 0.05).is_err());
        assert!(contrast_curves(&s, 0.15, 0.1).is_err());
        assert!(contrast_curves(&wiggly(10), 0.15, 0.05).is_err());
    }
}
