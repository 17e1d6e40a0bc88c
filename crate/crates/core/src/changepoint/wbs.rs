//! Wild binary segmentation driven by the SN2 scan statistic.
//!
//! Random intervals `(s_m, e_m]` with integer endpoints are drawn once per
//! series length. The threshold `xi` is a quantile of the maximal SN2 value
//! over all intervals on iid standard normal series, which is legitimate
//! because the statistic's null limit is pivotal.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{check_etas, scan_segment, SegmentScan, WindowAlgebra};
use crate::error::{Error, Result};
use crate::null_dist::floor_frac;
use crate::prefix::{ObjectSeries, PrefixStats};
use crate::rng::{derive_seed, par_map, rng_for, DEFAULT_SEED};

const INTERVAL_TAG: u64 = 0x5742_5349;
const CALIBRATION_TAG: u64 = 0x5742_5343;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WbsConfig {
    /// Number of random intervals.
    pub intervals: usize,
    /// Number of Gaussian calibration series.
    pub calibration_reps: usize,
    pub min_len: usize,
    pub eta1: f64,
    pub eta2: f64,
    /// Quantile level of the calibration maxima used as threshold.
    pub quantile: f64,
    pub seed: u64,
}

impl Default for WbsConfig {
    fn default() -> Self {
        WbsConfig {
            intervals: 100,
            calibration_reps: 200,
            min_len: 20,
            eta1: 0.15,
            eta2: 0.05,
            quantile: 0.95,
            seed: DEFAULT_SEED,
        }
    }
}

impl WbsConfig {
    /// Every interval must be long enough that all inner windows of the scan
    /// are nonempty: `floor(min_len eta1) >= 1` and `floor(min_len eta2) >= 1`.
    pub fn validate(&self) -> Result<()> {
        check_etas(self.eta1, self.eta2)?;
        if self.intervals == 0 || self.calibration_reps == 0 {
            return Err(Error::InvalidParameter(
                "WBS needs at least one interval and one calibration run".into(),
            ));
        }
        if self.min_len < 4 || floor_frac(self.min_len, self.eta2) == 0 || floor_frac(self.min_len, self.eta1) == 0 {
            return Err(Error::InvalidParameter(format!(
                "min_len = {} is too short for eta1 = {}, eta2 = {}",
                self.min_len, self.eta1, self.eta2
            )));
        }
        if !(self.quantile > 0.0 && self.quantile < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "quantile level {} must lie in (0, 1)",
                self.quantile
            )));
        }
        Ok(())
    }
}

/// Observations `start + 1..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WbsThreshold {
    pub n: usize,
    pub xi: f64,
    pub intervals: Vec<Interval>,
    /// Sorted calibration maxima.
    pub calibration: Vec<f64>,
}

/// Sorted estimated change points; each `k` splits after observation `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Segmentation {
    pub n: usize,
    pub points: Vec<usize>,
}

/// Integer endpoint pairs `0 <= s < e <= n` with `e - s >= min_len`, uniform
/// over all such pairs.
pub fn draw_intervals(n: usize, cfg: &WbsConfig) -> Result<Vec<Interval>> {
    cfg.validate()?;
    if n < cfg.min_len {
        return Err(Error::InvalidParameter(format!(
            "series length {n} is below the minimum interval length {}",
            cfg.min_len
        )));
    }
    let mut rng = rng_for(derive_seed(cfg.seed, INTERVAL_TAG), n as u64);
    let mut out = Vec::with_capacity(cfg.intervals);
    while out.len() < cfg.intervals {
        let s = rng.random_range(0..=n);
        let e = rng.random_range(0..=n);
        if e >= s + cfg.min_len {
            out.push(Interval { start: s, end: e });
        }
    }
    Ok(out)
}

/// Largest SN2 value on each interval with its global split point.
fn interval_maxima(alg: &WindowAlgebra<'_>, intervals: &[Interval], cfg: &WbsConfig) -> Result<Vec<(usize, f64)>> {
    par_map(intervals.len(), |m| {
        let iv = intervals[m];
        let scan = scan_segment(alg, iv.start, iv.end, cfg.eta1, cfg.eta2, false)?;
        let degenerate = &scan.degenerate2;
        Ok(match SegmentScan::argmax(&scan.sn2, degenerate, scan.k_start) {
            Some((k, v)) => (iv.start + k, v),
            // Degenerate values count as 0 and never exceed a positive threshold.
            None => (iv.start + scan.k_start, 0.0),
        })
    })
    .into_iter()
    .collect()
}

pub fn wbs_threshold(n: usize, cfg: &WbsConfig) -> Result<WbsThreshold> {
    let intervals = draw_intervals(n, cfg)?;
    let base = derive_seed(cfg.seed, CALIBRATION_TAG);
    let maxima: Vec<Result<f64>> = par_map(cfg.calibration_reps, |j| {
        let mut rng = rng_for(base, j as u64);
        let z: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let series = ObjectSeries::scalars(&z)?;
        let prefix = PrefixStats::build(&series);
        let alg = WindowAlgebra::direct(&prefix);
        let best = interval_maxima(&alg, &intervals, cfg)?
            .into_iter()
            .map(|(_, v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(best)
    });
    let mut calibration = maxima.into_iter().collect::<Result<Vec<_>>>()?;
    calibration.sort_by(f64::total_cmp);
    let idx = ((cfg.quantile * calibration.len() as f64).ceil() as usize).clamp(1, calibration.len()) - 1;
    Ok(WbsThreshold {
        n,
        xi: calibration[idx],
        intervals,
        calibration,
    })
}

pub fn wbs_detect(series: &ObjectSeries, cfg: &WbsConfig, threshold: &WbsThreshold) -> Result<Segmentation> {
    cfg.validate()?;
    let n = series.len();
    if n < cfg.min_len {
        return Ok(Segmentation { n, points: vec![] });
    }
    if threshold.n != n {
        return Err(Error::InvalidParameter(format!(
            "threshold was calibrated for n = {}, series has n = {n}",
            threshold.n
        )));
    }
    let prefix = PrefixStats::build(series);
    let alg = WindowAlgebra::new(&prefix);
    let maxima = interval_maxima(&alg, &threshold.intervals, cfg)?;
    let mut points = Vec::new();
    let mut stack = vec![(0usize, n)];
    while let Some((s, e)) = stack.pop() {
        if e - s < cfg.min_len {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for (m, iv) in threshold.intervals.iter().enumerate() {
            if s <= iv.start && iv.end <= e && best.map_or(true, |(_, b)| maxima[m].1 > b) {
                best = Some((m, maxima[m].1));
            }
        }
        let Some((m0, value)) = best else { continue };
        if value > threshold.xi {
            let k0 = maxima[m0].0;
            points.push(k0);
            stack.push((k0, e));
            stack.push((s, k0));
        }
    }
    points.sort_unstable();
    Ok(Segmentation { n, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> WbsConfig {
        WbsConfig {
            intervals: 20,
            calibration_reps: 20,
            ..WbsConfig::default()
        }
    }

    #[test]
    fn intervals_are_valid_and_reproducible() {
        let a = draw_intervals(100, &cfg()).unwrap();
        assert_eq!(a, draw_intervals(100, &cfg()).unwrap());
        assert!(a.iter().all(|iv| iv.end <= 100 && iv.len() >= 20));
    }

    #[test]
    fn short_series_give_empty_segmentation() {
        let th = WbsThreshold {
            n: 19,
            xi: 0.0,
            intervals: vec![],
            calibration: vec![],
        };
        let s = ObjectSeries::scalars(&[1.0; 19]).unwrap();
        assert!(wbs_detect(&s, &cfg(), &th).unwrap().points.is_empty());
    }

    #[test]
    fn config_validation() {
        assert!(WbsConfig::default().validate().is_ok());
        let bad = WbsConfig {
            min_len: 10,
            ..WbsConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = WbsConfig {
            intervals: 0,
            ..WbsConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn threshold_quantiles_are_ordered() {
        let th95 = wbs_threshold(60, &cfg()).unwrap();
        let th99 = wbs_threshold(
            60,
            &WbsConfig {
                quantile: 0.99,
                ..cfg()
            },
        )
        .unwrap();
        assert_eq!(th95.calibration, th99.calibration);
        assert!(th95.xi <= th99.xi);
    }
}
