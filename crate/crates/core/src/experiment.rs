//! Monte Carlo harness: rejection rates, size-adjusted power, location
//! accuracy and segmentation quality.
//!
//! Replication `r` of an experiment with seed `s` simulates from
//! `derive_seed(s, r)`, so results do not depend on scheduling.

use serde::{Deserialize, Serialize};

use crate::changepoint::{contrast_curves, wbs_detect, wbs_threshold, Segmentation, WbsConfig};
use crate::dgp::{
    gen_cp_series, gen_multicp_series, gen_two_samples, DgpSpec, MultiCpSpec, MULTI_CP_LEN, MULTI_CP_POINTS,
};
use crate::error::{Error, Result};
use crate::null_dist::{NullFamily, NullSampleSet};
use crate::rng::{derive_seed, par_map};
use crate::two_sample::{d1_statistic, d2_statistic, profiles};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Design {
    TwoSample {
        spec: DgpSpec,
        n1: usize,
        n2: usize,
        eta: f64,
    },
    ChangePoint {
        spec: DgpSpec,
        n: usize,
        /// Change location as a fraction; 1 means no change.
        tau: f64,
        eta1: f64,
        eta2: f64,
    },
}

impl Design {
    /// Statistic names in result order.
    pub fn statistic_names(&self) -> [&'static str; 2] {
        match self {
            Design::TwoSample { .. } => ["D1", "D2"],
            Design::ChangePoint { .. } => ["SN1", "SN2"],
        }
    }

    /// The null family whose quantiles calibrate this design.
    pub fn null_family(&self) -> NullFamily {
        match *self {
            Design::TwoSample { eta, .. } => NullFamily::Deta { eta },
            Design::ChangePoint { eta1, eta2, .. } => NullFamily::Seta { eta1, eta2 },
        }
    }
}

/// One replication: per statistic, the value (`None` if degenerate) and,
/// for change-point designs, the estimated split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replication {
    pub values: [Option<f64>; 2],
    pub k_hat: [Option<usize>; 2],
}

fn run_replication(design: &Design, seed: u64) -> Result<Replication> {
    match *design {
        Design::TwoSample { spec, n1, n2, eta } => {
            let (a, b) = gen_two_samples(&spec, n1, n2, seed)?;
            let p = profiles(&a, &b, eta)?;
            let keep = |r: Result<f64>| match r {
                Ok(v) => Ok(Some(v)),
                Err(Error::DegenerateNormalizer) => Ok(None),
                Err(e) => Err(e),
            };
            Ok(Replication {
                values: [keep(d1_statistic(&p))?, keep(d2_statistic(&p))?],
                k_hat: [None, None],
            })
        }
        Design::ChangePoint {
            spec,
            n,
            tau,
            eta1,
            eta2,
            ..
        } => {
            let s = gen_cp_series(&spec, n, tau, seed)?;
            let (c1, c2) = contrast_curves(&s, eta1, eta2)?;
            let (b1, b2) = (c1.argmax(), c2.argmax());
            Ok(Replication {
                values: [b1.map(|x| x.1), b2.map(|x| x.1)],
                k_hat: [b1.map(|x| x.0), b2.map(|x| x.0)],
            })
        }
    }
}

/// Runs `replications` independent draws of a design.
pub fn replicate(design: &Design, replications: usize, seed: u64) -> Result<Vec<Replication>> {
    par_map(replications, |r| run_replication(design, derive_seed(seed, r as u64)))
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionRate {
    pub statistic: String,
    pub rejections: usize,
    pub degenerate: usize,
    pub rate: f64,
    /// Binomial standard error `sqrt(p (1 - p) / R)`.
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub design: Design,
    pub replications: usize,
    pub alpha: f64,
    pub seed: u64,
    pub critical_value: f64,
    pub rates: Vec<RejectionRate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<Vec<Replication>>,
}

fn rate(statistic: &str, rejections: usize, degenerate: usize, total: usize) -> RejectionRate {
    let p = rejections as f64 / total as f64;
    RejectionRate {
        statistic: statistic.to_string(),
        rejections,
        degenerate,
        rate: p,
        std_error: (p * (1.0 - p) / total as f64).sqrt(),
    }
}

/// Rejection rates of both statistics of a design against the pivotal
/// critical value `null.quantile(1 - alpha)`.
pub fn size_power_experiment(
    design: &Design,
    replications: usize,
    alpha: f64,
    seed: u64,
    null: &NullSampleSet,
    keep_runs: bool,
) -> Result<ExperimentResult> {
    if replications == 0 {
        return Err(Error::InvalidParameter("zero replications".into()));
    }
    let fam = design.null_family();
    if null.family() != fam {
        return Err(Error::NullMismatch(format!(
            "design needs {fam:?}, null is {:?}",
            null.family()
        )));
    }
    let runs = replicate(design, replications, seed)?;
    let critical_value = null.quantile(1.0 - alpha);
    let rates = design
        .statistic_names()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let rejections = runs
                .iter()
                .filter(|r| r.values[i].is_some_and(|v| v > critical_value))
                .count();
            let degenerate = runs.iter().filter(|r| r.values[i].is_none()).count();
            rate(name, rejections, degenerate, replications)
        })
        .collect();
    Ok(ExperimentResult {
        design: *design,
        replications,
        alpha,
        seed,
        critical_value,
        rates,
        runs: keep_runs.then_some(runs),
    })
}

/// Power against the empirical `1 - alpha` quantile of statistics simulated
/// under the null. Degenerate draws count as 0.
pub fn size_adjusted_power(null_stats: &[Option<f64>], alt_stats: &[Option<f64>], alpha: f64) -> Result<f64> {
    if null_stats.is_empty() || alt_stats.is_empty() {
        return Err(Error::Empty("statistic list"));
    }
    let mut null: Vec<f64> = null_stats.iter().map(|v| v.unwrap_or(0.0)).collect();
    null.sort_by(f64::total_cmp);
    let idx = (((1.0 - alpha) * null.len() as f64).ceil() as usize).clamp(1, null.len()) - 1;
    let crit = null[idx];
    let hits = alt_stats.iter().filter(|v| v.is_some_and(|x| x > crit)).count();
    Ok(hits as f64 / alt_stats.len() as f64)
}

/// `|k_hat / n - tau|` per replication of a change-point design, for each
/// statistic. Replications without an estimate are skipped.
pub fn location_errors(design: &Design, runs: &[Replication]) -> Result<[Vec<f64>; 2]> {
    let Design::ChangePoint { n, tau, .. } = *design else {
        return Err(Error::InvalidParameter(
            "location errors need a change-point design".into(),
        ));
    };
    let errs = |i: usize| {
        runs.iter()
            .filter_map(|r| r.k_hat[i])
            .map(|k| (k as f64 / n as f64 - tau).abs())
            .collect()
    };
    Ok([errs(0), errs(1)])
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    })
}

/// Partition label of each time point `1..=n` (0-based) induced by a segmentation.
fn labels(seg: &Segmentation, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let mut label = 0;
    for t in 1..=n {
        out.push(label);
        if seg.points.get(label) == Some(&t) {
            label += 1;
        }
    }
    out
}

fn choose2(x: usize) -> f64 {
    let x = x as f64;
    x * (x - 1.0) / 2.0
}

/// Adjusted Rand index of the partitions of `1..=n` induced by two segmentations.
pub fn adjusted_rand_index(seg1: &Segmentation, seg2: &Segmentation, n: usize) -> Result<f64> {
    for seg in [seg1, seg2] {
        if seg.points.windows(2).any(|w| w[0] >= w[1]) || seg.points.iter().any(|&p| p == 0 || p >= n) {
            return Err(Error::InvalidParameter(format!(
                "segmentation {:?} is not strictly increasing inside 1..{n}",
                seg.points
            )));
        }
    }
    let (l1, l2) = (labels(seg1, n), labels(seg2, n));
    let (r, c) = (seg1.points.len() + 1, seg2.points.len() + 1);
    let mut table = vec![0usize; r * c];
    for (a, b) in l1.iter().zip(&l2) {
        table[a * c + b] += 1;
    }
    let index: f64 = table.iter().map(|&x| choose2(x)).sum();
    let rows: f64 = (0..r).map(|i| choose2(table[i * c..(i + 1) * c].iter().sum())).sum();
    let cols: f64 = (0..c).map(|j| choose2((0..r).map(|i| table[i * c + j]).sum())).sum();
    let expected = rows * cols / choose2(n);
    let max = 0.5 * (rows + cols);
    if max == expected {
        // Both partitions trivial in the same way: identical partitions agree fully.
        return Ok(if l1 == l2 { 1.0 } else { 0.0 });
    }
    Ok((index - expected) / (max - expected))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WbsExperimentResult {
    pub spec: MultiCpSpec,
    pub config: WbsConfig,
    pub replications: usize,
    pub xi: f64,
    /// `counts[j]` replications detected `j` points; the last bin collects `>= counts.len() - 1`.
    pub counts: Vec<usize>,
    pub exactly_true: usize,
    pub mean_ari: f64,
    pub segmentations: Vec<Segmentation>,
}

/// Detection counts and mean ARI against the true split points.
pub fn wbs_experiment(
    spec: &MultiCpSpec,
    cfg: &WbsConfig,
    replications: usize,
    seed: u64,
) -> Result<WbsExperimentResult> {
    if replications == 0 {
        return Err(Error::InvalidParameter("zero replications".into()));
    }
    let threshold = wbs_threshold(MULTI_CP_LEN, cfg)?;
    let truth = Segmentation {
        n: MULTI_CP_LEN,
        points: MULTI_CP_POINTS.to_vec(),
    };
    let segmentations = par_map(replications, |r| {
        let s = gen_multicp_series(spec, derive_seed(seed, r as u64))?;
        wbs_detect(&s, cfg, &threshold)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut counts = vec![0usize; 6];
    let mut ari = 0.0;
    for seg in &segmentations {
        counts[seg.points.len().min(5)] += 1;
        ari += adjusted_rand_index(seg, &truth, MULTI_CP_LEN)?;
    }
    Ok(WbsExperimentResult {
        spec: *spec,
        config: *cfg,
        replications,
        xi: threshold.xi,
        exactly_true: counts[MULTI_CP_POINTS.len()],
        counts,
        mean_ari: ari / replications as f64,
        segmentations,
    })
}
