use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use frechet_sn::changepoint::{contrast_curves, report_for_curve, wbs_detect, wbs_threshold, ContrastCurve, CpVariant};
use frechet_sn::experiment::{size_power_experiment, wbs_experiment, ExperimentResult, WbsExperimentResult};
use frechet_sn::io::{parse_series, write_columns, ExperimentFile, ExperimentKind, FormatHints, RunConfig};
use frechet_sn::null_dist::{NullFamily, NullSampleSet};
use frechet_sn::prefix::ObjectSeries;
use frechet_sn::two_sample::{n_sample_statistics, pairwise_pvalue_matrix, profiles, run_two_sample_test, TestVariant};
use frechet_sn::{Error, Result};
use serde::Serialize;
use serde_json::json;

use crate::{Command, FamilyArg, InputFormat, EXIT_DEGENERATE};

/// Significance levels listed by `simulate-null`.
const TABLE_ALPHAS: [f64; 4] = [0.10, 0.05, 0.01, 0.005];

pub enum Outcome {
    Completed,
    Degenerate,
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Completed => 0,
            Outcome::Degenerate => EXIT_DEGENERATE,
        }
    }

    fn from_degenerate(degenerate: bool) -> Self {
        if degenerate {
            Outcome::Degenerate
        } else {
            Outcome::Completed
        }
    }
}

/// Every report carries the command, its inputs and the resolved settings,
/// so the decision can be re-derived from the report alone.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'static str,
    inputs: Vec<String>,
    settings: &'a RunConfig,
    report: T,
}

fn emit<T: Serialize>(
    output: Option<&Path>,
    command: &'static str,
    inputs: &[&Path],
    cfg: &RunConfig,
    report: T,
) -> Result<()> {
    let envelope = Envelope {
        command,
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        settings: cfg,
        report,
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn null_for(cfg: &RunConfig, family: NullFamily) -> Result<NullSampleSet> {
    NullSampleSet::load_or_simulate(cfg.cache_dir.as_deref(), family, cfg.null_grid, cfg.null_reps, cfg.seed)
}

fn read_all(files: &[PathBuf], format: &InputFormat) -> Result<Vec<ObjectSeries>> {
    let hints: FormatHints = format.hints();
    files.iter().map(|f| parse_series(f, &hints)).collect()
}

fn number(x: f64) -> String {
    format!("{x:?}")
}

fn csv_file(path: &Path) -> Result<fs::File> {
    Ok(fs::File::create(path)?)
}

pub fn run(command: &Command, cfg: &RunConfig, output: Option<&Path>) -> Result<Outcome> {
    match command {
        Command::TwoSample {
            first,
            second,
            format,
            profiles: profile_csv,
        } => {
            let series = read_all(&[first.clone(), second.clone()], format)?;
            let null = null_for(cfg, NullFamily::Deta { eta: cfg.eta })?;
            let report = run_two_sample_test(&series[0], &series[1], cfg.eta, cfg.alpha, cfg.variant, &null)?;
            if let Some(path) = profile_csv {
                let p = profiles(&series[0], &series[1], cfg.eta)?;
                let n = p.n() as f64;
                write_columns(
                    csv_file(path)?,
                    &["k", "r", "t", "tc"],
                    &[
                        p.k_values().map(|k| k.to_string()).collect(),
                        p.k_values().map(|k| number(k as f64 / n)).collect(),
                        p.t.iter().copied().map(number).collect(),
                        p.tc.iter().copied().map(number).collect(),
                    ],
                )?;
            }
            let degenerate = report.degenerate;
            emit(output, "two-sample", &[first, second], cfg, report)?;
            Ok(Outcome::from_degenerate(degenerate))
        }
        Command::NSample { files, format } => {
            let series = read_all(files, format)?;
            let stats = n_sample_statistics(&series, cfg.eta)?;
            let contaminated = matches!(cfg.variant, TestVariant::D2 | TestVariant::DN2);
            let degenerate = if contaminated {
                stats.dn2.is_none()
            } else {
                stats.dn1.is_none()
            };
            // Only two samples have a tabulated pivotal limit.
            let calibrated = if series.len() == 2 {
                let null = null_for(cfg, NullFamily::Deta { eta: cfg.eta })?;
                Some(run_two_sample_test(
                    &series[0],
                    &series[1],
                    cfg.eta,
                    cfg.alpha,
                    cfg.variant,
                    &null,
                )?)
            } else {
                None
            };
            let report = json!({
                "samples": series.len(),
                "sample_sizes": series.iter().map(ObjectSeries::len).collect::<Vec<_>>(),
                "eta": cfg.eta,
                "dn1": stats.dn1,
                "dn2": stats.dn2,
                "degenerate": degenerate,
                "test": calibrated,
            });
            let inputs: Vec<&Path> = files.iter().map(PathBuf::as_path).collect();
            emit(output, "n-sample", &inputs, cfg, report)?;
            Ok(Outcome::from_degenerate(degenerate))
        }
        Command::CpTest { file, format, curve } => {
            let series = parse_series(file, &format.hints())?;
            let (c1, c2) = contrast_curves(&series, cfg.eta1, cfg.eta2)?;
            let null = null_for(
                cfg,
                NullFamily::Seta {
                    eta1: cfg.eta1,
                    eta2: cfg.eta2,
                },
            )?;
            let chosen = match cfg.cp_variant {
                CpVariant::SN1 => &c1,
                CpVariant::SN2 => &c2,
            };
            let report = report_for_curve(chosen, cfg.alpha, &null)?;
            if let Some(path) = curve {
                write_curves(path, &c1, &c2)?;
            }
            let degenerate = report.degenerate;
            emit(output, "cp-test", &[file], cfg, report)?;
            Ok(Outcome::from_degenerate(degenerate))
        }
        Command::Wbs { file, format } => {
            let series = parse_series(file, &format.hints())?;
            let wbs = cfg.wbs_config();
            let threshold = wbs_threshold(series.len(), &wbs)?;
            let seg = wbs_detect(&series, &wbs, &threshold)?;
            let n = series.len() as f64;
            let report = json!({
                "n": seg.n,
                "points": seg.points,
                "fractions": seg.points.iter().map(|&k| k as f64 / n).collect::<Vec<_>>(),
                "threshold": threshold.xi,
                "config": wbs,
            });
            emit(output, "wbs", &[file], cfg, report)?;
            Ok(Outcome::Completed)
        }
        Command::SimulateNull { family, force } => {
            let family = match family {
                FamilyArg::Deta => NullFamily::Deta { eta: cfg.eta },
                FamilyArg::Seta => NullFamily::Seta {
                    eta1: cfg.eta1,
                    eta2: cfg.eta2,
                },
            };
            let dir = cfg.cache_dir.as_deref().ok_or_else(|| {
                Error::InvalidParameter(
                    "simulate-null needs a cache directory (--cache-dir or FRECHET_SN_CACHE)".into(),
                )
            })?;
            let path = dir.join(NullSampleSet::cache_file_name(
                family,
                cfg.null_grid,
                cfg.null_reps,
                cfg.seed,
            ));
            let set = if *force {
                let set = NullSampleSet::simulate(family, cfg.null_grid, cfg.null_reps, cfg.seed)?;
                set.store(&path)?;
                set
            } else {
                NullSampleSet::load_or_simulate(Some(dir), family, cfg.null_grid, cfg.null_reps, cfg.seed)?
            };
            let table = set.critical_values(&TABLE_ALPHAS);
            let report = json!({
                "cache_file": path.display().to_string(),
                "null": set.provenance(),
                "critical_values": table.rows.iter().map(|&(alpha, value)| json!({"alpha": alpha, "value": value})).collect::<Vec<_>>(),
            });
            emit(output, "simulate-null", &[], cfg, report)?;
            Ok(Outcome::Completed)
        }
        Command::Experiment { file, runs, table } => {
            let exp = ExperimentFile::load(file)?;
            match exp.kind {
                ExperimentKind::Wbs => {
                    let wbs = exp.wbs_config();
                    let mut results = Vec::new();
                    for spec in exp.multicp_specs()? {
                        eprintln!("wbs: {:?} rho = {}", spec.model, spec.rho);
                        let mut r = wbs_experiment(&spec, &wbs, exp.replications, exp.seed)?;
                        if !runs {
                            r.segmentations.clear();
                        }
                        results.push(r);
                    }
                    if let Some(path) = table {
                        write_wbs_table(path, &results)?;
                    }
                    emit(
                        output,
                        "experiment",
                        &[file],
                        cfg,
                        json!({"experiment": exp, "results": results}),
                    )?;
                }
                _ => {
                    let mut results = Vec::new();
                    for design in exp.designs()? {
                        let null = null_for(cfg, design.null_family())?;
                        eprintln!("experiment: {design:?}");
                        results.push(size_power_experiment(
                            &design,
                            exp.replications,
                            exp.alpha,
                            exp.seed,
                            &null,
                            *runs,
                        )?);
                    }
                    if let Some(path) = table {
                        write_rate_table(path, &results)?;
                    }
                    emit(
                        output,
                        "experiment",
                        &[file],
                        cfg,
                        json!({"experiment": exp, "results": results}),
                    )?;
                }
            }
            Ok(Outcome::Completed)
        }
        Command::PairwiseMatrix { files, format, csv } => {
            let series = read_all(files, format)?;
            let null_set = null_for(cfg, NullFamily::Deta { eta: cfg.eta })?;
            let m = pairwise_pvalue_matrix(&series, cfg.eta, cfg.variant, &null_set)?;
            if let Some(path) = csv {
                let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
                let mut header = vec!["file"];
                header.extend(names.iter().map(String::as_str));
                let mut columns = vec![names.clone()];
                columns.extend((0..names.len()).map(|j| m.p_values.iter().map(|row| number(row[j])).collect()));
                write_columns(csv_file(path)?, &header, &columns)?;
            }
            let degenerate = m.degenerate.iter().flatten().any(|&d| d);
            let critical_value = null_set.quantile(1.0 - cfg.alpha);
            let inputs: Vec<&Path> = files.iter().map(PathBuf::as_path).collect();
            let report = json!({
                "matrix": m,
                "critical_value": critical_value,
                "null": null_set.provenance(),
            });
            emit(output, "pairwise-matrix", &inputs, cfg, report)?;
            Ok(Outcome::from_degenerate(degenerate))
        }
    }
}

fn write_curves(path: &Path, c1: &ContrastCurve, c2: &ContrastCurve) -> Result<()> {
    let value = |c: &ContrastCurve, i: usize| {
        if c.degenerate[i] {
            String::new()
        } else {
            number(c.values[i])
        }
    };
    let n = c1.n as f64;
    write_columns(
        csv_file(path)?,
        &["k", "r", "sn1", "sn2"],
        &[
            c1.k_values().map(|k| k.to_string()).collect(),
            c1.k_values().map(|k| number(k as f64 / n)).collect(),
            (0..c1.values.len()).map(|i| value(c1, i)).collect(),
            (0..c2.values.len()).map(|i| value(c2, i)).collect(),
        ],
    )
}

fn write_rate_table(path: &Path, results: &[ExperimentResult]) -> Result<()> {
    let cols = 9;
    let mut columns: Vec<Vec<String>> = vec![Vec::new(); cols];
    for r in results {
        let (spec, size) = match r.design {
            frechet_sn::experiment::Design::TwoSample { spec, n1, n2, .. } => (spec, format!("{n1}+{n2}")),
            frechet_sn::experiment::Design::ChangePoint { spec, n, tau, .. } => (spec, format!("{n}@{tau}")),
        };
        let row = [
            serde_json::to_value(spec.dgp)?.as_str().unwrap_or_default().to_string(),
            number(spec.rho),
            number(spec.cross),
            number(spec.delta1),
            number(spec.delta2),
            size,
            number(r.critical_value),
            number(r.rates[0].rate),
            number(r.rates[1].rate),
        ];
        for (c, v) in columns.iter_mut().zip(row) {
            c.push(v);
        }
    }
    let names = match results.first().map(|r| r.design.statistic_names()) {
        Some(["SN1", "SN2"]) => ["sn1", "sn2"],
        _ => ["d1", "d2"],
    };
    write_columns(
        csv_file(path)?,
        &[
            "dgp",
            "rho",
            "cross",
            "delta1",
            "delta2",
            "size",
            "critical_value",
            names[0],
            names[1],
        ],
        &columns,
    )
}

fn write_wbs_table(path: &Path, results: &[WbsExperimentResult]) -> Result<()> {
    let mut columns: Vec<Vec<String>> = vec![Vec::new(); 10];
    for r in results {
        let mut row = vec![number(r.spec.rho), number(r.xi)];
        row.extend(r.counts.iter().map(|c| c.to_string()));
        row.push(number(r.exactly_true as f64 / r.replications as f64));
        row.push(number(r.mean_ari));
        for (c, v) in columns.iter_mut().zip(row) {
            c.push(v);
        }
    }
    write_columns(
        csv_file(path)?,
        &[
            "rho",
            "threshold",
            "n0",
            "n1",
            "n2",
            "n3",
            "n4",
            "n5_plus",
            "share_exact",
            "mean_ari",
        ],
        &columns,
    )
}
