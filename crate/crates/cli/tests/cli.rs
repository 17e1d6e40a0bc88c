use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use frechet_sn::dgp::{gen_cp_series, gen_multicp_series, gen_two_samples, Dgp, DgpSpec, MultiCpModel, MultiCpSpec};
use frechet_sn::io::write_series;
use frechet_sn::null_dist::{NullFamily, NullSampleSet};
use frechet_sn::prefix::ObjectSeries;
use serde_json::Value;
use tempfile::TempDir;

/// Small nulls keep the tests quick; the decisions they check are far from
/// the critical values.
const FAST_NULL: [&str; 4] = ["--null-grid", "1000", "--null-reps", "2000"];

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_frechet-sn"));
    c.env_remove("FRECHET_SN_CACHE");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad report ({e}): {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn save(dir: &Path, name: &str, series: &ObjectSeries) -> PathBuf {
    let path = dir.join(name);
    write_series(series, fs::File::create(&path).unwrap()).unwrap();
    path
}

fn two_samples(dir: &Path, delta1: f64) -> (String, String) {
    let spec = DgpSpec::two_sample(Dgp::GaussianDist, 0.3, 0.0).with_deltas(delta1, 1.0);
    let (a, b) = gen_two_samples(&spec, 150, 150, 8).unwrap();
    let a = save(dir, "a.csv", &a);
    let b = save(dir, "b.csv", &b);
    (a.display().to_string(), b.display().to_string())
}

#[test]
fn identical_files_are_degenerate_and_never_rejected() {
    let tmp = TempDir::new().unwrap();
    let (a, _) = two_samples(tmp.path(), 0.0);
    let mut args = vec!["two-sample", &a, &a];
    args.extend(FAST_NULL);
    let out = run(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["report"]["degenerate"], true);
    assert_eq!(r["report"]["reject"], false);
    assert_eq!(r["report"]["p_value"], 1.0);
    assert!(r["report"]["statistic"].is_null());
}

#[test]
fn shifted_samples_are_rejected_with_full_provenance() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = two_samples(tmp.path(), 2.0);
    let mut args = vec!["two-sample", &a, &b, "--variant", "d2", "--profiles", "prof.csv"];
    args.extend(FAST_NULL);
    let out = run(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let rep = &r["report"];
    // A pure location shift leaves the variances equal, so only D2 sees it.
    assert_eq!(rep["reject"], true);
    assert_eq!(rep["variant"], "D2");
    assert!(rep["statistic"].as_f64().unwrap() > rep["critical_value"].as_f64().unwrap());
    assert_eq!(rep["null"]["family"], "deta");
    assert_eq!(rep["null"]["replications"], 2000);
    assert_eq!(r["settings"]["eta"], 0.15);

    let csv = fs::read_to_string(tmp.path().join("prof.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,r,t,tc"));
    // k runs from floor(300 * 0.15) to 300.
    assert_eq!(lines.count(), 300 - 45 + 1);
}

#[test]
fn reports_are_bit_reproducible() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = two_samples(tmp.path(), 0.2);
    let mut args = vec!["pairwise-matrix", &a, &b, &a];
    args.extend(FAST_NULL);
    let first = run(tmp.path(), &args);
    let second = run(tmp.path(), &args);
    assert_eq!(first.status.code(), Some(3), "a repeated file is a degenerate pair");
    assert_eq!(first.stdout, second.stdout);
    let m = &report(&first)["report"]["matrix"]["p_values"];
    assert_eq!(m[0][1], m[1][0]);
    assert_eq!(m[0][2], 1.0);
}

#[test]
fn simulate_null_writes_a_cache_matching_the_tabulated_quantile() {
    let tmp = TempDir::new().unwrap();
    // 10^5 draws put the Monte Carlo error of the 95% quantile near 1%.
    let out = run(
        tmp.path(),
        &[
            "simulate-null",
            "--family",
            "Deta",
            "--eta",
            "0.15",
            "--null-reps",
            "100000",
            "--cache-dir",
            "cache",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let path = tmp.path().join(r["report"]["cache_file"].as_str().unwrap());
    let family = NullFamily::Deta { eta: 0.15 };
    let set = NullSampleSet::load(&path, family, 5000, 100_000, 2024).unwrap();
    let q95 = r["report"]["critical_values"][1]["value"].as_f64().unwrap();
    assert_eq!(q95, set.quantile(0.95));
    assert!((q95 / 51.87 - 1.0).abs() < 0.02, "95% quantile {q95}");

    // A second call loads instead of simulating.
    let again = run(
        tmp.path(),
        &[
            "simulate-null",
            "--family",
            "deta",
            "--null-reps",
            "100000",
            "--cache-dir",
            "cache",
        ],
    );
    assert_eq!(report(&again)["report"], r["report"]);
}

#[test]
fn simulate_null_without_a_cache_directory_is_an_error() {
    let tmp = TempDir::new().unwrap();
    let out = run(tmp.path(), &["simulate-null", "--family", "seta"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cache directory"));
}

#[test]
fn cp_test_finds_a_mid_series_change_and_exports_curves() {
    let tmp = TempDir::new().unwrap();
    let spec = DgpSpec::change_point(Dgp::GaussianDist, 0.2, 0.0).with_deltas(0.8, 1.0);
    let path = save(tmp.path(), "cp.csv", &gen_cp_series(&spec, 200, 0.5, 3).unwrap());
    let path = path.display().to_string();
    let mut args = vec!["cp-test", &path, "--curve", "curve.csv"];
    args.extend(FAST_NULL);
    let out = run(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = &report(&out)["report"];
    assert_eq!(rep["reject"], true);
    assert_eq!(rep["variant"], "SN2");
    let k = rep["k_hat"].as_u64().unwrap();
    assert!((90..=110).contains(&k), "k_hat {k}");
    let csv = fs::read_to_string(tmp.path().join("curve.csv")).unwrap();
    assert!(csv.starts_with("k,r,sn1,sn2\n"));
}

#[test]
fn wbs_recovers_the_three_changes_of_a_case_one_series() {
    let tmp = TempDir::new().unwrap();
    let spec = MultiCpSpec::case(MultiCpModel::GaussianDist, 1, 0.3).unwrap();
    let path = save(tmp.path(), "multi.csv", &gen_multicp_series(&spec, 17).unwrap());
    let out = run(tmp.path(), &["wbs", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let points: Vec<u64> = report(&out)["report"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(points.len(), 3, "{points:?}");
    for (p, truth) in points.iter().zip([110, 250, 370]) {
        assert!(p.abs_diff(truth) <= 10, "{points:?}");
    }
}

#[test]
fn flags_override_the_config_file() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = two_samples(tmp.path(), 0.0);
    fs::write(
        tmp.path().join("run.toml"),
        "eta = 0.2\nalpha = 0.1\nvariant = \"D1\"\n",
    )
    .unwrap();
    let mut args = vec!["two-sample", &a, &b, "--config", "run.toml", "--eta", "0.1"];
    args.extend(FAST_NULL);
    let out = run(tmp.path(), &args);
    let r = report(&out);
    assert_eq!(r["settings"]["eta"], 0.1);
    assert_eq!(r["settings"]["alpha"], 0.1);
    assert_eq!(r["report"]["variant"], "D1");
    assert_eq!(r["report"]["null"]["eta"], 0.1);
}

#[test]
fn n_sample_reports_aggregated_statistics() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = two_samples(tmp.path(), 0.5);
    let mut args = vec!["n-sample", &a, &b, &a];
    args.extend(FAST_NULL);
    let out = run(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = &report(&out)["report"];
    assert_eq!(rep["samples"], 3);
    assert!(rep["dn2"].as_f64().unwrap() > 0.0);
    assert!(rep["test"].is_null());
}

#[test]
fn malformed_input_names_the_line() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("bad.csv"), "# kind = wasserstein\n0,1,2\n0,2,1\n").unwrap();
    let out = run(tmp.path(), &["cp-test", "bad.csv"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.csv") && err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(run(tmp.path(), &["two-sample", "only-one.csv"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn experiment_files_run_and_tabulate() {
    let tmp = TempDir::new().unwrap();
    fs::write(
        tmp.path().join("exp.toml"),
        "kind = \"two-sample\"\ndgp = \"gaussian-dist\"\nrho = [0.0, 0.4]\nn = 50\nreplications = 40\n",
    )
    .unwrap();
    let mut args = vec!["experiment", "exp.toml", "--table", "t.csv"];
    args.extend(FAST_NULL);
    let out = run(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let results = report(&out)["report"]["results"].as_array().unwrap().clone();
    assert_eq!(results.len(), 2);
    assert!(results[0].get("runs").is_none());
    let table = fs::read_to_string(tmp.path().join("t.csv")).unwrap();
    assert_eq!(table.lines().count(), 3);
    assert!(table.starts_with("dgp,rho,cross,delta1,delta2,size,critical_value,d1,d2\n"));
}
