//! End-to-end tests of the binary: file formats, exit codes, determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use bosonfft::{
    full_distribution, haar_random_unitary, io, probability_via_permanent, validate_unitary,
    FockState, UnitaryMatrix,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bosonfft"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bosonfft-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary should launch")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn haar_writes_a_valid_round_tripping_unitary() {
    let dir = workdir("haar");
    let path = dir.join("u.json");
    let output = run(bin().args([
        "haar",
        "--n",
        "3",
        "--seed",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]));
    assert!(output.status.success(), "{output:?}");
    let u = io::read_unitary_json(&path).unwrap();
    assert!(validate_unitary(&u, 1e-10));
    // Same (n, seed) must reproduce the library draw exactly.
    assert_eq!(u, haar_random_unitary(3, 1).unwrap());
}

#[test]
fn haar_single_mode_is_a_phase() {
    let dir = workdir("haar1");
    let path = dir.join("u.json");
    assert!(run(bin().args([
        "haar", "--n", "1", "--seed", "5", "--out",
        path.to_str().unwrap()
    ]))
    .status
    .success());
    let u = io::read_unitary_json(&path).unwrap();
    assert!((u.get(0, 0).norm() - 1.0).abs() <= 1e-12);
}

#[test]
fn haar_unwritable_path_exits_2() {
    let output = run(bin().args([
        "haar",
        "--n",
        "2",
        "--out",
        "/nonexistent-dir-for-sure/u.json",
    ]));
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn prob_identity_is_certain() {
    let dir = workdir("prob-id");
    let path = dir.join("id.json");
    io::write_unitary_json(&path, &UnitaryMatrix::identity(2)).unwrap();
    let output = run(bin().args([
        "prob",
        "--unitary",
        path.to_str().unwrap(),
        "--input",
        "1,1",
        "--target",
        "1,1",
    ]));
    assert!(output.status.success());
    assert_eq!(stdout(&output).trim(), "1.000000000000");
}

#[test]
fn prob_balanced_splitter_suppresses_coincidence() {
    let dir = workdir("prob-hom");
    let path = dir.join("bs.json");
    io::write_unitary_json(&path, &UnitaryMatrix::balanced_splitter()).unwrap();
    for fs_mode in ["reduced", "nyquist"] {
        let output = run(bin().args([
            "prob",
            "--unitary",
            path.to_str().unwrap(),
            "--input",
            "1,1",
            "--target",
            "1,1",
            "--fs-mode",
            fs_mode,
        ]));
        assert!(output.status.success());
        assert_eq!(stdout(&output).trim(), "0.000000000000", "mode {fs_mode}");
    }
    let output = run(bin().args([
        "prob",
        "--unitary",
        path.to_str().unwrap(),
        "--input",
        "1,1",
        "--target",
        "2,0",
    ]));
    assert_eq!(stdout(&output).trim(), "0.500000000000");
}

#[test]
fn prob_methods_agree_with_the_oracle() {
    let u = haar_random_unitary(3, 1).unwrap();
    let k = FockState::new(vec![1, 1, 1]);
    let l = FockState::new(vec![2, 0, 1]);
    let expected = probability_via_permanent(&u, &k, &l).unwrap();
    for method in ["1", "2"] {
        let output = run(bin().args([
            "prob", "--haar", "3", "--seed", "1", "--input", "1,1,1", "--target", "2,0,1",
            "--method", method,
        ]));
        assert!(output.status.success());
        let printed: f64 = stdout(&output).trim().parse().unwrap();
        assert!(
            (printed - expected).abs() <= 1e-10,
            "method {method}: {printed} vs {expected}"
        );
    }
}

#[test]
fn prob_photon_mismatch_exits_3() {
    let output = run(bin().args([
        "prob", "--haar", "2", "--input", "1,1", "--target", "1,0",
    ]));
    assert_eq!(output.status.code(), Some(3), "{output:?}");
}

#[test]
fn prob_malformed_state_exits_3() {
    let output = run(bin().args([
        "prob", "--haar", "2", "--input", "1,x", "--target", "1,1",
    ]));
    assert_eq!(output.status.code(), Some(3), "{output:?}");
}

#[test]
fn capacity_violations_exit_4() {
    // Positional frequencies overflow 63 bits.
    let output = run(bin().args([
        "prob",
        "--haar",
        "10",
        "--input",
        "200,0,0,0,0,0,0,0,0,0",
        "--target",
        "200,0,0,0,0,0,0,0,0,0",
        "--method",
        "1",
    ]));
    assert_eq!(output.status.code(), Some(4), "{output:?}");

    // Stored-sample budget exceeded.
    let dir = workdir("cap");
    let output = run(bin().args([
        "dist",
        "--haar",
        "3",
        "--input",
        "1,1,1",
        "--out",
        dir.join("d.json").to_str().unwrap(),
        "--max-samples",
        "8",
    ]));
    assert_eq!(output.status.code(), Some(4), "{output:?}");
}

#[test]
fn dist_matches_oracle_and_is_deterministic() {
    let dir = workdir("dist");
    let path = dir.join("dist.json");
    let args = [
        "dist", "--haar", "3", "--seed", "1", "--input", "1,1,1", "--out",
        path.to_str().unwrap(),
    ];
    assert!(run(bin().args(args)).status.success());
    let first = fs::read(&path).unwrap();

    let dist = io::read_distribution_json(&path).unwrap();
    assert_eq!(dist.len(), 10);
    assert!((dist.total_mass() - 1.0).abs() <= 1e-6);
    let u = haar_random_unitary(3, 1).unwrap();
    let k = FockState::new(vec![1, 1, 1]);
    for (state, p) in dist.iter() {
        let oracle = probability_via_permanent(&u, &k, state).unwrap();
        assert!((p - oracle).abs() <= 1e-8, "{state}: {p} vs {oracle}");
    }

    assert!(run(bin().args(args)).status.success());
    assert_eq!(first, fs::read(&path).unwrap(), "reruns must be byte-identical");
}

#[test]
fn dist_identity_is_a_point_mass_in_csv_too() {
    let dir = workdir("dist-id");
    let upath = dir.join("id.json");
    io::write_unitary_json(&upath, &UnitaryMatrix::identity(3)).unwrap();
    let cpath = dir.join("dist.csv");
    assert!(run(bin().args([
        "dist",
        "--unitary",
        upath.to_str().unwrap(),
        "--input",
        "0,2,1",
        "--out",
        cpath.to_str().unwrap(),
        "--format",
        "csv",
    ]))
    .status
    .success());
    let dist = io::read_distribution_csv(&cpath).unwrap();
    let k = FockState::new(vec![0, 2, 1]);
    for (state, p) in dist.iter() {
        let expected = if state == &k { 1.0 } else { 0.0 };
        assert!((p - expected).abs() <= 1e-10, "{state}: {p}");
    }
}

#[test]
fn dist_nyquist_rate_reproduces_the_default_probabilities() {
    let dir = workdir("dist-nyquist");
    let default_path = dir.join("default.json");
    let nyquist_path = dir.join("nyquist.json");
    for (path, extra) in [(&default_path, None), (&nyquist_path, Some("--nyquist"))] {
        let mut args = vec![
            "dist", "--haar", "3", "--seed", "4", "--input", "1,1,1", "--out",
            path.to_str().unwrap(),
        ];
        if let Some(flag) = extra {
            args.push(flag);
        }
        assert!(run(bin().args(args)).status.success());
    }
    let a = io::read_distribution_json(&default_path).unwrap();
    let b = io::read_distribution_json(&nyquist_path).unwrap();
    assert_eq!(a.len(), b.len());
    for (state, p) in a.iter() {
        assert!(
            (b.probability(state) - p).abs() <= 1e-10,
            "{state}: {} vs {p}",
            b.probability(state)
        );
    }
}

#[test]
fn dist_spectrum_export_holds_the_state_amplitudes() {
    let dir = workdir("dist-spectrum");
    let dpath = dir.join("dist.json");
    let spath = dir.join("spectrum.csv");
    assert!(run(bin().args([
        "dist",
        "--haar",
        "3",
        "--seed",
        "1",
        "--input",
        "1,1,1",
        "--out",
        dpath.to_str().unwrap(),
        "--spectrum-out",
        spath.to_str().unwrap(),
    ]))
    .status
    .success());
    let bins = io::read_spectrum_csv(&spath).unwrap();
    // Positional plan for M=3, N=3: K = 3·4² + 1 bins.
    assert_eq!(bins.len(), 49);
    // The distribution probabilities must be recoverable from the bins.
    let dist = io::read_distribution_json(&dpath).unwrap();
    let plan = bosonfft::q_method1(3, 3).unwrap();
    let k = FockState::new(vec![1, 1, 1]);
    for (state, p) in dist.iter() {
        let f = bosonfft::state_frequency(state, &plan).unwrap() as usize;
        let recovered = bins[f].norm_sqr() * bosonfft::factorial_ratio(state, &k);
        assert!((recovered - p).abs() <= 1e-12, "{state}: {recovered} vs {p}");
    }
}

#[test]
fn sample_converges_and_reproduces_per_seed() {
    let dir = workdir("sample");
    let path = dir.join("report.json");
    let args = [
        "sample",
        "--haar",
        "5",
        "--seed",
        "11",
        "--input",
        "1,1,1,1,1",
        "--steps",
        "200000",
        "--out",
        path.to_str().unwrap(),
    ];
    assert!(run(bin().args(args)).status.success());
    let first = fs::read(&path).unwrap();
    let report = io::read_chain_report(&path).unwrap();
    assert_eq!(report.steps, 200_000);
    assert_eq!(report.burn_in, 20_000);
    let last = report.checkpoints.last().expect("exact reference feasible");
    assert_eq!(last.step, 200_000);
    assert!(last.cosine_distance <= 0.01, "{}", last.cosine_distance);
    let mass: f64 = report.empirical.iter().map(|e| e.probability).sum();
    assert!((mass - 1.0).abs() <= 1e-9);

    assert!(run(bin().args(args)).status.success());
    assert_eq!(first, fs::read(&path).unwrap(), "same seed, same report");
}

#[test]
fn sample_large_system_reports_empirical_only() {
    let dir = workdir("sample-big");
    let path = dir.join("report.json");
    // 92378 outcome states exceed the default exact-reference limit.
    let output = run(bin().args([
        "sample",
        "--haar",
        "10",
        "--seed",
        "3",
        "--input",
        "1,1,1,1,1,1,1,1,1,1",
        "--steps",
        "2000",
        "--out",
        path.to_str().unwrap(),
    ]));
    assert!(output.status.success(), "{output:?}");
    let report = io::read_chain_report(&path).unwrap();
    assert!(report.checkpoints.is_empty());
    assert!(!report.empirical.is_empty());
    assert!(stdout(&output).contains("empirical-only"));
}

#[test]
fn sample_bad_burn_in_exits_5() {
    let dir = workdir("sample-burnin");
    let output = run(bin().args([
        "sample",
        "--haar",
        "3",
        "--input",
        "1,1,1",
        "--steps",
        "50",
        "--burn-in",
        "50",
        "--out",
        dir.join("r.json").to_str().unwrap(),
    ]));
    assert_eq!(output.status.code(), Some(5), "{output:?}");
}

#[test]
fn verify_defaults_pass() {
    let output = run(bin().args(["verify"]));
    assert!(output.status.success(), "{}", stdout(&output));
    assert!(stdout(&output).contains("verification passed"));
}

#[test]
fn verify_single_mode_passes_trivially() {
    let output = run(bin().args(["verify", "--max-n", "1", "--max-m", "3"]));
    assert!(output.status.success(), "{}", stdout(&output));
}

#[test]
fn verify_zero_tolerance_fails_with_counterexample() {
    let output = run(bin().args([
        "verify", "--max-n", "3", "--max-m", "3", "--trials", "5", "--tol", "0",
    ]));
    assert_eq!(output.status.code(), Some(3));
    assert!(stdout(&output).contains("counterexample"), "{}", stdout(&output));
}

#[test]
fn bench_emits_decreasing_ratios_deterministically() {
    let dir = workdir("bench");
    let ratio = dir.join("ratio.csv");
    let speedup = dir.join("speedup.csv");
    let args = [
        "bench",
        "--n-min",
        "2",
        "--n-max",
        "6",
        "--seed",
        "1",
        "--ratio-out",
        ratio.to_str().unwrap(),
        "--speedup-out",
        speedup.to_str().unwrap(),
    ];
    assert!(run(bin().args(args)).status.success());
    let first_ratio = fs::read(&ratio).unwrap();
    let first_speedup = fs::read(&speedup).unwrap();

    let text = String::from_utf8(first_ratio.clone()).unwrap();
    let ratios: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|line| line.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 5);
    assert!(ratios[0] <= 1.0);
    for pair in ratios.windows(2) {
        assert!(pair[1] < pair[0], "not strictly decreasing: {ratios:?}");
    }

    let text = String::from_utf8(first_speedup.clone()).unwrap();
    assert!(text.starts_with("N,engine_cost,clifford_cost\n"));

    assert!(run(bin().args(args)).status.success());
    assert_eq!(first_ratio, fs::read(&ratio).unwrap());
    assert_eq!(first_speedup, fs::read(&speedup).unwrap());
}

#[test]
fn full_distribution_agrees_with_cli_dist_for_library_users() {
    // The library and the binary must expose the same numbers.
    let dir = workdir("lib-cli");
    let path = dir.join("dist.json");
    assert!(run(bin().args([
        "dist", "--haar", "4", "--seed", "9", "--input", "1,1,0,0", "--out",
        path.to_str().unwrap(),
    ]))
    .status
    .success());
    let from_cli = io::read_distribution_json(&path).unwrap();
    let u = haar_random_unitary(4, 9).unwrap();
    let k = FockState::new(vec![1, 1, 0, 0]);
    let from_lib = full_distribution(&u, &k).unwrap();
    assert_eq!(from_cli.len(), from_lib.len());
    for (state, p) in from_lib.iter() {
        assert_eq!(from_cli.probability(state).to_bits(), p.to_bits());
    }
}
