// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Black-box tests of the command-line front end: outputs, machine lines,
//! exit codes, and config-file precedence.

use std::path::Path;
use std::process::{Command, Output};

use qcorr::bipartite::{singlet, StateDims};
use qcorr::numerics::{identity, kron, CMatrix, C64};
use qcorr::random::random_pure;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qcorr"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Last stdout line of the form `measure,value,converged`.
fn machine_line(out: &Output) -> Vec<String> {
    stdout(out)
        .lines()
        .last()
        .unwrap_or_default()
        .split(',')
        .map(str::to_owned)
        .collect()
}

#[test]
fn gibbs_at_infinite_temperature_is_maximally_mixed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hot.qmat");
    let out = bin()
        .args(["gibbs", "--sites", "2", "--beta", "0", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let rho = qcorr::io::read_density_matrix(&path).unwrap();
    assert!((rho.matrix() - identity(4).scale(0.25)).norm() < 1e-12);
    assert_eq!(rho.bipartite_dims().unwrap().d1(), 2);
}

#[test]
fn gibbs_file_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.qmat");
    let out = bin()
        .args(["gibbs", "--sites", "5", "--beta", "1", "--delta", "0.5", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let first = std::fs::read(&path).unwrap();
    let rho = qcorr::io::read_density_matrix(&path).unwrap();
    qcorr::io::write_density_matrix(&path, &rho).unwrap();
    let second = std::fs::read(&path).unwrap();
    assert_eq!(first, second);
}

#[test]
fn gibbs_rejects_oversized_chains() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.qmat");
    let out = bin()
        .args(["gibbs", "--sites", "7", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists(), "no partial output on failure");
}

#[test]
fn measure_ppt_on_singlet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("singlet.qmat");
    qcorr::io::write_density_matrix(&path, &singlet()).unwrap();
    let out = bin()
        .args(["measure", "--measure", "ppt", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let line = machine_line(&out);
    assert_eq!(line, vec!["ppt", "false", "true"]);
    assert!(stdout(&out).contains("-0.5"), "report shows the minimum eigenvalue");
}

#[test]
fn measure_ma_on_bell_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.qmat");
    qcorr::io::write_density_matrix(&path, &qcorr::bipartite::max_entangled(2).unwrap()).unwrap();
    let out = bin()
        .args(["measure", "--measure", "ma", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let line = machine_line(&out);
    assert_eq!(line[0], "ma");
    let value: f64 = line[1].parse().unwrap();
    assert!((value - 0.5).abs() < 1e-9);
}

fn product_state_file(path: &Path) {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let a = random_pure(&mut rng, 2);
    let b = random_pure(&mut rng, 2);
    let proj = |v: &qcorr::numerics::CVector| -> CMatrix { v * v.adjoint() };
    let rho = qcorr::bipartite::DensityMatrix::new(
        kron(&proj(&a), &proj(&b)),
        StateDims::bipartite(2, 2).unwrap(),
    )
    .unwrap();
    qcorr::io::write_density_matrix(path, &rho).unwrap();
}

#[test]
fn measure_eof_with_spectral_warm_start_vanishes_on_product_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.qmat");
    product_state_file(&path);
    let out = bin()
        .args([
            "measure",
            "--measure",
            "eof",
            "--seed",
            "5",
            "--restarts",
            "2",
            "--warm-start",
            "spectral",
            "--state",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let line = machine_line(&out);
    assert_eq!(line[0], "eof");
    let value: f64 = line[1].parse().unwrap();
    assert!(value <= 1e-8, "eof value {value}");
}

#[test]
fn measure_eof_requires_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.qmat");
    product_state_file(&path);
    let out = bin()
        .args(["measure", "--measure", "eof", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn measure_dqc_machine_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("singlet.qmat");
    qcorr::io::write_density_matrix(&path, &singlet()).unwrap();
    let out = bin()
        .args([
            "measure",
            "--measure",
            "dqc",
            "--seed",
            "3",
            "--restarts",
            "4",
            "--observable",
            "zz",
            "--state",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let line = machine_line(&out);
    assert_eq!(line[0], "dqc");
    let value: f64 = line[1].parse().unwrap();
    assert!((value - 1.0).abs() < 1e-9);
}

#[test]
fn measure_cq_on_singlet_projectors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("singlet.qmat");
    qcorr::io::write_density_matrix(&path, &singlet()).unwrap();
    let out = bin()
        .args([
            "measure",
            "--measure",
            "cq",
            "--obs-a",
            "p1",
            "--obs-b",
            "p1",
            "--state",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let line = machine_line(&out);
    assert_eq!(line[0], "cq");
    let value: f64 = line[1].parse().unwrap();
    assert!((value + 1.0).abs() < 1e-10, "signed coefficient {value}");
}

#[test]
fn measure_rejects_missing_dims_with_code_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("untagged.qmat");
    // A valid state without a DIMS header cannot feed bipartite measures.
    let m = identity(4).scale(0.25);
    let text = qcorr::io::qmat_to_string(&m, None);
    std::fs::write(&path, text).unwrap();
    let out = bin()
        .args(["measure", "--measure", "ma", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn measure_rejects_malformed_state_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.qmat");
    std::fs::write(&path, "QMAT 1\n2 2\n0 0\n").unwrap();
    let out = bin()
        .args(["measure", "--measure", "ma", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_state_file_is_an_io_failure() {
    let out = bin()
        .args(["measure", "--measure", "ma", "--state", "/nonexistent/state.qmat"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn evolve_default_run_produces_entanglement() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let out = bin()
        .args(["evolve", "--steps", "20", "--tmax", "0.02", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,ea,ma,trace_drift");
    let row0: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(row0[0], 0.0);
    assert_eq!(row0[1], 0.0);
    let row1: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(row1[1] > 0.0, "first-step production {}", row1[1]);
    assert!(stdout(&out).contains("sign +"));
}

#[test]
fn evolve_rejects_unit_euler_steps() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let out = bin()
        .args([
            "evolve", "--sites", "2", "--swap", "0,1", "--mode", "euler", "--tmax", "1.0",
            "--steps", "1", "--initial", "01", "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn evolve_accepts_initial_state_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("initial.qmat");
    product_state_file(&state);
    let path = dir.path().join("series.csv");
    let out = bin()
        .args([
            "evolve", "--sites", "2", "--swap", "0,1", "--tmax", "0.05", "--steps", "5",
            "--initial",
        ])
        .arg(format!("@{}", state.display()))
        .args(["--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert!(path.exists());
}

#[test]
fn sweep_writes_jobs_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("sweep");
    let out = bin()
        .args([
            "sweep", "--sites", "3", "--swap", "0,2", "--betas", "0.5,1.0", "--deltas", "0.5",
            "--tmax", "0.01", "--steps", "5", "--out-dir",
        ])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "beta,delta,ea_over_t_first,ea_final");
    assert_eq!(lines.len(), 3);
    assert!(out_dir.join("run_beta0.5_delta0.5.csv").exists());
    assert!(out_dir.join("run_beta1_delta0.5.csv").exists());
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("qcorr.toml");
    let out_a = dir.path().join("a.qmat");
    std::fs::write(
        &config,
        format!(
            "[gibbs]\nsites = 2\nbeta = 0.0\nout = {:?}\n",
            out_a.to_str().unwrap()
        ),
    )
    .unwrap();

    // Config alone supplies everything.
    let out = bin()
        .args(["--config"])
        .arg(&config)
        .args(["gibbs"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let hot = qcorr::io::read_density_matrix(&out_a).unwrap();
    assert!((hot.matrix() - identity(4).scale(0.25)).norm() < 1e-12);

    // A flag overrides the config value.
    let out_b = dir.path().join("b.qmat");
    let out = bin()
        .args(["--config"])
        .arg(&config)
        .args(["gibbs", "--beta", "2.0", "--out"])
        .arg(&out_b)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let cold = qcorr::io::read_density_matrix(&out_b).unwrap();
    assert!((cold.matrix() - identity(4).scale(0.25)).norm() > 1e-3);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "[gibbs]\nsize = 2\n").unwrap();
    let out = bin()
        .args(["--config"])
        .arg(&config)
        .args(["gibbs", "--sites", "2", "--out", "/tmp/unused.qmat"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn psd_floor_env_override_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("near.qmat");
    // A state with a -1e-8 eigenvalue: rejected by default, accepted when
    // the floor is widened through the environment.
    let bulk = (1.0 + 1e-8) / 3.0;
    let mut m = identity(4).scale(bulk);
    m[(3, 3)] = C64::new(-1e-8, 0.0);
    let text = qcorr::io::qmat_to_string(&m, Some((2, 2)));
    std::fs::write(&path, text).unwrap();

    let strict = bin()
        .args(["measure", "--measure", "ma", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(2));

    let relaxed = bin()
        .env("QCORR_PSD_FLOOR", "1e-6")
        .args(["measure", "--measure", "ma", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(relaxed.status.success(), "{relaxed:?}");
}
