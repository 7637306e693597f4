// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Batch command-line front end: build Gibbs states, run correlation and
//! entanglement measures on stored states, and run production experiments,
//! writing QMAT and CSV files.
//!
//! Every run with the same configuration and seed produces byte-identical
//! output. Flags override config-file values, which override built-in
//! defaults. Exit codes: 2 invalid parameters or malformed input, 3 i/o
//! failure, 4 dimension mismatch.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use qcorr::bipartite::DensityMatrix;
use qcorr::correlations::{
    self, pauli_product_family, quantum_correlation_coefficient, quantum_correlation_profile_with,
};
use qcorr::entanglement::{self, EntropyFunctional};
use qcorr::error::{Error, Result};
use qcorr::numerics::{kron, CMatrix, HermitianOperator};
use qcorr::xxz::{
    self, ChainConfig, EvolveMode, EvolveOptions, ExperimentSchedule,
};
use qcorr::{io, EnsembleOptions};

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Quantum correlation measures and XXZ jump dynamics")]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the Gibbs state of an XXZ chain as a QMAT file.
    Gibbs(GibbsArgs),
    /// Run a measure on a stored state.
    Measure(MeasureArgs),
    /// Evolve a state under the jump semigroup and write the production CSV.
    Evolve(EvolveArgs),
    /// Run a grid of production experiments and write per-job CSVs plus a summary.
    Sweep(SweepArgs),
}

#[derive(Args, Clone, Default)]
struct GibbsArgs {
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Bipartition position recorded in the DIMS header; defaults to half the chain.
    #[arg(long)]
    cut: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct MeasureArgs {
    /// QMAT state file.
    #[arg(long)]
    state: Option<PathBuf>,
    /// One of: eof, ma, ppt, dqc, cq.
    #[arg(long)]
    measure: Option<String>,
    /// Seed for the randomized searches (required by eof and dqc).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_ensemble: Option<usize>,
    #[arg(long)]
    iter_cap: Option<usize>,
    /// Entropy functional for eof: von-neumann or linear.
    #[arg(long)]
    entropy: Option<String>,
    /// Warm start for eof/dqc: none or spectral.
    #[arg(long)]
    warm_start: Option<String>,
    /// Observable for dqc: a Pauli word like zz, or a QMAT file path.
    #[arg(long)]
    observable: Option<String>,
    /// Run dqc over a whole family instead: pauli.
    #[arg(long)]
    family: Option<String>,
    /// First-factor observable for cq: x, y, z, p1, or a QMAT path.
    #[arg(long)]
    obs_a: Option<String>,
    /// Second-factor observable for cq.
    #[arg(long)]
    obs_b: Option<String>,
}

#[derive(Args, Clone, Default)]
struct EvolveArgs {
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Swapped site pair, written k,l.
    #[arg(long)]
    swap: Option<String>,
    #[arg(long)]
    cut: Option<usize>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// exact or euler.
    #[arg(long)]
    mode: Option<String>,
    /// Initial state: neel, a site pattern over {0,1,+,-}, or @path to a QMAT file.
    #[arg(long)]
    initial: Option<String>,
    /// Keep the raw (unnormalized) evolution for diagnostics.
    #[arg(long)]
    raw: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct SweepArgs {
    #[arg(long)]
    sites: Option<usize>,
    /// Comma-separated inverse temperatures.
    #[arg(long)]
    betas: Option<String>,
    /// Comma-separated anisotropies.
    #[arg(long)]
    deltas: Option<String>,
    #[arg(long)]
    swap: Option<String>,
    #[arg(long)]
    cut: Option<usize>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    initial: Option<String>,
    /// Directory for the per-job CSV files and the summary.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Config-file counterparts of the argument structs. Missing keys fall back
/// to built-in defaults; explicit flags win over both.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    gibbs: GibbsFile,
    #[serde(default)]
    measure: MeasureFile,
    #[serde(default)]
    evolve: EvolveFile,
    #[serde(default)]
    sweep: SweepFile,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct GibbsFile {
    sites: Option<usize>,
    beta: Option<f64>,
    delta: Option<f64>,
    cut: Option<usize>,
    out: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    state: Option<PathBuf>,
    measure: Option<String>,
    seed: Option<u64>,
    restarts: Option<usize>,
    max_ensemble: Option<usize>,
    iter_cap: Option<usize>,
    entropy: Option<String>,
    warm_start: Option<String>,
    observable: Option<String>,
    family: Option<String>,
    obs_a: Option<String>,
    obs_b: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EvolveFile {
    sites: Option<usize>,
    beta: Option<f64>,
    delta: Option<f64>,
    swap: Option<String>,
    cut: Option<usize>,
    tmax: Option<f64>,
    steps: Option<usize>,
    mode: Option<String>,
    initial: Option<String>,
    raw: Option<bool>,
    out: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    sites: Option<usize>,
    betas: Option<Vec<f64>>,
    deltas: Option<Vec<f64>>,
    swap: Option<String>,
    cut: Option<usize>,
    tmax: Option<f64>,
    steps: Option<usize>,
    initial: Option<String>,
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_default_env()
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let file = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Gibbs(args) => cmd_gibbs(args, file.gibbs),
        Command::Measure(args) => cmd_measure(args, file.measure),
        Command::Evolve(args) => cmd_evolve(args, file.evolve),
        Command::Sweep(args) => cmd_sweep(args, file.sweep),
    }
}

fn load_config(path: Option<&Path>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            toml::from_str(&text).map_err(|e| Error::Parse(format!("config file: {e}")))
        }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("missing required --{flag}")))
}

fn parse_swap(spec: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "swap pair must be written k,l; got {spec:?}"
        )));
    }
    let k = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad swap index {:?}", parts[0])))?;
    let l = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad swap index {:?}", parts[1])))?;
    Ok((k, l))
}

fn parse_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad list entry {s:?}")))
        })
        .collect()
}

fn cmd_gibbs(args: GibbsArgs, file: GibbsFile) -> Result<()> {
    let sites = require(args.sites.or(file.sites), "sites")?;
    let beta = args.beta.or(file.beta).unwrap_or(1.0);
    let delta = args.delta.or(file.delta).unwrap_or(0.5);
    let cut = args.cut.or(file.cut).unwrap_or(sites.div_ceil(2));
    let out = require(args.out.or(file.out), "out")?;

    let cfg = ChainConfig::new(sites, beta, delta, (0, sites.saturating_sub(1).max(1)), cut)?;
    let h = xxz::xxz_hamiltonian(&cfg)?;
    let rho = xxz::gibbs_state(&h, beta)?;
    let dims = cfg.bipartite_dims();
    let tagged = rho.with_bipartite_dims(dims.d1(), dims.d2())?;
    io::write_density_matrix(&out, &tagged)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn parse_entropy(spec: Option<&str>) -> Result<EntropyFunctional> {
    match spec.unwrap_or("linear") {
        "linear" => Ok(EntropyFunctional::Linear),
        "von-neumann" => Ok(EntropyFunctional::VonNeumann),
        other => Err(Error::InvalidParameter(format!(
            "unknown entropy functional {other:?}"
        ))),
    }
}

/// Observable on the full composite from a Pauli word or a QMAT file.
fn parse_composite_observable(spec: &str, dim: usize) -> Result<HermitianOperator> {
    if spec.chars().all(|c| "ixyz".contains(c)) && !spec.is_empty() {
        let word = pauli_word(spec)?;
        if word.nrows() != dim {
            return Err(Error::DimensionMismatch(format!(
                "Pauli word {spec:?} has dimension {}, state has {dim}",
                word.nrows()
            )));
        }
        return HermitianOperator::new(word);
    }
    let m = io::read_matrix(Path::new(spec))?;
    if m.nrows() != dim {
        return Err(Error::DimensionMismatch(format!(
            "observable file has dimension {}, state has {dim}",
            m.nrows()
        )));
    }
    HermitianOperator::new(m)
}

fn pauli_word(word: &str) -> Result<CMatrix> {
    let mut out = CMatrix::identity(1, 1);
    for c in word.chars() {
        let idx = match c {
            'i' => 0,
            'x' => 1,
            'y' => 2,
            'z' => 3,
            _ => return Err(Error::Parse(format!("bad Pauli letter {c:?}"))),
        };
        out = kron(&out, &qcorr::numerics::pauli(idx));
    }
    Ok(out)
}

/// Single-factor observable: named builtin or QMAT file.
fn parse_factor_observable(spec: &str, dim: usize) -> Result<HermitianOperator> {
    let builtin = match spec {
        "x" | "y" | "z" => {
            if dim != 2 {
                return Err(Error::DimensionMismatch(format!(
                    "builtin {spec:?} is for qubit factors, factor has dimension {dim}"
                )));
            }
            let idx = match spec {
                "x" => 1,
                "y" => 2,
                _ => 3,
            };
            Some(qcorr::numerics::pauli(idx))
        }
        "p1" => {
            if dim < 2 {
                return Err(Error::DimensionMismatch("factor too small for p1".into()));
            }
            let mut m = CMatrix::zeros(dim, dim);
            m[(1, 1)] = qcorr::numerics::C64::new(1.0, 0.0);
            Some(m)
        }
        _ => None,
    };
    match builtin {
        Some(m) => HermitianOperator::new(m),
        None => {
            let m = io::read_matrix(Path::new(spec))?;
            if m.nrows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "observable file has dimension {}, factor has {dim}",
                    m.nrows()
                )));
            }
            HermitianOperator::new(m)
        }
    }
}

/// Spectral warm start: the eigendecomposition ensemble of the state.
fn spectral_warm_start(rho: &DensityMatrix) -> Result<qcorr::PureEnsemble> {
    let r = rho.rank();
    qcorr::bipartite::ensemble_from_isometry(rho, &CMatrix::identity(r, r))
}

fn cmd_measure(args: MeasureArgs, file: MeasureFile) -> Result<()> {
    let state_path = require(args.state.or(file.state), "state")?;
    let measure = require(args.measure.or(file.measure), "measure")?;
    let rho = io::read_density_matrix(&state_path)?;

    let seed = args.seed.or(file.seed);
    let mut opts = EnsembleOptions::new(0);
    if let Some(r) = args.restarts.or(file.restarts) {
        opts.restarts = r;
    }
    if let Some(m) = args.max_ensemble.or(file.max_ensemble) {
        opts.max_ensemble = Some(m);
    }
    if let Some(c) = args.iter_cap.or(file.iter_cap) {
        opts.iter_cap = c;
    }
    let warm = match args
        .warm_start
        .or(file.warm_start)
        .as_deref()
        .unwrap_or("none")
    {
        "none" => None,
        "spectral" => Some(spectral_warm_start(&rho)?),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown warm start {other:?}"
            )))
        }
    };

    match measure.as_str() {
        "ma" => {
            let value = entanglement::m_a(&rho)?;
            println!("reduction linear entropy bound: {value:.12}");
            println!("ma,{value},true");
        }
        "ppt" => {
            let direct = entanglement::ppt_direct(&rho)?;
            let mapped =
                entanglement::cp_cocp_verdict(&entanglement::entanglement_mapping(&rho)?);
            println!(
                "partial transpose: min eigenvalue {:.12}, ppt = {}",
                direct.min_pt_eigenvalue, direct.is_ppt
            );
            println!(
                "entanglement mapping: cp min {:.12}, co-cp min {:.12}, ppt = {}",
                mapped.choi_cp_min.unwrap_or(f64::NAN),
                mapped.choi_cocp_min.unwrap_or(f64::NAN),
                mapped.is_ppt
            );
            println!("ppt,{},true", direct.is_ppt);
        }
        "eof" => {
            opts.seed = require(seed, "seed")?;
            let functional = parse_entropy(args.entropy.or(file.entropy).as_deref())?;
            let res = entanglement::eof_with(&rho, functional, &opts, warm.as_ref())?;
            println!(
                "entanglement of formation: {:.12} ({} restarts, ensemble size {})",
                res.value,
                res.restarts_used,
                res.best_ensemble.len()
            );
            println!("eof,{},{}", res.value, res.converged);
        }
        "dqc" => {
            opts.seed = require(seed, "seed")?;
            let dims = rho.bipartite_dims()?;
            match (
                args.observable.or(file.observable),
                args.family.or(file.family),
            ) {
                (Some(obs), None) => {
                    let a = parse_composite_observable(&obs, rho.dim())?;
                    let res = correlations::quantum_correlation_distance_with(
                        &rho,
                        &a,
                        &opts,
                        warm.as_ref(),
                        None,
                    )?;
                    println!(
                        "quantum correlation distance for {obs}: {:.12}",
                        res.value
                    );
                    println!("dqc,{},{}", res.value, res.converged);
                }
                (None, Some(fam)) => {
                    if fam != "pauli" {
                        return Err(Error::InvalidParameter(format!(
                            "unknown family {fam:?}"
                        )));
                    }
                    let family = pauli_product_family(dims)?;
                    let profile =
                        quantum_correlation_profile_with(&rho, &family, &opts, warm.as_ref())?;
                    for (a_idx, score) in profile.normalized_scores.iter().enumerate() {
                        log::debug!("family member {a_idx}: normalized distance {score:.6e}");
                    }
                    let converged = profile.results.iter().all(|r| r.converged);
                    println!(
                        "profile over {} observables: max normalized distance {:.12}",
                        family.len(),
                        profile.score
                    );
                    println!("dqc,{},{converged}", profile.score);
                }
                _ => {
                    return Err(Error::InvalidParameter(
                        "dqc needs exactly one of --observable or --family".into(),
                    ))
                }
            }
        }
        "cq" => {
            let dims = rho.bipartite_dims()?;
            let a_spec = require(args.obs_a.or(file.obs_a), "obs-a")?;
            let b_spec = require(args.obs_b.or(file.obs_b), "obs-b")?;
            let a = parse_factor_observable(&a_spec, dims.d1())?;
            let b = parse_factor_observable(&b_spec, dims.d2())?;
            let rep = quantum_correlation_coefficient(&rho, &a, &b)?;
            println!(
                "correlation coefficient: {:.12} (covariance {:.12}, variances {:.6e}, {:.6e})",
                rep.value, rep.numerator, rep.variances.0, rep.variances.1
            );
            println!("cq,{},true", rep.value);
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown measure {other:?} (expected eof, ma, ppt, dqc, cq)"
            )))
        }
    }
    Ok(())
}

struct EvolveSetup {
    cfg: ChainConfig,
    sigma0: DensityMatrix,
    tmax: f64,
    steps: usize,
    opts: EvolveOptions,
}

#[allow(clippy::too_many_arguments)]
fn resolve_evolve_setup(
    sites: Option<usize>,
    beta: Option<f64>,
    delta: Option<f64>,
    swap: Option<String>,
    cut: Option<usize>,
    tmax: Option<f64>,
    steps: Option<usize>,
    mode: Option<String>,
    initial: Option<String>,
    raw: bool,
) -> Result<EvolveSetup> {
    let sites = sites.unwrap_or(5);
    let beta = beta.unwrap_or(1.0);
    let delta = delta.unwrap_or(0.5);
    let swap_pair = match swap {
        Some(s) => parse_swap(&s)?,
        None if sites >= 4 => (1, 3),
        None => (0, sites - 1),
    };
    let cut = cut.unwrap_or(sites.div_ceil(2));
    let cfg = ChainConfig::new(sites, beta, delta, swap_pair, cut)?;
    let tmax = tmax.unwrap_or(0.1);
    let steps = steps.unwrap_or(100);
    let mode = match mode.as_deref().unwrap_or("exact") {
        "exact" => EvolveMode::ExactSemigroup,
        "euler" => EvolveMode::EulerFirstOrder,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown mode {other:?} (expected exact or euler)"
            )))
        }
    };
    let sigma0 = match initial.as_deref().unwrap_or("neel") {
        "neel" => xxz::neel_state(&cfg)?,
        spec if spec.starts_with('@') => {
            let loaded = io::read_density_matrix(Path::new(&spec[1..]))?;
            let dims = cfg.bipartite_dims();
            loaded.with_bipartite_dims(dims.d1(), dims.d2())?
        }
        pattern => xxz::product_initial_state(&cfg, pattern)?,
    };
    Ok(EvolveSetup {
        cfg,
        sigma0,
        tmax,
        steps,
        opts: EvolveOptions {
            mode,
            renormalize: !raw,
        },
    })
}

fn cmd_evolve(args: EvolveArgs, file: EvolveFile) -> Result<()> {
    let out = require(args.out.or(file.out), "out")?;
    let setup = resolve_evolve_setup(
        args.sites.or(file.sites),
        args.beta.or(file.beta),
        args.delta.or(file.delta),
        args.swap.or(file.swap),
        args.cut.or(file.cut),
        args.tmax.or(file.tmax),
        args.steps.or(file.steps),
        args.mode.or(file.mode),
        args.initial.or(file.initial),
        args.raw || file.raw.unwrap_or(false),
    )?;
    let schedule = ExperimentSchedule {
        tmax: setup.tmax,
        steps: setup.steps,
        evolve: setup.opts,
        eof_every: None,
        eof_opts: None,
        entropy: EntropyFunctional::Linear,
    };
    let (series, summary) = xxz::production_experiment(&setup.cfg, &setup.sigma0, &schedule)?;
    io::write_series_csv(&out, &series)?;
    println!("wrote {}", out.display());
    let sign = if summary.ea_over_t_first > 0.0 {
        "+"
    } else if summary.ea_over_t_first < 0.0 {
        "-"
    } else {
        "0"
    };
    println!(
        "first-sample production rate: {} (sign {sign})",
        io::format_f64(summary.ea_over_t_first)
    );
    println!("evolve,{},true", summary.ea_over_t_first);
    Ok(())
}

fn cmd_sweep(args: SweepArgs, file: SweepFile) -> Result<()> {
    let out_dir = require(args.out_dir.or(file.out_dir), "out-dir")?;
    let betas = match args.betas {
        Some(s) => parse_list(&s)?,
        None => file.betas.unwrap_or_else(|| vec![0.1, 1.0, 5.0]),
    };
    let deltas = match args.deltas {
        Some(s) => parse_list(&s)?,
        None => file.deltas.unwrap_or_else(|| vec![0.5, 1.5]),
    };
    if betas.is_empty() || deltas.is_empty() {
        return Err(Error::InvalidParameter("empty sweep grid".into()));
    }
    std::fs::create_dir_all(&out_dir)?;

    let mut summary_rows = Vec::new();
    for &beta in &betas {
        for &delta in &deltas {
            let setup = resolve_evolve_setup(
                args.sites.or(file.sites),
                Some(beta),
                Some(delta),
                args.swap.clone().or_else(|| file.swap.clone()),
                args.cut.or(file.cut),
                args.tmax.or(file.tmax),
                args.steps.or(file.steps),
                None,
                args.initial.clone().or_else(|| file.initial.clone()),
                false,
            )?;
            let schedule = ExperimentSchedule::basic(setup.tmax, setup.steps);
            let (series, summary) =
                xxz::production_experiment(&setup.cfg, &setup.sigma0, &schedule)?;
            let name = format!("run_beta{beta}_delta{delta}.csv");
            io::write_series_csv(&out_dir.join(&name), &series)?;
            summary_rows.push((beta, delta, summary.ea_over_t_first, summary.ea_final));
        }
    }
    summary_rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut text = String::from("beta,delta,ea_over_t_first,ea_final\n");
    for (beta, delta, rate, ea) in &summary_rows {
        text.push_str(&format!(
            "{},{},{},{}\n",
            io::format_f64(*beta),
            io::format_f64(*delta),
            io::format_f64(*rate),
            io::format_f64(*ea)
        ));
    }
    let summary_path = out_dir.join("summary.csv");
    io::write_atomically(&summary_path, &text)?;
    println!("wrote {} runs and {}", summary_rows.len(), summary_path.display());
    Ok(())
}
