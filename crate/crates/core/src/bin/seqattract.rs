//! Command-line interface: train networks on stored sequences, retrieve
//! under noise, build one-hot networks explicitly, and run the capacity /
//! reconstruction / ablation experiments.
//!
//! Every run writes its artifacts into `--out`: data as CSV (floats with 17
//! significant digits so reruns are diffable), a `manifest.json` describing
//! the run (seed, hyperparameters, build identifier — everything except
//! wall-clock time, which goes to `timestamp.txt`), and a checkpoint or
//! trajectory where applicable. With a fixed `--seed`, every artifact byte
//! except `timestamp.txt` is reproducible.

use clap::{Args, Parser, Subcommand};
use seqattract::{
    ablation_grid, binarize_frames, capacity_sweep_m, capacity_sweep_t, construct_one_hot,
    default_max_steps, derive_seed, error_curves, hebbian_v, load_checkpoint, load_frames,
    load_sequence, reconstruction_experiment, retrieval_trial_traced, save_checkpoint,
    save_sequence, train, train_v_only, Axis, Error, HiddenNetwork, Hyperparams, Method,
    PatternSequence, ProjectionDistribution, ReconMethod, SweepSettings, TrainingLog,
};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "seqattract",
    version,
    about = "Sequence attractors in binary recurrent networks with hidden units"
)]
struct Cli {
    /// Master seed for all randomness (sequences, weights, noise).
    #[arg(long, global = true, env = "SEQATTRACT_SEED", default_value_t = 0)]
    seed: u64,

    /// Cap on worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output directory for artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct HyperFlags {
    /// Learning rate η.
    #[arg(long, default_value_t = 1e-3)]
    eta: f64,

    /// Robustness margin κ.
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,

    /// Training epochs.
    #[arg(long, default_value_t = 500)]
    epochs: usize,

    /// Std of the Gaussian weight initialization.
    #[arg(long, default_value_t = 1e-3)]
    init_std: f64,

    /// Sparsity threshold θ for the hidden codes/targets.
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
}

impl HyperFlags {
    fn to_hyperparams(&self, seed: u64) -> Hyperparams {
        Hyperparams {
            eta: self.eta,
            kappa: self.kappa,
            epochs: self.epochs,
            seed,
            init_std: self.init_std,
            theta: self.theta,
            ..Hyperparams::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Train a network on one or more stored sequences.
    Train {
        /// Sequence file(s) to store in one network.
        #[arg(long, required_unless_present = "frames", conflicts_with = "frames", num_args = 1..)]
        input: Vec<PathBuf>,

        /// Grayscale frame stack to binarize and store instead of --input.
        #[arg(long)]
        frames: Option<PathBuf>,

        /// Binarization threshold for --frames (pixel ≥ threshold ↦ +1).
        #[arg(long, default_value_t = 128)]
        threshold: u8,

        /// Number of hidden neurons M.
        #[arg(long)]
        hidden: usize,

        /// Training method.
        #[arg(long, default_value = "joint")]
        method: Method,

        /// Stop at the first zero-error epoch instead of running them all.
        #[arg(long)]
        stop_on_zero: bool,

        #[command(flatten)]
        hyper: HyperFlags,
    },

    /// Run one noisy-retrieval attempt against a checkpoint.
    Retrieve {
        /// Trained or constructed checkpoint.
        #[arg(long)]
        checkpoint: PathBuf,

        /// Sequence the retrieval is scored against.
        #[arg(long)]
        input: PathBuf,

        /// Number of entries to flip in the initial state.
        #[arg(long, default_value_t = 0)]
        flips: usize,

        /// Steps to run; default 2T+10.
        #[arg(long)]
        max_steps: Option<usize>,

        /// Sparse-readout threshold (θ > 0 reads hidden units as
        /// sign(Ux − θ), matching V-only/Hebbian training with sparse codes).
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },

    /// Build the explicit one-hot network for a sequence (M = T − 1).
    Construct {
        /// Sequence file; patterns must be pairwise distinct except that
        /// the first and last may coincide.
        #[arg(long)]
        input: PathBuf,
    },

    /// Capacity sweep: success counts along T (period) or M (hidden size).
    Sweep {
        /// Swept axis: T or M.
        #[arg(long)]
        axis: String,

        /// Axis values, strictly increasing.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        values: Vec<usize>,

        /// Visible dimension N.
        #[arg(long, default_value_t = 100)]
        n: usize,

        /// Hidden size M (fixed side of a T sweep).
        #[arg(long, default_value_t = 500)]
        hidden: usize,

        /// Period length T (fixed side of an M sweep).
        #[arg(long, default_value_t = 70)]
        t_len: usize,

        /// Trials per cell.
        #[arg(long, default_value_t = 100)]
        trials: usize,

        /// Salt-and-pepper flips applied to the cue.
        #[arg(long, default_value_t = 10)]
        flips: usize,

        /// Methods to compare.
        #[arg(long, value_delimiter = ',', default_value = "joint,V_only")]
        methods: Vec<Method>,

        /// Retrieval steps; default 2T+10.
        #[arg(long)]
        max_steps: Option<usize>,

        #[command(flatten)]
        hyper: HyperFlags,
    },

    /// Reconstruction error of the binary random-projection round trip.
    Reconstruct {
        /// Input dimension N.
        #[arg(long, default_value_t = 100)]
        n: usize,

        /// Hidden sizes M, strictly increasing.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        m_values: Vec<usize>,

        /// Projection entries: gaussian or uniform.
        #[arg(long, default_value = "gaussian")]
        distribution: ProjectionDistribution,

        /// Decoder: pseudo_inverse or transpose.
        #[arg(long, default_value = "pseudo_inverse")]
        method: ReconMethod,

        /// Trials per M.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },

    /// Ablation grid: methods × sparsity thresholds on shared sequences.
    Ablate {
        /// Sequence file(s) shared by every cell.
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,

        /// Number of hidden neurons M.
        #[arg(long)]
        hidden: usize,

        /// Methods to compare.
        #[arg(long, value_delimiter = ',', default_value = "joint,V_only,hebbian")]
        methods: Vec<Method>,

        /// Sparsity thresholds θ to grid over.
        #[arg(long, value_delimiter = ',', default_value = "0.0")]
        thetas: Vec<f64>,

        /// Retrieval attempts per sequence.
        #[arg(long, default_value_t = 20)]
        trials: usize,

        /// Salt-and-pepper flips applied to the cue.
        #[arg(long, default_value_t = 2)]
        flips: usize,

        /// Retrieval steps; default 2T+10.
        #[arg(long)]
        max_steps: Option<usize>,

        #[command(flatten)]
        hyper: HyperFlags,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Ignore failure: the global pool can already exist in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            // Numeric blowups are internal faults; everything else stems
            // from user-supplied configuration or files.
            let code = match e {
                Error::NonFinite(_) => 1,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    std::fs::create_dir_all(&cli.out).map_err(|e| Error::Io {
        path: cli.out.display().to_string(),
        source: e,
    })?;
    let out = cli.out.as_path();
    let seed = cli.seed;
    match cli.command {
        Command::Train {
            input,
            frames,
            threshold,
            hidden,
            method,
            stop_on_zero,
            hyper,
        } => cmd_train(out, seed, &input, frames.as_deref(), threshold, hidden, method, stop_on_zero, &hyper),
        Command::Retrieve {
            checkpoint,
            input,
            flips,
            max_steps,
            theta,
        } => cmd_retrieve(out, seed, &checkpoint, &input, flips, max_steps, theta),
        Command::Construct { input } => cmd_construct(out, &input),
        Command::Sweep {
            axis,
            values,
            n,
            hidden,
            t_len,
            trials,
            flips,
            methods,
            max_steps,
            hyper,
        } => cmd_sweep(out, seed, &axis, &values, n, hidden, t_len, trials, flips, &methods, max_steps, &hyper),
        Command::Reconstruct {
            n,
            m_values,
            distribution,
            method,
            trials,
        } => cmd_reconstruct(out, seed, n, &m_values, distribution, method, trials),
        Command::Ablate {
            input,
            hidden,
            methods,
            thetas,
            trials,
            flips,
            max_steps,
            hyper,
        } => cmd_ablate(out, seed, &input, hidden, &methods, &thetas, trials, flips, max_steps, &hyper),
    }
}

// ------------------------------------------------------------------
// Artifact plumbing
// ------------------------------------------------------------------

/// 17 significant digits: round-trips any f64 exactly, so reruns diff clean.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct Manifest {
    command: &'static str,
    master_seed: u64,
    parameters: serde_json::Value,
    git_describe: String,
    outputs: Vec<String>,
}

fn git_describe() -> String {
    std::process::Command::new("git")
        .args(["describe", "--always", "--dirty"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |e| Error::Io {
        path: path.display().to_string(),
        source: e,
    }
}

fn write_manifest(
    out: &Path,
    command: &'static str,
    master_seed: u64,
    parameters: serde_json::Value,
    outputs: &[&str],
) -> Result<(), Error> {
    let manifest = Manifest {
        command,
        master_seed,
        parameters,
        git_describe: git_describe(),
        outputs: outputs.iter().map(|s| s.to_string()).collect(),
    };
    let path = out.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::InvalidValue(format!("manifest serialization: {e}")))?;
    std::fs::write(&path, json + "\n").map_err(io_err(&path))?;

    let ts_path = out.join("timestamp.txt");
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_else(|_| "0".to_string());
    std::fs::write(&ts_path, now + "\n").map_err(io_err(&ts_path))?;
    Ok(())
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), Error> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| {
        Error::InvalidValue(format!("cannot write {}: {e}", path.display()))
    })?;
    writer
        .write_record(header)
        .and_then(|()| {
            rows.iter().try_for_each(|row| writer.write_record(row))
        })
        .and_then(|()| writer.flush().map_err(Into::into))
        .map_err(|e| Error::InvalidValue(format!("csv write to {}: {e}", path.display())))
}

fn load_inputs(paths: &[PathBuf]) -> Result<Vec<PatternSequence>, Error> {
    paths.iter().map(|p| load_sequence(p)).collect()
}

fn training_log_rows(log: &TrainingLog) -> Vec<Vec<String>> {
    error_curves(log)
        .into_iter()
        .map(|(epoch, h, v)| vec![epoch.to_string(), fmt_float(h), fmt_float(v)])
        .collect()
}

// ------------------------------------------------------------------
// Commands
// ------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_train(
    out: &Path,
    seed: u64,
    input: &[PathBuf],
    frames: Option<&Path>,
    threshold: u8,
    hidden: usize,
    method: Method,
    stop_on_zero: bool,
    hyper: &HyperFlags,
) -> Result<(), Error> {
    let sequences = match frames {
        Some(path) => vec![binarize_frames(&load_frames(path)?, threshold)?],
        None => load_inputs(input)?,
    };
    let n = sequences
        .first()
        .ok_or_else(|| Error::InvalidValue("no input sequences".into()))?
        .dim();
    let mut hp = hyper.to_hyperparams(seed);
    hp.stop_on_zero = stop_on_zero;
    hp.validate()?;

    let mut init_rng = seed_rng(derive_seed(seed, "train-init", 0));
    let mut net = HiddenNetwork::random(n, hidden, hp.init_std, &mut init_rng)?;
    let log = match method {
        Method::Joint => train(&mut net, &sequences, &hp)?,
        Method::VOnly => train_v_only(&mut net, &sequences, &hp)?,
        Method::Hebbian => {
            if hp.theta != 0.0 {
                return Err(Error::InvalidValue(
                    "hebbian training with theta != 0 is only available through the \
                     ablate subcommand, which also retrieves with the matching sparse \
                     readout"
                        .into(),
                ));
            }
            hebbian_v(&mut net, &sequences)?;
            TrainingLog {
                per_epoch: Vec::new(),
                converged_epoch: None,
            }
        }
    };

    let ckpt = out.join("checkpoint.ckpt");
    save_checkpoint(&net, &ckpt)?;
    write_csv(
        &out.join("training_log.csv"),
        &["epoch", "hidden_error", "visible_error"],
        &training_log_rows(&log),
    )?;
    write_manifest(
        out,
        "train",
        seed,
        serde_json::json!({
            "hyperparams": hp,
            "hidden": hidden,
            "method": method.label(),
            "inputs": input.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "frames": frames.map(|p| p.display().to_string()),
            "threshold": frames.map(|_| threshold),
        }),
        &["checkpoint.ckpt", "training_log.csv"],
    )?;
    match (method, log.converged_epoch, log.per_epoch.last()) {
        (Method::Hebbian, _, _) => println!("one-shot hebbian assignment complete"),
        (_, Some(e), _) => println!("training errors reached zero at epoch {e}"),
        (_, None, Some(last)) => println!(
            "training errors still nonzero after {} epochs (final hidden {:.3}, visible {:.3})",
            log.per_epoch.len(),
            last.hidden_error,
            last.visible_error,
        ),
        (_, None, None) => println!("no training epochs ran"),
    }
    println!("wrote {}", ckpt.display());
    Ok(())
}

fn seed_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn cmd_retrieve(
    out: &Path,
    seed: u64,
    checkpoint: &Path,
    input: &Path,
    flips: usize,
    max_steps: Option<usize>,
    theta: f64,
) -> Result<(), Error> {
    let net = load_checkpoint(checkpoint)?;
    let sequence = load_sequence(input)?;
    let steps = max_steps.unwrap_or_else(|| default_max_steps(sequence.len()));
    let th = (theta != 0.0).then_some(theta);
    let (outcome, trajectory) =
        retrieval_trial_traced(&net, &sequence, flips, steps, seed, th)?;

    let traj_seq = PatternSequence::new(trajectory.states().to_vec(), false)?;
    save_sequence(&traj_seq, &out.join("trajectory.seq"))?;
    let outcome_path = out.join("outcome.json");
    let json = serde_json::to_string_pretty(&outcome)
        .map_err(|e| Error::InvalidValue(format!("outcome serialization: {e}")))?;
    std::fs::write(&outcome_path, json + "\n").map_err(io_err(&outcome_path))?;
    write_manifest(
        out,
        "retrieve",
        seed,
        serde_json::json!({
            "checkpoint": checkpoint.display().to_string(),
            "input": input.display().to_string(),
            "flips": flips,
            "max_steps": steps,
            "max_steps_policy": if max_steps.is_none() { "2T+10" } else { "explicit" },
            "theta": theta,
        }),
        &["trajectory.seq", "outcome.json"],
    )?;
    match outcome.tau {
        Some(tau) => println!("retrieval succeeded: aligned at offset {tau}"),
        None => println!("retrieval failed: no window of {steps} steps matched"),
    }
    Ok(())
}

fn cmd_construct(out: &Path, input: &Path) -> Result<(), Error> {
    let sequence = load_sequence(input)?;
    let net = construct_one_hot(&sequence)?;
    let ckpt = out.join("constructed.ckpt");
    save_checkpoint(&net, &ckpt)?;
    write_manifest(
        out,
        "construct",
        0,
        serde_json::json!({
            "input": input.display().to_string(),
            "n": net.n(),
            "m": net.m(),
        }),
        &["constructed.ckpt"],
    )?;
    println!("M = {}", net.m());
    println!("wrote {}", ckpt.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    out: &Path,
    seed: u64,
    axis: &str,
    values: &[usize],
    n: usize,
    hidden: usize,
    t_len: usize,
    trials: usize,
    flips: usize,
    methods: &[Method],
    max_steps: Option<usize>,
    hyper: &HyperFlags,
) -> Result<(), Error> {
    let settings = SweepSettings {
        trials,
        k_flips: flips,
        max_steps,
        master_seed: seed,
        hp: hyper.to_hyperparams(seed),
    };
    let (tables, axis_enum, csv_name) = match axis {
        "T" | "t" => (
            capacity_sweep_t(n, hidden, values, methods, &settings)?,
            Axis::T,
            "sweep_T.csv",
        ),
        "M" | "m" => (
            capacity_sweep_m(n, t_len, values, methods, &settings)?,
            Axis::M,
            "sweep_M.csv",
        ),
        other => {
            return Err(Error::InvalidValue(format!(
                "axis must be T or M, got {other:?}"
            )))
        }
    };

    let mut rows = Vec::new();
    for table in &tables {
        for (i, &value) in table.axis_values.iter().enumerate() {
            rows.push(vec![
                axis_enum.label().to_string(),
                value.to_string(),
                table.method.label().to_string(),
                table.success_counts[i].to_string(),
                table.converged_counts[i].to_string(),
                table.trials.to_string(),
            ]);
        }
    }
    write_csv(
        &out.join(csv_name),
        &["axis", "value", "method", "successes", "converged", "trials"],
        &rows,
    )?;
    write_manifest(
        out,
        "sweep",
        seed,
        serde_json::json!({
            "axis": axis_enum.label(),
            "values": values,
            "n": n,
            "hidden": hidden,
            "t_len": t_len,
            "trials": trials,
            "flips": flips,
            "methods": methods.iter().map(|m| m.label()).collect::<Vec<_>>(),
            "max_steps_policy": if max_steps.is_none() { "2T+10" } else { "explicit" },
            "hyperparams": settings.hp,
        }),
        &[csv_name],
    )?;
    for table in &tables {
        println!(
            "{}: {}",
            table.method.label(),
            table
                .axis_values
                .iter()
                .zip(&table.success_counts)
                .map(|(v, c)| format!("{}={} {}/{}", axis_enum.label(), v, c, table.trials))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(())
}

fn cmd_reconstruct(
    out: &Path,
    seed: u64,
    n: usize,
    m_values: &[usize],
    distribution: ProjectionDistribution,
    method: ReconMethod,
    trials: usize,
) -> Result<(), Error> {
    let curve = reconstruction_experiment(n, m_values, distribution, method, trials, seed)?;
    let rows: Vec<Vec<String>> = curve
        .m_values
        .iter()
        .zip(&curve.mean_error)
        .map(|(&m, &e)| vec![m.to_string(), fmt_float(e)])
        .collect();
    write_csv(&out.join("reconstruction.csv"), &["m", "mean_l1_error"], &rows)?;
    write_manifest(
        out,
        "reconstruct",
        seed,
        serde_json::json!({
            "n": n,
            "m_values": m_values,
            "distribution": distribution.label(),
            "method": method.label(),
            "trials": trials,
        }),
        &["reconstruction.csv"],
    )?;
    for (&m, &e) in curve.m_values.iter().zip(&curve.mean_error) {
        println!("M={m}: mean L1 error {e:.3}");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_ablate(
    out: &Path,
    seed: u64,
    input: &[PathBuf],
    hidden: usize,
    methods: &[Method],
    thetas: &[f64],
    trials: usize,
    flips: usize,
    max_steps: Option<usize>,
    hyper: &HyperFlags,
) -> Result<(), Error> {
    let sequences = load_inputs(input)?;
    let settings = SweepSettings {
        trials,
        k_flips: flips,
        max_steps,
        master_seed: seed,
        hp: hyper.to_hyperparams(seed),
    };
    let cells = ablation_grid(&sequences, hidden, methods, thetas, &settings)?;
    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            vec![
                c.method.label().to_string(),
                fmt_float(c.theta),
                c.successes.to_string(),
                c.trials.to_string(),
                (c.converged as u8).to_string(),
            ]
        })
        .collect();
    write_csv(
        &out.join("ablation.csv"),
        &["method", "theta", "successes", "trials", "converged"],
        &rows,
    )?;
    write_manifest(
        out,
        "ablate",
        seed,
        serde_json::json!({
            "inputs": input.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "hidden": hidden,
            "methods": methods.iter().map(|m| m.label()).collect::<Vec<_>>(),
            "thetas": thetas,
            "trials": trials,
            "flips": flips,
            "hyperparams": settings.hp,
        }),
        &["ablation.csv"],
    )?;
    for c in &cells {
        println!(
            "{} theta={}: {}/{} retrievals{}",
            c.method.label(),
            c.theta,
            c.successes,
            c.trials,
            if c.converged { "" } else { " (training did not converge)" }
        );
    }
    Ok(())
}
