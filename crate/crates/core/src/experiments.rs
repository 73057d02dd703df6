//! Seeded experiments: random-sequence capacity sweeps, noise-robust
//! retrieval, random-projection reconstruction curves, learning-error
//! curves, and the method-ablation grid.
//!
//! Every experiment is driven by one master seed. Per-trial randomness is
//! split into independent streams — sequence content, weight initialization,
//! and retrieval noise — keyed by `(axis value, trial index)`, so different
//! training methods run against byte-identical data and identical master
//! seeds reproduce every table bit for bit. Trials are embarrassingly
//! parallel; results are aggregated by cell

use crate::core_dynamics::{
    detect_alignment, BipolarVector, HiddenNetwork, Matrix, PatternSequence, Trajectory,
};
use crate::error::{Error, Result};
use crate::learning::{
    hebbian_v_theta, run_free_sparse, train, train_v_only, Hyperparams, TrainingLog,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

// ------------------------------------------------------------------
// Seed derivation
// ------------------------------------------------------------------

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from a master seed, a stream label
/// (e.g. `"sequence"`, `"init"`, `"noise"`), and an index. Keying by the
/// axis *value* rather than cell position keeps a trial's data unchanged
/// when the surrounding grid changes.
pub fn derive_seed(master: u64, stream: &str, index: u64) -> u64 {
    let mut h = master ^ splitmix64(index);
    for &b in stream.as_bytes() {
        h = splitmix64(h ^ u64::from(b));
    }
    splitmix64(h)
}

fn trial_key(axis_value: usize, trial: usize) -> u64 {
    ((axis_value as u64) << 32) | trial as u64
}

// ------------------------------------------------------------------
// Domain types
// ------------------------------------------------------------------

/// Result of one noisy-retrieval attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Some window of the free trajectory matched the whole sequence.
    pub success: bool,
    /// Alignment offset of the first matching window; present iff `success`.
    pub tau: Option<usize>,
    /// Number of entries flipped in the initial state.
    pub flips_applied: usize,
    /// Seed that generated the flips.
    pub seed: u64,
}

/// Training method under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Three-factor training of both `U` and `V`.
    Joint,
    /// `U` frozen at its random initialization; only `V` trained.
    VOnly,
    /// One-shot temporal Hebbian assignment of `V`, `U` frozen.
    Hebbian,
}

impl Method {
    /// Stable label used in CSV columns and manifests.
    pub fn label(self) -> &'static str {
        match self {
            Method::Joint => "joint",
            Method::VOnly => "V_only",
            Method::Hebbian => "hebbian",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "joint" => Ok(Method::Joint),
            "V_only" | "v_only" => Ok(Method::VOnly),
            "hebbian" => Ok(Method::Hebbian),
            other => Err(Error::InvalidValue(format!(
                "unknown method {other:?}; expected joint, V_only, or hebbian"
            ))),
        }
    }
}

/// Swept axis of a capacity table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    /// Sequence period length.
    T,
    /// Hidden-layer size.
    M,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::T => "T",
            Axis::M => "M",
        }
    }
}

/// Successful-retrieval counts along one axis for one training method.
/// `converged_counts` separates the two failure causes: a trial can fail
/// because training never reached zero errors or because retrieval from the
/// noisy state did not align.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub axis_name: Axis,
    pub axis_values: Vec<usize>,
    pub success_counts: Vec<usize>,
    pub converged_counts: Vec<usize>,
    pub trials: usize,
    pub method: Method,
}

/// Mean reconstruction error `‖x − sign(V sign(P x))‖₁` as a function of
/// the hidden size `M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconCurve {
    pub distribution: ProjectionDistribution,
    pub method: ReconMethod,
    pub m_values: Vec<usize>,
    pub mean_error: Vec<f64>,
}

/// Entry distribution of the random projection `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectionDistribution {
    /// I.i.d. standard Gaussian entries.
    Gaussian,
    /// I.i.d. uniform entries on [−1, 1].
    Uniform,
}

impl ProjectionDistribution {
    pub fn label(self) -> &'static str {
        match self {
            ProjectionDistribution::Gaussian => "gaussian",
            ProjectionDistribution::Uniform => "uniform",
        }
    }
}

impl std::str::FromStr for ProjectionDistribution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(ProjectionDistribution::Gaussian),
            "uniform" => Ok(ProjectionDistribution::Uniform),
            other => Err(Error::InvalidValue(format!(
                "unknown distribution {other:?}; expected gaussian or uniform"
            ))),
        }
    }
}

/// Choice of decoder matrix in the reconstruction study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReconMethod {
    /// `V = P⁺` (minimum-norm least-squares pseudo-inverse).
    PseudoInverse,
    /// `V = Pᵀ`.
    Transpose,
}

impl ReconMethod {
    pub fn label(self) -> &'static str {
        match self {
            ReconMethod::PseudoInverse => "pseudo_inverse",
            ReconMethod::Transpose => "transpose",
        }
    }
}

impl std::str::FromStr for ReconMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pseudo_inverse" => Ok(ReconMethod::PseudoInverse),
            "transpose" => Ok(ReconMethod::Transpose),
            other => Err(Error::InvalidValue(format!(
                "unknown reconstruction method {other:?}; expected pseudo_inverse or transpose"
            ))),
        }
    }
}

/// Shared knobs of the sweep experiments.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSettings {
    pub trials: usize,
    pub k_flips: usize,
    /// Retrieval window; `None` selects `default_max_steps(T)`.
    pub max_steps: Option<usize>,
    pub master_seed: u64,
    pub hp: Hyperparams,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings {
            trials: 100,
            k_flips: 10,
            max_steps: None,
            master_seed: 0,
            hp: Hyperparams::default(),
        }
    }
}

/// One cell of the ablation grid: one method trained at one sparsity level
/// on the shared data, with its retrieval score and a sample trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AblationCell {
    pub method: Method,
    pub theta: f64,
    pub successes: usize,
    pub trials: usize,
    pub converged: bool,
    /// Visible states of the first retrieval attempt (noisy start included).
    pub sample_trajectory: Vec<Vec<i8>>,
}

// ------------------------------------------------------------------
// Sequence generation and noise
// ------------------------------------------------------------------

/// Samples a periodic sequence of `t_len` patterns in `{−1,+1}^n`: the
/// first `t_len − 1` are drawn uniformly, resampling any draw identical to
/// an earlier pattern, and the last repeats the first. Errors when fewer
/// than `t_len − 1` distinct patterns exist.
pub fn gen_random_periodic_sequence<R: Rng>(
    n: usize,
    t_len: usize,
    rng: &mut R,
) -> Result<PatternSequence> {
    if n == 0 {
        return Err(Error::InvalidValue("pattern dimension must be >= 1".into()));
    }
    if t_len < 2 {
        return Err(Error::InvalidValue("period length must be >= 2".into()));
    }
    if n < 64 && (t_len - 1) as u128 > 1u128 << n {
        return Err(Error::Infeasible(format!(
            "cannot draw {} distinct patterns from {{-1,+1}}^{n} (only 2^{n} exist)",
            t_len - 1
        )));
    }
    let mut seen = std::collections::HashSet::with_capacity(t_len);
    let mut patterns = Vec::with_capacity(t_len);
    while patterns.len() < t_len - 1 {
        let candidate = BipolarVector::random(n, rng)?;
        if seen.insert(candidate.clone()) {
            patterns.push(candidate);
        }
    }
    patterns.push(patterns[0].clone());
    PatternSequence::new(patterns, true)
}

/// Flips exactly `k` distinct, uniformly chosen entries of `x`.
pub fn salt_pepper<R: Rng>(x: &BipolarVector, k: usize, rng: &mut R) -> Result<BipolarVector> {
    let n = x.dim();
    if k > n {
        return Err(Error::InvalidValue(format!(
            "cannot flip {k} of {n} entries"
        )));
    }
    // Partial Fisher–Yates: after k swaps the prefix holds a uniform
    // k-subset of positions.
    let mut indices: Vec<usize> = (0..n).collect();
    let mut noisy = x.clone();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        indices.swap(i, j);
        noisy.flip(indices[i]);
    }
    Ok(noisy)
}

/// Default retrieval window: room for one full transient period plus the
/// aligned replay, with slack.
pub fn default_max_steps(t_len: usize) -> usize {
    2 * t_len + 10
}

// ------------------------------------------------------------------
// Retrieval trials
// ------------------------------------------------------------------

/// Like [`retrieval_trial`], but also returns the full trajectory (for
/// dumps and inspection). `theta = Some(th)` retrieves under the sparse
/// hidden response; `None` uses the plain dynamics.
pub fn retrieval_trial_traced(
    net: &HiddenNetwork,
    sequence: &PatternSequence,
    k_flips: usize,
    max_steps: usize,
    noise_seed: u64,
    theta: Option<f64>,
) -> Result<(TrialOutcome, Trajectory)> {
    if sequence.dim() != net.n() {
        return Err(Error::shape(
            "retrieval_trial",
            format!("sequence of dimension {}", net.n()),
            format!("dimension {}", sequence.dim()),
        ));
    }
    if max_steps + 1 < sequence.len() {
        return Err(Error::InvalidValue(format!(
            "max_steps = {max_steps} cannot fit a sequence of length {}",
            sequence.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(noise_seed);
    let start = salt_pepper(sequence.pattern(0), k_flips, &mut rng)?;
    let traj = match theta {
        Some(th) => run_free_sparse(net, &start, max_steps, th)?,
        None => net.run_free(&start, max_steps, false)?,
    };
    let tau = detect_alignment(&traj, sequence);
    Ok((
        TrialOutcome {
            success: tau.is_some(),
            tau,
            flips_applied: k_flips,
            seed: noise_seed,
        },
        traj,
    ))
}

/// Runs one noisy-retrieval attempt: flip `k_flips` entries of the first
/// pattern, run the dynamics for `max_steps` steps, and scan the trajectory
/// for a window equal to the whole sequence.
pub fn retrieval_trial(
    net: &HiddenNetwork,
    sequence: &PatternSequence,
    k_flips: usize,
    max_steps: usize,
    noise_seed: u64,
) -> Result<TrialOutcome> {
    retrieval_trial_traced(net, sequence, k_flips, max_steps, noise_seed, None)
        .map(|(outcome, _)| outcome)
}

/// Retrieval under the sparse hidden response (`θ` subtracted before the
/// hidden sign), matching how `V`-only and Hebbian networks trained with
/// sparse codes must be read out.
pub fn retrieval_trial_sparse(
    net: &HiddenNetwork,
    sequence: &PatternSequence,
    k_flips: usize,
    max_steps: usize,
    noise_seed: u64,
    theta: f64,
) -> Result<TrialOutcome> {
    retrieval_trial_traced(net, sequence, k_flips, max_steps, noise_seed, Some(theta))
        .map(|(outcome, _)| outcome)
}

// ------------------------------------------------------------------
// Method dispatch
// ------------------------------------------------------------------

/// Trains `net` on `sequences` by `method`. Joint and V-only training stop
/// at the first zero-error epoch (further epochs cannot change any weight);
/// the Hebbian assignment is one-shot. Returns the training log where one
/// exists and whether training converged (always true for Hebbian, whose
/// rule has no error to drive).
fn train_method(
    net: &mut HiddenNetwork,
    sequences: &[PatternSequence],
    hp: &Hyperparams,
    method: Method,
) -> Result<(Option<TrainingLog>, bool)> {
    let mut hp_run = hp.clone();
    hp_run.stop_on_zero = true;
    match method {
        Method::Joint => {
            let log = train(net, sequences, &hp_run)?;
            let converged = log.converged_epoch.is_some();
            Ok((Some(log), converged))
        }
        Method::VOnly => {
            let log = train_v_only(net, sequences, &hp_run)?;
            let converged = log.converged_epoch.is_some();
            Ok((Some(log), converged))
        }
        Method::Hebbian => {
            hebbian_v_theta(net, sequences, hp.theta)?;
            Ok((None, true))
        }
    }
}

/// Sparsity threshold to apply at retrieval time: methods whose hidden
/// codes were `sign(U x − θ)` during training must be read out the same
/// way, while joint training uses `θ` only inside the hidden *targets* and
/// retrieves with the plain dynamics.
fn retrieval_theta(method: Method, theta: f64) -> Option<f64> {
    match method {
        Method::Joint => None,
        Method::VOnly | Method::Hebbian => (theta != 0.0).then_some(theta),
    }
}

// ------------------------------------------------------------------
// Capacity sweeps
// ------------------------------------------------------------------

fn validate_axis(values: &[usize], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidValue(format!("{what} values must be non-empty")));
    }
    if !values.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidValue(format!(
            "{what} values must be strictly increasing, got {values:?}"
        )));
    }
    Ok(())
}

/// Per-(cell, trial) result rows, later summed by cell. Keeping the rows
/// keyed by cell index makes aggregation independent of completion order.
struct TrialRow {
    cell: usize,
    method_idx: usize,
    success: bool,
    converged: bool,
}

fn run_capacity_cells(
    axis: Axis,
    n: usize,
    axis_values: &[usize],
    cell_dims: &[(usize, usize)], // (T, M) per cell
    methods: &[Method],
    settings: &SweepSettings,
) -> Result<Vec<SweepTable>> {
    validate_axis(axis_values, axis.label())?;
    if methods.is_empty() {
        return Err(Error::InvalidValue("need at least one method".into()));
    }
    if settings.trials == 0 {
        return Err(Error::InvalidValue("trials must be >= 1".into()));
    }
    settings.hp.validate()?;

    let tasks: Vec<(usize, usize)> = (0..axis_values.len())
        .flat_map(|cell| (0..settings.trials).map(move |trial| (cell, trial)))
        .collect();

    let rows: Vec<Vec<TrialRow>> = tasks
        .par_iter()
        .map(|&(cell, trial)| -> Result<Vec<TrialRow>> {
            let (t_len, m) = cell_dims[cell];
            let key = trial_key(axis_values[cell], trial);
            let seq_seed = derive_seed(settings.master_seed, "sequence", key);
            let init_seed = derive_seed(settings.master_seed, "init", key);
            let noise_seed = derive_seed(settings.master_seed, "noise", key);

            let mut seq_rng = ChaCha8Rng::seed_from_u64(seq_seed);
            let sequence = gen_random_periodic_sequence(n, t_len, &mut seq_rng)?;
            let max_steps = settings.max_steps.unwrap_or_else(|| default_max_steps(t_len));

            let mut out = Vec::with_capacity(methods.len());
            for (method_idx, &method) in methods.iter().enumerate() {
                let mut init_rng = ChaCha8Rng::seed_from_u64(init_seed);
                let mut net = HiddenNetwork::random(n, m, settings.hp.init_std, &mut init_rng)?;
                let (_, converged) = train_method(&mut net, std::slice::from_ref(&sequence), &settings.hp, method)?;
                let outcome = match retrieval_theta(method, settings.hp.theta) {
                    Some(th) => retrieval_trial_sparse(&net, &sequence, settings.k_flips, max_steps, noise_seed, th)?,
                    None => retrieval_trial(&net, &sequence, settings.k_flips, max_steps, noise_seed)?,
                };
                out.push(TrialRow {
                    cell,
                    method_idx,
                    success: outcome.success,
                    converged,
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut tables: Vec<SweepTable> = methods
        .iter()
        .map(|&method| SweepTable {
            axis_name: axis,
            axis_values: axis_values.to_vec(),
            success_counts: vec![0; axis_values.len()],
            converged_counts: vec![0; axis_values.len()],
            trials: settings.trials,
            method,
        })
        .collect();
    for row in rows.iter().flatten() {
        let table = &mut tables[row.method_idx];
        if row.success {
            table.success_counts[row.cell] += 1;
        }
        if row.converged {
            table.converged_counts[row.cell] += 1;
        }
    }
    Ok(tables)
}

/// Capacity versus period length: for every `T` in `t_values` and every
/// trial, draws a fresh random periodic sequence and a fresh network of `m`
/// hidden units, trains by each method on identical data, and attempts
/// noisy retrieval. Returns one table per method, in `methods` order.
pub fn capacity_sweep_t(
    n: usize,
    m: usize,
    t_values: &[usize],
    methods: &[Method],
    settings: &SweepSettings,
) -> Result<Vec<SweepTable>> {
    if m == 0 {
        return Err(Error::InvalidValue("hidden size must be >= 1".into()));
    }
    if t_values.iter().any(|&t| t < 2) {
        return Err(Error::InvalidValue("period lengths must be >= 2".into()));
    }
    let cell_dims: Vec<(usize, usize)> = t_values.iter().map(|&t| (t, m)).collect();
    run_capacity_cells(Axis::T, n, t_values, &cell_dims, methods, settings)
}

/// Capacity versus hidden-layer size at fixed period length `t_len`.
pub fn capacity_sweep_m(
    n: usize,
    t_len: usize,
    m_values: &[usize],
    methods: &[Method],
    settings: &SweepSettings,
) -> Result<Vec<SweepTable>> {
    if t_len < 2 {
        return Err(Error::InvalidValue("period length must be >= 2".into()));
    }
    if m_values.iter().any(|&m| m == 0) {
        return Err(Error::InvalidValue("hidden sizes must be >= 1".into()));
    }
    let cell_dims: Vec<(usize, usize)> = m_values.iter().map(|&m| (t_len, m)).collect();
    run_capacity_cells(Axis::M, n, m_values, &cell_dims, methods, settings)
}

// ------------------------------------------------------------------
// Reconstruction study
// ------------------------------------------------------------------

/// Minimum-norm least-squares pseudo-inverse via SVD, discarding singular
/// values below `1e-10` relative to the largest.
pub fn pseudo_inverse(p: &Matrix) -> Result<Matrix> {
    let (rows, cols) = (p.rows(), p.cols());
    let dm = nalgebra::DMatrix::from_row_slice(rows, cols, p.data());
    let svd = dm.svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let eps = 1e-10 * sigma_max;
    let pinv = svd
        .pseudo_inverse(eps)
        .map_err(|e| Error::InvalidValue(format!("pseudo-inverse failed: {e}")))?;
    // pinv is cols × rows
    let mut data = Vec::with_capacity(cols * rows);
    for r in 0..cols {
        for c in 0..rows {
            data.push(pinv[(r, c)]);
        }
    }
    Matrix::from_vec(cols, rows, data)
}

/// Transpose of a dense matrix.
pub fn transpose(p: &Matrix) -> Matrix {
    let (rows, cols) = (p.rows(), p.cols());
    let mut out = Matrix::zeros(cols, rows);
    for r in 0..rows {
        for c in 0..cols {
            out.row_mut(c)[r] = p.get(r, c);
        }
    }
    out
}

/// L1 error of the round trip through the binary hidden code:
/// `‖x − sign(V sign(P x))‖₁` with `P` of shape M×N and `V` of shape N×M.
pub fn reconstruction_error(p: &Matrix, v: &Matrix, x: &BipolarVector) -> Result<f64> {
    if p.cols() != x.dim() || v.rows() != x.dim() || v.cols() != p.rows() {
        return Err(Error::shape(
            "reconstruction_error",
            format!("P of shape MxN and V of shape NxM with N = {}", x.dim()),
            format!("P {}x{}, V {}x{}", p.rows(), p.cols(), v.rows(), v.cols()),
        ));
    }
    let code = crate::learning::project_target(p, x, 0.0)?;
    let mut pre = vec![0.0; v.rows()];
    let zero_bias = vec![0.0; v.rows()];
    v.mul_bipolar_into(&code, &zero_bias, &mut pre);
    let x_hat = BipolarVector::new(pre.iter().map(|&s| crate::core_dynamics::sign(s)).collect())?;
    Ok(x.l1_distance(&x_hat))
}

/// Mean reconstruction error over random bipolar inputs, as a function of
/// the hidden size. Each trial draws a fresh projection and a fresh input.
pub fn reconstruction_experiment(
    n: usize,
    m_values: &[usize],
    distribution: ProjectionDistribution,
    method: ReconMethod,
    trials: usize,
    master_seed: u64,
) -> Result<ReconCurve> {
    if n == 0 {
        return Err(Error::InvalidValue("dimension must be >= 1".into()));
    }
    validate_axis(m_values, "M")?;
    if m_values[0] == 0 {
        return Err(Error::InvalidValue("hidden sizes must be >= 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidValue("trials must be >= 1".into()));
    }

    let tasks: Vec<(usize, usize)> = (0..m_values.len())
        .flat_map(|cell| (0..trials).map(move |trial| (cell, trial)))
        .collect();
    let errors: Vec<(usize, f64)> = tasks
        .par_iter()
        .map(|&(cell, trial)| -> Result<(usize, f64)> {
            let m = m_values[cell];
            let key = trial_key(m, trial);
            let mut p_rng = ChaCha8Rng::seed_from_u64(derive_seed(master_seed, "recon-p", key));
            let mut x_rng = ChaCha8Rng::seed_from_u64(derive_seed(master_seed, "recon-x", key));
            let p = match distribution {
                ProjectionDistribution::Gaussian => Matrix::gaussian(m, n, 1.0, &mut p_rng)?,
                ProjectionDistribution::Uniform => Matrix::uniform(m, n, -1.0, 1.0, &mut p_rng)?,
            };
            let v = match method {
                ReconMethod::PseudoInverse => pseudo_inverse(&p)?,
                ReconMethod::Transpose => transpose(&p),
            };
            let x = BipolarVector::random(n, &mut x_rng)?;
            Ok((cell, reconstruction_error(&p, &v, &x)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sums = vec![0.0; m_values.len()];
    for &(cell, err) in &errors {
        sums[cell] += err;
    }
    Ok(ReconCurve {
        distribution,
        method,
        m_values: m_values.to_vec(),
        mean_error: sums.into_iter().map(|s| s / trials as f64).collect(),
    })
}

// ------------------------------------------------------------------
// Error curves and ablation
// ------------------------------------------------------------------

/// Projects a training log into `(epoch, hidden_error, visible_error)` rows
/// for CSV emission.
pub fn error_curves(log: &TrainingLog) -> Vec<(usize, f64, f64)> {
    log.per_epoch
        .iter()
        .map(|e| (e.epoch, e.hidden_error, e.visible_error))
        .collect()
}

/// Trains every (method, θ) combination on the same sequences with the same
/// initialization and scores noisy retrieval on every sequence over
/// `settings.trials` attempts each. The first attempt's trajectory is kept
/// as a sample.
pub fn ablation_grid(
    sequences: &[PatternSequence],
    m: usize,
    methods: &[Method],
    thetas: &[f64],
    settings: &SweepSettings,
) -> Result<Vec<AblationCell>> {
    if sequences.is_empty() {
        return Err(Error::InvalidValue("need at least one sequence".into()));
    }
    if methods.is_empty() || thetas.is_empty() {
        return Err(Error::InvalidValue("need at least one method and one theta".into()));
    }
    if settings.trials == 0 {
        return Err(Error::InvalidValue("trials must be >= 1".into()));
    }
    let n = sequences[0].dim();

    let combos: Vec<(usize, usize)> = (0..methods.len())
        .flat_map(|mi| (0..thetas.len()).map(move |ti| (mi, ti)))
        .collect();
    combos
        .par_iter()
        .map(|&(mi, ti)| -> Result<AblationCell> {
            let method = methods[mi];
            let theta = thetas[ti];
            let mut hp = settings.hp.clone();
            hp.theta = theta;
            let mut init_rng =
                ChaCha8Rng::seed_from_u64(derive_seed(settings.master_seed, "ablation-init", 0));
            let mut net = HiddenNetwork::random(n, m, hp.init_std, &mut init_rng)?;
            let (_, converged) = train_method(&mut net, sequences, &hp, method)?;

            let th = retrieval_theta(method, theta);
            let mut successes = 0;
            let mut sample: Option<Trajectory> = None;
            for (s, seq) in sequences.iter().enumerate() {
                let max_steps = settings
                    .max_steps
                    .unwrap_or_else(|| default_max_steps(seq.len()));
                for trial in 0..settings.trials {
                    let noise_seed = derive_seed(
                        settings.master_seed,
                        "ablation-noise",
                        trial_key(s, trial),
                    );
                    let (outcome, traj) = retrieval_trial_traced(
                        &net,
                        seq,
                        settings.k_flips,
                        max_steps,
                        noise_seed,
                        th,
                    )?;
                    if outcome.success {
                        successes += 1;
                    }
                    if sample.is_none() {
                        sample = Some(traj);
                    }
                }
            }
            let sample_trajectory = sample
                .map(|t| t.states().iter().map(|s| s.entries().to_vec()).collect())
                .unwrap_or_default();
            Ok(AblationCell {
                method,
                theta,
                successes,
                trials: sequences.len() * settings.trials,
                converged,
                sample_trajectory,
            })
        })
        .collect()
}

// ------------------------------------------------------------------
// Tests
// ------------------------------------------------------------------
