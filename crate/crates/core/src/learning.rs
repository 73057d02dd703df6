//! Local three-factor learning of sequence transitions, plus baselines and
//! the explicit one-hot construction.
//!
//! For each consecutive pair `(x(t), x(t+1))` of a stored sequence, hidden
//! targets are manufactured by a fixed random projection and both weight
//! matrices receive margin-perceptron updates:
//!
//! ```text
//! z_i(t+1) = sign(Σ_k P_ik x_k(t+1) − θ)                  (hidden target)
//! μ_i(t)   = H(κ − z_i(t+1) · Σ_k U_ik x_k(t))            (hidden error)
//! U_ij    += η μ_i(t) z_i(t+1) x_j(t)
//! y_i(t)   = sign(Σ_k U_ik x_k(t))                        (hidden response)
//! ν_j(t)   = H(κ − x_j(t+1) · Σ_k V_jk y_k(t))            (visible error)
//! V_ji    += η ν_j(t) x_j(t+1) y_i(t)
//! ```
//!
//! `H` is the Heaviside step with `H(0) = 1`, `κ > 0` the robustness margin
//! and `η > 0` the learning rate. `U` is updated before `V` on every pair,
//! and by default `y` is computed from the just-updated `U` (a flag flips
//! this for ablation). The sparsity threshold `θ` defaults to 0; a positive
//! value sparsifies the hidden targets. Each update is local: it reads only
//! the pre- and postsynaptic activities and the row's own margin.
//!
//! Networks carrying explicit biases add them to the corresponding
//! pre-activations (the absorbed form of the same equations); the default
//! learning path has all biases at zero, where the equations above hold
//! verbatim.

use crate::core_dynamics::{
    sign, BipolarVector, HiddenNetwork, Matrix, PatternSequence, Trajectory, VisibleOnlyNetwork,
};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

// ------------------------------------------------------------------
// Hyperparameters and training logs
// ------------------------------------------------------------------

/// Learning hyperparameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hyperparams {
    /// Learning rate η > 0.
    pub eta: f64,
    /// Robustness margin κ > 0.
    pub kappa: f64,
    /// Number of passes over all sequence pairs.
    pub epochs: usize,
    /// Master seed recorded with runs that consume randomness.
    pub seed: u64,
    /// Standard deviation of the Gaussian weight initialization.
    pub init_std: f64,
    /// Sparsity threshold θ >= 0 subtracted inside the hidden-target sign.
    pub theta: f64,
    /// Stop training at the first epoch whose errors are both exactly zero.
    /// Once that happens no weight can change again, so stopping is
    /// observationally identical to running the remaining epochs.
    pub stop_on_zero: bool,
    /// Ablation flag: compute `y` from `U` as it was before this pair's
    /// update instead of after it.
    pub y_uses_pre_update_u: bool,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            eta: 1e-3,
            kappa: 1.0,
            epochs: 500,
            seed: 0,
            init_std: 1e-3,
            theta: 0.0,
            stop_on_zero: false,
            y_uses_pre_update_u: false,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::InvalidValue(format!("eta must be > 0, got {}", self.eta)));
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(Error::InvalidValue(format!(
                "kappa must be > 0, got {}",
                self.kappa
            )));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidValue("epochs must be >= 1".into()));
        }
        if !(self.init_std.is_finite() && self.init_std >= 0.0) {
            return Err(Error::InvalidValue(format!(
                "init_std must be >= 0, got {}",
                self.init_std
            )));
        }
        if !(self.theta.is_finite() && self.theta >= 0.0) {
            return Err(Error::InvalidValue(format!(
                "theta must be >= 0, got {}",
                self.theta
            )));
        }
        Ok(())
    }
}

/// Aggregated errors of one training epoch: `hidden_error = (1/M) Σ_t Σ_i μ_i(t)`
/// and `visible_error = (1/N) Σ_t Σ_j ν_j(t)`, summed over every pair of
/// every sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochErrors {
    pub epoch: usize,
    pub hidden_error: f64,
    pub visible_error: f64,
}

/// Per-epoch error trace plus the first epoch (1-based) at which both
/// errors were exactly zero, if any.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainingLog {
    pub per_epoch: Vec<EpochErrors>,
    pub converged_epoch: Option<usize>,
}

// ------------------------------------------------------------------
// Elementary update operations
// ------------------------------------------------------------------

/// Hidden target `z_i = sign(Σ_k P_ik x_k − θ)`. With `θ = 0` this is the
/// plain projected sign of `x_next`.
pub fn project_target(p: &Matrix, x_next: &BipolarVector, theta: f64) -> Result<BipolarVector> {
    if x_next.dim() != p.cols() {
        return Err(Error::shape(
            "project_target",
            format!("pattern of dimension {}", p.cols()),
            format!("dimension {}", x_next.dim()),
        ));
    }
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(Error::InvalidValue(format!("theta must be >= 0, got {theta}")));
    }
    let xe = x_next.entries();
    let mut out = Vec::with_capacity(p.rows());
    for i in 0..p.rows() {
        let row = p.row(i);
        let mut sum = 0.0;
        for (w, &e) in row.iter().zip(xe) {
            sum += w * f64::from(e);
        }
        out.push(sign(sum - theta));
    }
    BipolarVector::new(out)
}

/// Hidden response with a sparsity threshold:
/// `y_i = sign(Σ_k U_ik x_k + b_hidden_i − θ)`. `θ = 0` recovers
/// `HiddenNetwork::hidden_step` exactly.
pub fn hidden_step_sparse(net: &HiddenNetwork, xi: &BipolarVector, theta: f64) -> Result<BipolarVector> {
    if xi.dim() != net.n() {
        return Err(Error::shape(
            "hidden_step_sparse",
            format!("state of dimension {}", net.n()),
            format!("dimension {}", xi.dim()),
        ));
    }
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(Error::InvalidValue(format!("theta must be >= 0, got {theta}")));
    }
    let mut pre = vec![0.0; net.m()];
    net.hidden_pre_into(xi, &mut pre);
    BipolarVector::new(pre.iter().map(|&v| sign(v - theta)).collect())
}

/// Free-running trajectory using the sparse hidden response: each step is
/// `ξ(t+1) = visible_update(sign(U ξ(t) − θ))`. Used to retrieve sequences
/// from networks whose `V` was trained against sparse hidden codes.
pub fn run_free_sparse(
    net: &HiddenNetwork,
    init: &BipolarVector,
    steps: usize,
    theta: f64,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::InvalidValue("run_free_sparse needs steps >= 1".into()));
    }
    let mut states = Vec::with_capacity(steps + 1);
    states.push(init.clone());
    let mut current = init.clone();
    for _ in 0..steps {
        let hidden = hidden_step_sparse(net, &current, theta)?;
        let visible = net.visible_update(&hidden)?;
        states.push(visible.clone());
        current = visible;
    }
    Ok(Trajectory::from_states(states))
}

fn check_pair_dims(net: &HiddenNetwork, x_t: &BipolarVector, x_next: &BipolarVector) -> Result<()> {
    if x_t.dim() != net.n() || x_next.dim() != net.n() {
        return Err(Error::shape(
            "pair update",
            format!("patterns of dimension {}", net.n()),
            format!("dimensions {} and {}", x_t.dim(), x_next.dim()),
        ));
    }
    Ok(())
}

/// One margin-perceptron update of `U` on the pair `(x_t, x_next)`.
///
/// Computes the hidden targets `z = sign(P x_next − θ)`, the error vector
/// `μ_i = H(κ − z_i · (U x_t + b_hidden)_i)` from the pre-update `U`, and
/// increments row `i` by `η z_i x_tᵀ` wherever `μ_i = 1`. All rows update
/// in parallel from the pre-update state. Returns `μ`. `P`, `V` and all
/// biases are untouched.
pub fn update_u(
    net: &mut HiddenNetwork,
    x_t: &BipolarVector,
    x_next: &BipolarVector,
    hp: &Hyperparams,
) -> Result<Vec<u8>> {
    hp.validate()?;
    check_pair_dims(net, x_t, x_next)?;
    let z = project_target(net.p(), x_next, hp.theta)?;
    let xf = x_t.to_f64();
    let mut pre = vec![0.0; net.m()];
    net.hidden_pre_into(x_t, &mut pre);
    let mut mu = vec![0u8; net.m()];
    update_u_core(net, &xf, &z, &pre, hp.eta, hp.kappa, &mut mu)?;
    Ok(mu)
}

/// Applies the `U` row updates given precomputed targets, pre-activations,
/// and the pattern widened to f64. Writes `μ` into the scratch slice and
/// returns the violation count; errors if an updated row stops being finite.
fn update_u_core(
    net: &mut HiddenNetwork,
    xf: &[f64],
    z: &BipolarVector,
    pre_u: &[f64],
    eta: f64,
    kappa: f64,
    mu: &mut [u8],
) -> Result<u64> {
    let m = net.m();
    let mut violations = 0u64;
    for i in 0..m {
        let margin = f64::from(z.get(i)) * pre_u[i];
        if kappa - margin >= 0.0 {
            mu[i] = 1;
            violations += 1;
            let step = eta * f64::from(z.get(i));
            let row = net.u_mut().row_mut(i);
            let mut finite = true;
            for (w, &e) in row.iter_mut().zip(xf) {
                *w += step * e;
                finite &= w.is_finite();
            }
            if !finite {
                return Err(Error::NonFinite("U row after update"));
            }
        } else {
            mu[i] = 0;
        }
    }
    Ok(violations)
}

/// One margin-perceptron update of `V` on the pair `(x_t, x_next)`.
///
/// Uses the hidden response `y = sign(U x_t + b_hidden)` of the *current*
/// `U` (i.e. post-`update_u` when run in the standard order), computes
/// `ν_j = H(κ − x_next_j · (V y + b_visible)_j)` from the pre-update `V`,
/// and increments row `j` by `η x_next_j yᵀ` wherever `ν_j = 1`. Returns `ν`.
pub fn update_v(
    net: &mut HiddenNetwork,
    x_t: &BipolarVector,
    x_next: &BipolarVector,
    hp: &Hyperparams,
) -> Result<Vec<u8>> {
    hp.validate()?;
    check_pair_dims(net, x_t, x_next)?;
    let y = net.hidden_step(x_t)?;
    update_v_given_y(net, &y, x_next, hp.eta, hp.kappa)
}

/// `V` update against a caller-supplied hidden response `y`.
fn update_v_given_y(
    net: &mut HiddenNetwork,
    y: &BipolarVector,
    x_next: &BipolarVector,
    eta: f64,
    kappa: f64,
) -> Result<Vec<u8>> {
    let n = net.n();
    let yf = y.to_f64();
    let mut pre = vec![0.0; n];
    let mut nu = vec![0u8; n];
    update_v_core(net, &yf, x_next, eta, kappa, &mut pre, &mut nu)?;
    Ok(nu)
}

/// `V` update against a hidden response widened to f64, with caller-owned
/// scratch. Writes `ν` and returns the violation count.
fn update_v_core(
    net: &mut HiddenNetwork,
    yf: &[f64],
    x_next: &BipolarVector,
    eta: f64,
    kappa: f64,
    pre: &mut [f64],
    nu: &mut [u8],
) -> Result<u64> {
    let n = net.n();
    net.v().mul_slice_into(yf, net.bias_visible(), pre);
    let mut violations = 0u64;
    for j in 0..n {
        let margin = f64::from(x_next.get(j)) * pre[j];
        if kappa - margin >= 0.0 {
            nu[j] = 1;
            violations += 1;
            let step = eta * f64::from(x_next.get(j));
            let row = net.v_mut().row_mut(j);
            let mut finite = true;
            for (w, &e) in row.iter_mut().zip(yf) {
                *w += step * e;
                finite &= w.is_finite();
            }
            if !finite {
                return Err(Error::NonFinite("V row after update"));
            }
        } else {
            nu[j] = 0;
        }
    }
    Ok(violations)
}

/// Runs `update_u` then `update_v` on one pair, in that order. With the
/// default flags, `y` inside the `V` update sees the `U` rows this call just
/// changed.
pub fn train_pair(
    net: &mut HiddenNetwork,
    x_t: &BipolarVector,
    x_next: &BipolarVector,
    hp: &Hyperparams,
) -> Result<(Vec<u8>, Vec<u8>)> {
    hp.validate()?;
    check_pair_dims(net, x_t, x_next)?;
    let y_pre = if hp.y_uses_pre_update_u {
        Some(net.hidden_step(x_t)?)
    } else {
        None
    };
    let mu = update_u(net, x_t, x_next, hp)?;
    let nu = match y_pre {
        Some(y) => update_v_given_y(net, &y, x_next, hp.eta, hp.kappa)?,
        None => update_v(net, x_t, x_next, hp)?,
    };
    Ok((mu, nu))
}

// ------------------------------------------------------------------
// Full training loops
// ------------------------------------------------------------------

fn validate_training_set(net: &HiddenNetwork, sequences: &[PatternSequence]) -> Result<()> {
    if sequences.is_empty() {
        return Err(Error::InvalidValue("training needs at least one sequence".into()));
    }
    for (s, seq) in sequences.iter().enumerate() {
        if seq.len() < 2 {
            return Err(Error::InvalidValue(format!(
                "sequence {s} has length {} but training needs length >= 2",
                seq.len()
            )));
        }
        if seq.dim() != net.n() {
            return Err(Error::shape(
                "train",
                format!("sequences of dimension {}", net.n()),
                format!("sequence {s} has dimension {}", seq.dim()),
            ));
        }
    }
    Ok(())
}

/// Per-sequence caches reused every epoch: patterns widened to f64 and the
/// (fixed) hidden targets of every pair.
struct SeqCache {
    xf: Vec<Vec<f64>>,
    z: Vec<BipolarVector>,
}

fn build_caches(
    net: &HiddenNetwork,
    sequences: &[PatternSequence],
    theta: f64,
    with_targets: bool,
) -> Result<Vec<SeqCache>> {
    sequences
        .iter()
        .map(|seq| {
            let xf = seq.patterns().iter().map(|p| p.to_f64()).collect();
            let z = if with_targets {
                (1..seq.len())
                    .map(|t| project_target(net.p(), seq.pattern(t), theta))
                    .collect::<Result<Vec<_>>>()?
            } else {
                Vec::new()
            };
            Ok(SeqCache { xf, z })
        })
        .collect()
}

fn weights_finite(net: &HiddenNetwork) -> bool {
    net.u().data().iter().all(|v| v.is_finite()) && net.v().data().iter().all(|v| v.is_finite())
}

/// Trains `U` and `V` jointly on every consecutive pair of every sequence,
/// visiting pairs in sequence order within each epoch (no shuffling, no
/// batching — the rule is order-dependent and runs deterministically).
///
/// The network must already be initialized; this function never reseeds or
/// perturbs weights on its own. Multiple sequences share the one network.
pub fn train(
    net: &mut HiddenNetwork,
    sequences: &[PatternSequence],
    hp: &Hyperparams,
) -> Result<TrainingLog> {
    hp.validate()?;
    validate_training_set(net, sequences)?;
    let caches = build_caches(net, sequences, hp.theta, true)?;

    let m = net.m();
    let n = net.n();
    let n_f = n as f64;
    let mut pre_u = vec![0.0; m];
    let mut pre_v = vec![0.0; n];
    let mut mu = vec![0u8; m];
    let mut nu = vec![0u8; n];
    let mut yf = vec![0.0; m];
    let mut per_epoch = Vec::with_capacity(hp.epochs);
    let mut converged_epoch = None;

    for epoch in 1..=hp.epochs {
        let mut mu_total: u64 = 0;
        let mut nu_total: u64 = 0;
        for (seq, cache) in sequences.iter().zip(&caches) {
            for t in 0..seq.len() - 1 {
                let xf = &cache.xf[t];
                let x_next = seq.pattern(t + 1);
                let z = &cache.z[t];

                net.u().mul_slice_into(xf, net.bias_hidden(), &mut pre_u);
                mu_total += update_u_core(net, xf, z, &pre_u, hp.eta, hp.kappa, &mut mu)?;

                // Hidden response for the V update. The incremental form
                // (U_i + η z_i x)·x = pre_i + η z_i N is algebraically exact;
                // rows whose pre-activation lands inside the float-rounding
                // band are recomputed so the sign always matches a fresh
                // evaluation of U x_t.
                for i in 0..m {
                    let v = if hp.y_uses_pre_update_u || mu[i] == 0 {
                        pre_u[i]
                    } else {
                        let shifted = pre_u[i] + hp.eta * f64::from(z.get(i)) * n_f;
                        if shifted.abs() < 1e-9 {
                            let row = net.u().row(i);
                            let mut sum = 0.0;
                            for (w, x) in row.iter().zip(xf) {
                                sum += w * x;
                            }
                            sum + net.bias_hidden()[i]
                        } else {
                            shifted
                        }
                    };
                    yf[i] = f64::from(sign(v));
                }

                nu_total +=
                    update_v_core(net, &yf, x_next, hp.eta, hp.kappa, &mut pre_v, &mut nu)?;
            }
        }
        let errors = EpochErrors {
            epoch,
            hidden_error: mu_total as f64 / m as f64,
            visible_error: nu_total as f64 / n as f64,
        };
        per_epoch.push(errors);
        if mu_total > 0 || nu_total > 0 {
            if !weights_finite(net) {
                return Err(Error::NonFinite("weights after training epoch"));
            }
        } else if converged_epoch.is_none() {
            converged_epoch = Some(epoch);
            if hp.stop_on_zero {
                break;
            }
        }
    }
    Ok(TrainingLog {
        per_epoch,
        converged_epoch,
    })
}

/// Trains only `V`, leaving `U` frozen at its current (typically random)
/// values. The hidden responses `y(t) = sign(U x(t) + b_hidden − θ)` are
/// therefore fixed codes, computed once. The reported `hidden_error` is 0
/// by definition since no hidden-side updates run.
pub fn train_v_only(
    net: &mut HiddenNetwork,
    sequences: &[PatternSequence],
    hp: &Hyperparams,
) -> Result<TrainingLog> {
    hp.validate()?;
    validate_training_set(net, sequences)?;

    // Fixed hidden codes per (sequence, t), t = 0..T-2, widened to f64.
    let mut codes: Vec<Vec<Vec<f64>>> = Vec::with_capacity(sequences.len());
    for seq in sequences {
        let mut per_t = Vec::with_capacity(seq.len() - 1);
        for t in 0..seq.len() - 1 {
            per_t.push(hidden_step_sparse(net, seq.pattern(t), hp.theta)?.to_f64());
        }
        codes.push(per_t);
    }

    let n = net.n();
    let mut pre_v = vec![0.0; n];
    let mut nu = vec![0u8; n];
    let mut per_epoch = Vec::with_capacity(hp.epochs);
    let mut converged_epoch = None;
    for epoch in 1..=hp.epochs {
        let mut nu_total: u64 = 0;
        for (seq, per_t) in sequences.iter().zip(&codes) {
            for t in 0..seq.len() - 1 {
                nu_total += update_v_core(
                    net,
                    &per_t[t],
                    seq.pattern(t + 1),
                    hp.eta,
                    hp.kappa,
                    &mut pre_v,
                    &mut nu,
                )?;
            }
        }
        per_epoch.push(EpochErrors {
            epoch,
            hidden_error: 0.0,
            visible_error: nu_total as f64 / n as f64,
        });
        if nu_total > 0 {
            if !weights_finite(net) {
                return Err(Error::NonFinite("weights after training epoch"));
            }
        } else if converged_epoch.is_none() {
            converged_epoch = Some(epoch);
            if hp.stop_on_zero {
                break;
            }
        }
    }
    Ok(TrainingLog {
        per_epoch,
        converged_epoch,
    })
}

// ------------------------------------------------------------------
// Baselines
// ------------------------------------------------------------------

/// Margin-perceptron training of a visible-only network on one sequence:
/// row `j` of `W` learns to map `x(t)` to `x_j(t+1)` with margin `κ`, by
/// the same update rule as the hidden-network `V` but with `x(t)` itself as
/// the presynaptic activity. Returns `(converged, epochs_used)`; running
/// out of epochs with errors left is the linear-separability witness.
pub fn perceptron_train_visible_only(
    net: &mut VisibleOnlyNetwork,
    sequence: &PatternSequence,
    eta: f64,
    kappa: f64,
    max_epochs: usize,
) -> Result<(bool, usize)> {
    if max_epochs == 0 {
        return Err(Error::InvalidValue("max_epochs must be >= 1".into()));
    }
    if !(eta.is_finite() && eta > 0.0 && kappa.is_finite() && kappa > 0.0) {
        return Err(Error::InvalidValue(format!(
            "need eta > 0 and kappa > 0, got eta={eta}, kappa={kappa}"
        )));
    }
    let n = net.n();
    if sequence.dim() != n {
        return Err(Error::shape(
            "perceptron_train_visible_only",
            format!("sequence of dimension {n}"),
            format!("dimension {}", sequence.dim()),
        ));
    }
    if sequence.len() < 2 {
        return Err(Error::InvalidValue("sequence must have length >= 2".into()));
    }

    let zero_bias = vec![0.0; n];
    let mut pre = vec![0.0; n];
    for epoch in 1..=max_epochs {
        let mut errors: u64 = 0;
        for t in 0..sequence.len() - 1 {
            let x_t = sequence.pattern(t);
            let x_next = sequence.pattern(t + 1);
            net.w().mul_bipolar_into(x_t, &zero_bias, &mut pre);
            let xe = x_t.entries();
            for j in 0..n {
                let margin = f64::from(x_next.get(j)) * pre[j];
                if kappa - margin >= 0.0 {
                    errors += 1;
                    let step = eta * f64::from(x_next.get(j));
                    let row = net.w_mut().row_mut(j);
                    for (w, &e) in row.iter_mut().zip(xe) {
                        *w += step * f64::from(e);
                    }
                }
            }
        }
        if errors == 0 {
            return Ok((true, epoch));
        }
    }
    Ok((false, max_epochs))
}

/// One-shot temporal asymmetric Hebbian baseline: replaces `V` with
/// `V_ji = Σ_t x_j(t+1) y_i(t)` summed over every pair of every sequence,
/// where `y(t) = sign(U x(t) + b_hidden − θ)` and `U` stays fixed. The sum
/// is over integers, so any summation order gives the identical matrix.
pub fn hebbian_v(net: &mut HiddenNetwork, sequences: &[PatternSequence]) -> Result<()> {
    hebbian_v_theta(net, sequences, 0.0)
}

/// Hebbian baseline with the sparse hidden response (θ subtracted inside
/// the sign that produces `y`).
pub(crate) fn hebbian_v_theta(
    net: &mut HiddenNetwork,
    sequences: &[PatternSequence],
    theta: f64,
) -> Result<()> {
    validate_training_set(net, sequences)?;
    let (n, m) = (net.n(), net.m());
    let mut v = Matrix::zeros(n, m);
    for seq in sequences {
        for t in 0..seq.len() - 1 {
            let y = hidden_step_sparse(net, seq.pattern(t), theta)?;
            let x_next = seq.pattern(t + 1);
            for j in 0..n {
                let xj = f64::from(x_next.get(j));
                let row = v.row_mut(j);
                for (w, &e) in row.iter_mut().zip(y.entries()) {
                    *w += xj * f64::from(e);
                }
            }
        }
    }
    *net.v_mut() = v;
    Ok(())
}

// ------------------------------------------------------------------
// Explicit construction
// ------------------------------------------------------------------

/// Builds a network with `M = T − 1` hidden units that generates the given
/// sequence exactly, one hidden unit per transition.
///
/// Row `i` of `U` is `x(i)` with hidden bias `−N`, so the hidden layer
/// responds to `x(i)` with +1 at unit `i` and −1 elsewhere (a one-hot code;
/// the matching unit sits exactly at threshold and `sign(0) = +1` selects
/// it). Column `i` of `V` is `x(i+1)` with visible bias
/// `θ_j = Σ_{s=2..T} x_j(s)`, which makes the one-hot code at `i` produce
/// `sign(2 x(i+1)) = x(i+1)`. `P` is irrelevant to the constructed dynamics
/// and is set to a copy of `U`.
///
/// Requires all patterns pairwise distinct except that the first and last
/// may coincide (they do for periodic sequences, closing the cycle).
pub fn construct_one_hot(sequence: &PatternSequence) -> Result<HiddenNetwork> {
    if sequence.len() < 2 {
        return Err(Error::InvalidValue(
            "one-hot construction needs a sequence of length >= 2".into(),
        ));
    }
    sequence.check_distinct()?;
    let n = sequence.dim();
    let t_len = sequence.len();
    let m = t_len - 1;

    let mut u = Matrix::zeros(m, n);
    for i in 0..m {
        let row = u.row_mut(i);
        for (w, &e) in row.iter_mut().zip(sequence.pattern(i).entries()) {
            *w = f64::from(e);
        }
    }

    let mut v = Matrix::zeros(n, m);
    let mut bias_visible = vec![0.0; n];
    for i in 0..m {
        let successor = sequence.pattern(i + 1);
        for j in 0..n {
            let e = f64::from(successor.get(j));
            v.row_mut(j)[i] = e;
            bias_visible[j] += e;
        }
    }

    let bias_hidden = vec![-(n as f64); m];
    let p = u.clone();
    HiddenNetwork::from_parts(u, v, p, bias_hidden, bias_visible)
}

// ------------------------------------------------------------------
// Tests
// ------------------------------------------------------------------
