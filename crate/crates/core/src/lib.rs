//! Recurrent networks of binary (±1) neurons with hidden units that store
//! pattern sequences as attractors of their deterministic dynamics.
//!
//! A network alternates visible states `ξ ∈ {−1,+1}^N` and hidden states
//! `ζ ∈ {−1,+1}^M` under synchronous threshold updates. Sequences of visible
//! patterns are written into the weights either by an explicit one-hot
//! construction ([`learning::construct_one_hot`]) or by a local three-factor
//! learning rule ([`learning::train`]) in which a fixed random projection of
//! the next pattern supplies per-unit hidden targets. Once the margins are
//! met, the stored sequence is replayed exactly from its first pattern and
//! tolerated corruption can be read off the weights.
//!
//! Modules:
//! - [`core_dynamics`]: states, weight matrices, synchronous updates,
//!   free-running trajectories, alignment detection.
//! - [`learning`]: the three-factor rule, visible-only and Hebbian
//!   baselines, and the explicit construction.
//! - [`experiments`]: seeded capacity sweeps, noise-robustness trials, and
//!   reconstruction-error curves.
//! - [`data_io`]: binary formats for sequences, image frames, and network
//!   checkpoints.
//!
//! Everything is deterministic given the seeds recorded in the experiment
//! configurations; no operation consumes ambient randomness.

pub mod core_dynamics;
pub mod data_io;
pub mod error;
pub mod experiments;
pub mod learning;

pub use core_dynamics::{
    detect_alignment, sign_threshold, BipolarVector, HiddenNetwork, Matrix, PatternSequence,
    Trajectory, VisibleOnlyNetwork,
};
pub use data_io::{
    binarize_frames, decode_checkpoint, decode_frames, decode_sequence, encode_checkpoint,
    encode_frames, encode_sequence, load_checkpoint, load_frames, load_sequence, save_checkpoint,
    save_frames, save_sequence, Frame,
};
pub use error::{Error, Result};
pub use experiments::{
    ablation_grid, capacity_sweep_m, capacity_sweep_t, default_max_steps, derive_seed,
    error_curves, gen_random_periodic_sequence, pseudo_inverse, reconstruction_error,
    reconstruction_experiment, retrieval_trial, retrieval_trial_sparse, retrieval_trial_traced,
    salt_pepper, transpose,
    AblationCell, Axis, Method, ProjectionDistribution, ReconCurve, ReconMethod, SweepSettings,
    SweepTable, TrialOutcome,
};
pub use learning::{
    construct_one_hot, hebbian_v, hidden_step_sparse, perceptron_train_visible_only,
    project_target, run_free_sparse, train, train_pair, train_v_only, update_u, update_v,
    EpochErrors, Hyperparams, TrainingLog,
};
