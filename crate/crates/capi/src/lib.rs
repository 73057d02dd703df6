//! C ABI for the seqattract library.
//!
//! Handles are opaque pointers created and destroyed by this library; every
//! function returns a [`SeqattractStatus`] and writes results through out
//! pointers. Byte getters use a two-call protocol: pass a null buffer to
//! query the required size, then call again with a buffer at least that
//! large. All functions are panic-safe: a caught panic maps to
//! [`SeqattractStatus::Panic`] instead of unwinding across the boundary.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqattract::{
    construct_one_hot, decode_checkpoint, decode_sequence, default_max_steps, encode_checkpoint,
    encode_sequence, hebbian_v, retrieval_trial, train, train_v_only, BipolarVector, Error,
    HiddenNetwork, Hyperparams, PatternSequence,
};

/// Opaque handle to a periodic or aperiodic pattern sequence.
pub struct SeqattractSequence {
    inner: PatternSequence,
}

/// Opaque handle to a recurrent network with hidden units.
pub struct SeqattractNetwork {
    inner: HiddenNetwork,
}

/// Result of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeqattractStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Dimensions of an operand do not match what the operation requires.
    ShapeMismatch = 2,
    /// A value violates a domain invariant (entry not ±1, bad hyperparameter, ...).
    InvalidValue = 3,
    /// A number that must be finite is NaN or infinite.
    NonFinite = 4,
    /// Two patterns that must be distinct are equal.
    DuplicatePattern = 5,
    /// The request cannot be satisfied for counting reasons.
    Infeasible = 6,
    /// Filesystem failure.
    Io = 7,
    /// A byte stream does not conform to one of the on-disk formats.
    BadFormat = 8,
    /// The provided buffer is smaller than the required size.
    BufferTooSmall = 9,
    /// An internal panic was caught; the handle state is unspecified.
    Panic = 10,
}

/// Training hyperparameters; obtain defaults from
/// `seqattract_hyperparams_default` and override fields as needed.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SeqattractHyperparams {
    /// Learning rate (> 0).
    pub eta: f64,
    /// Robustness margin (> 0).
    pub kappa: f64,
    /// Number of passes over each sequence (>= 1).
    pub epochs: usize,
    /// Standard deviation of the Gaussian weight initialization (>= 0);
    /// consumed by `seqattract_network_random`, recorded here for parity
    /// with the Rust API.
    pub init_std: f64,
    /// Sparsity threshold subtracted inside the hidden sign (>= 0).
    pub theta: f64,
    /// Stop as soon as both error curves reach zero.
    pub stop_on_zero: bool,
}

impl From<&SeqattractHyperparams> for Hyperparams {
    fn from(hp: &SeqattractHyperparams) -> Self {
        Hyperparams {
            eta: hp.eta,
            kappa: hp.kappa,
            epochs: hp.epochs,
            init_std: hp.init_std,
            theta: hp.theta,
            stop_on_zero: hp.stop_on_zero,
            ..Hyperparams::default()
        }
    }
}

fn status_of(err: &Error) -> SeqattractStatus {
    match err {
        Error::ShapeMismatch { .. } => SeqattractStatus::ShapeMismatch,
        Error::InvalidValue(_) => SeqattractStatus::InvalidValue,
        Error::NonFinite(_) => SeqattractStatus::NonFinite,
        Error::DuplicatePattern { .. } => SeqattractStatus::DuplicatePattern,
        Error::Infeasible(_) => SeqattractStatus::Infeasible,
        Error::Io { .. } => SeqattractStatus::Io,
        Error::Format(_) => SeqattractStatus::BadFormat,
    }
}

fn guarded(f: impl FnOnce() -> SeqattractStatus) -> SeqattractStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(SeqattractStatus::Panic)
}

/// Writes `bytes` through the two-call protocol shared by all encoders.
fn write_bytes(
    bytes: &[u8],
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> SeqattractStatus {
    if written.is_null() {
        return SeqattractStatus::NullPointer;
    }
    unsafe { *written = bytes.len() };
    if buf.is_null() {
        return SeqattractStatus::Ok;
    }
    if cap < bytes.len() {
        return SeqattractStatus::BufferTooSmall;
    }
    unsafe { std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len()) };
    SeqattractStatus::Ok
}

/// Returns a static, nul-terminated description of a status code.
#[no_mangle]
pub extern "C" fn seqattract_status_message(status: SeqattractStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        SeqattractStatus::Ok => b"ok\0",
        SeqattractStatus::NullPointer => b"a required pointer argument was null\0",
        SeqattractStatus::ShapeMismatch => b"operand dimensions do not match\0",
        SeqattractStatus::InvalidValue => b"a value violates a domain invariant\0",
        SeqattractStatus::NonFinite => b"a non-finite number was encountered\0",
        SeqattractStatus::DuplicatePattern => b"interior patterns must be distinct\0",
        SeqattractStatus::Infeasible => b"the request cannot be satisfied\0",
        SeqattractStatus::Io => b"filesystem failure\0",
        SeqattractStatus::BadFormat => b"malformed byte stream\0",
        SeqattractStatus::BufferTooSmall => b"the provided buffer is too small\0",
        SeqattractStatus::Panic => b"internal panic caught at the ABI boundary\0",
    };
    msg.as_ptr() as *const c_char
}

/// Returns the library version as a static, nul-terminated string.
#[no_mangle]
pub extern "C" fn seqattract_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns the default hyperparameters (eta 1e-3, kappa 1, 500 epochs,
/// init std 1e-3, theta 0, no early stop).
#[no_mangle]
pub extern "C" fn seqattract_hyperparams_default() -> SeqattractHyperparams {
    let hp = Hyperparams::default();
    SeqattractHyperparams {
        eta: hp.eta,
        kappa: hp.kappa,
        epochs: hp.epochs,
        init_std: hp.init_std,
        theta: hp.theta,
        stop_on_zero: hp.stop_on_zero,
    }
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// Creates a sequence from `count` patterns of `dim` entries each, stored
/// row-major in `entries` (values must be exactly +1 or -1). If `periodic`
/// is true the last pattern must equal the first.
#[no_mangle]
pub extern "C" fn seqattract_sequence_create(
    entries: *const i8,
    dim: usize,
    count: usize,
    periodic: bool,
    out: *mut *mut SeqattractSequence,
) -> SeqattractStatus {
    guarded(|| {
        if entries.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let Some(total) = dim.checked_mul(count) else {
            return SeqattractStatus::InvalidValue;
        };
        let flat = unsafe { std::slice::from_raw_parts(entries, total) };
        let mut patterns = Vec::with_capacity(count);
        for chunk in flat.chunks(dim.max(1)).take(count) {
            match BipolarVector::new(chunk.to_vec()) {
                Ok(p) => patterns.push(p),
                Err(e) => return status_of(&e),
            }
        }
        match PatternSequence::new(patterns, periodic) {
            Ok(seq) => {
                let handle = Box::new(SeqattractSequence { inner: seq });
                unsafe { *out = Box::into_raw(handle) };
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Decodes a sequence from its serialized byte format.
#[no_mangle]
pub extern "C" fn seqattract_sequence_decode(
    bytes: *const u8,
    len: usize,
    out: *mut *mut SeqattractSequence,
) -> SeqattractStatus {
    guarded(|| {
        if bytes.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let data = unsafe { std::slice::from_raw_parts(bytes, len) };
        match decode_sequence(data) {
            Ok(seq) => {
                let handle = Box::new(SeqattractSequence { inner: seq });
                unsafe { *out = Box::into_raw(handle) };
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Serializes a sequence. Two-call protocol: with `buf` null, only
/// `*written` is set to the required size.
#[no_mangle]
pub extern "C" fn seqattract_sequence_encode(
    seq: *const SeqattractSequence,
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> SeqattractStatus {
    guarded(|| {
        if seq.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let seq = unsafe { &*seq };
        let bytes = encode_sequence(&seq.inner);
        write_bytes(&bytes, buf, cap, written)
    })
}

/// Writes the pattern dimension N through `out`.
#[no_mangle]
pub extern "C" fn seqattract_sequence_dim(
    seq: *const SeqattractSequence,
    out: *mut usize,
) -> SeqattractStatus {
    guarded(|| {
        if seq.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        unsafe { *out = (*seq).inner.dim() };
        SeqattractStatus::Ok
    })
}

/// Writes the number of stored patterns (including the closing repeat of a
/// periodic sequence) through `out`.
#[no_mangle]
pub extern "C" fn seqattract_sequence_len(
    seq: *const SeqattractSequence,
    out: *mut usize,
) -> SeqattractStatus {
    guarded(|| {
        if seq.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        unsafe { *out = (*seq).inner.len() };
        SeqattractStatus::Ok
    })
}

/// Copies pattern `t` (0-based) into `out`, which must hold at least `dim`
/// entries.
#[no_mangle]
pub extern "C" fn seqattract_sequence_pattern(
    seq: *const SeqattractSequence,
    t: usize,
    out: *mut i8,
    cap: usize,
) -> SeqattractStatus {
    guarded(|| {
        if seq.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let seq = unsafe { &*seq };
        if t >= seq.inner.len() {
            return SeqattractStatus::InvalidValue;
        }
        let entries = seq.inner.pattern(t).entries();
        if cap < entries.len() {
            return SeqattractStatus::BufferTooSmall;
        }
        unsafe { std::ptr::copy_nonoverlapping(entries.as_ptr(), out, entries.len()) };
        SeqattractStatus::Ok
    })
}

/// Destroys a sequence handle; null is a no-op.
#[no_mangle]
pub extern "C" fn seqattract_sequence_free(seq: *mut SeqattractSequence) {
    if !seq.is_null() {
        drop(unsafe { Box::from_raw(seq) });
    }
}

// ---------------------------------------------------------------------------
// Networks
// ---------------------------------------------------------------------------

/// Creates a network with `n` visible and `m` hidden units, all weight
/// matrices drawn i.i.d. Gaussian with standard deviation `init_std` from a
/// deterministic generator seeded with `seed`.
#[no_mangle]
pub extern "C" fn seqattract_network_random(
    n: usize,
    m: usize,
    init_std: f64,
    seed: u64,
    out: *mut *mut SeqattractNetwork,
) -> SeqattractStatus {
    guarded(|| {
        if out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match HiddenNetwork::random(n, m, init_std, &mut rng) {
            Ok(net) => {
                let handle = Box::new(SeqattractNetwork { inner: net });
                unsafe { *out = Box::into_raw(handle) };
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Builds a network that replays `seq` exactly, using one hidden unit per
/// transition (requires a periodic sequence; M equals its period).
#[no_mangle]
pub extern "C" fn seqattract_network_construct(
    seq: *const SeqattractSequence,
    out: *mut *mut SeqattractNetwork,
) -> SeqattractStatus {
    guarded(|| {
        if seq.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let seq = unsafe { &*seq };
        match construct_one_hot(&seq.inner) {
            Ok(net) => {
                let handle = Box::new(SeqattractNetwork { inner: net });
                unsafe { *out = Box::into_raw(handle) };
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Decodes a network checkpoint from bytes.
#[no_mangle]
pub extern "C" fn seqattract_network_decode(
    bytes: *const u8,
    len: usize,
    out: *mut *mut SeqattractNetwork,
) -> SeqattractStatus {
    guarded(|| {
        if bytes.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let data = unsafe { std::slice::from_raw_parts(bytes, len) };
        match decode_checkpoint(data) {
            Ok(net) => {
                let handle = Box::new(SeqattractNetwork { inner: net });
                unsafe { *out = Box::into_raw(handle) };
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Serializes a network checkpoint. Two-call protocol as for sequences.
#[no_mangle]
pub extern "C" fn seqattract_network_encode(
    net: *const SeqattractNetwork,
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> SeqattractStatus {
    guarded(|| {
        if net.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let net = unsafe { &*net };
        let bytes = encode_checkpoint(&net.inner);
        write_bytes(&bytes, buf, cap, written)
    })
}

/// Writes the visible and hidden dimensions through the out pointers (either
/// may be null to skip it).
#[no_mangle]
pub extern "C" fn seqattract_network_dims(
    net: *const SeqattractNetwork,
    out_n: *mut usize,
    out_m: *mut usize,
) -> SeqattractStatus {
    guarded(|| {
        if net.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let net = unsafe { &*net };
        if !out_n.is_null() {
            unsafe { *out_n = net.inner.n() };
        }
        if !out_m.is_null() {
            unsafe { *out_m = net.inner.m() };
        }
        SeqattractStatus::Ok
    })
}

/// Destroys a network handle; null is a no-op.
#[no_mangle]
pub extern "C" fn seqattract_network_free(net: *mut SeqattractNetwork) {
    if !net.is_null() {
        drop(unsafe { Box::from_raw(net) });
    }
}

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

/// Performs one synchronous update: `state` (length N, entries ±1) is mapped
/// through the hidden layer and the successor visible state is written to
/// `next` (length N). `hidden`, if non-null, receives the intermediate
/// hidden state (length M).
#[no_mangle]
pub extern "C" fn seqattract_network_step(
    net: *const SeqattractNetwork,
    state: *const i8,
    next: *mut i8,
    hidden: *mut i8,
) -> SeqattractStatus {
    guarded(|| {
        if net.is_null() || state.is_null() || next.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let net = unsafe { &*net };
        let n = net.inner.n();
        let xi = unsafe { std::slice::from_raw_parts(state, n) };
        let xi = match BipolarVector::new(xi.to_vec()) {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        };
        match net.inner.network_step(&xi) {
            Ok((succ, zeta)) => {
                unsafe {
                    std::ptr::copy_nonoverlapping(succ.entries().as_ptr(), next, n);
                }
                if !hidden.is_null() {
                    unsafe {
                        std::ptr::copy_nonoverlapping(
                            zeta.entries().as_ptr(),
                            hidden,
                            net.inner.m(),
                        );
                    }
                }
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Runs the free dynamics for `steps` updates from `init` (length N) and
/// writes the `steps + 1` visited visible states row-major into `out`
/// (capacity `(steps + 1) * N` entries).
#[no_mangle]
pub extern "C" fn seqattract_network_run(
    net: *const SeqattractNetwork,
    init: *const i8,
    steps: usize,
    out: *mut i8,
    cap: usize,
) -> SeqattractStatus {
    guarded(|| {
        if net.is_null() || init.is_null() || out.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let net = unsafe { &*net };
        let n = net.inner.n();
        let needed = match steps.checked_add(1).and_then(|r| r.checked_mul(n)) {
            Some(v) => v,
            None => return SeqattractStatus::InvalidValue,
        };
        if cap < needed {
            return SeqattractStatus::BufferTooSmall;
        }
        let xi = unsafe { std::slice::from_raw_parts(init, n) };
        let xi = match BipolarVector::new(xi.to_vec()) {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        };
        match net.inner.run_free(&xi, steps, false) {
            Ok(traj) => {
                for (row, state) in traj.states().iter().enumerate() {
                    unsafe {
                        std::ptr::copy_nonoverlapping(
                            state.entries().as_ptr(),
                            out.add(row * n),
                            n,
                        );
                    }
                }
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

// ---------------------------------------------------------------------------
// Learning and retrieval
// ---------------------------------------------------------------------------

fn train_common(
    net: *mut SeqattractNetwork,
    seq: *const SeqattractSequence,
    hp: *const SeqattractHyperparams,
    out_converged_epoch: *mut i64,
    out_final_hidden_error: *mut f64,
    out_final_visible_error: *mut f64,
    v_only: bool,
) -> SeqattractStatus {
    if net.is_null() || seq.is_null() || hp.is_null() {
        return SeqattractStatus::NullPointer;
    }
    let net = unsafe { &mut *net };
    let seq = unsafe { &*seq };
    let hp: Hyperparams = (&unsafe { *hp }).into();
    let sequences = [seq.inner.clone()];
    let log = if v_only {
        train_v_only(&mut net.inner, &sequences, &hp)
    } else {
        train(&mut net.inner, &sequences, &hp)
    };
    match log {
        Ok(log) => {
            if !out_converged_epoch.is_null() {
                unsafe {
                    *out_converged_epoch = log.converged_epoch.map_or(-1, |e| e as i64);
                }
            }
            let last = log.per_epoch.last();
            if !out_final_hidden_error.is_null() {
                unsafe { *out_final_hidden_error = last.map_or(f64::NAN, |e| e.hidden_error) };
            }
            if !out_final_visible_error.is_null() {
                unsafe { *out_final_visible_error = last.map_or(f64::NAN, |e| e.visible_error) };
            }
            SeqattractStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Trains both weight matrices with the local three-factor rule on every
/// consecutive pair of `seq`. `out_converged_epoch` (nullable) receives the
/// first epoch with both error curves zero, or -1; the final per-epoch
/// errors are written through the nullable f64 out pointers.
#[no_mangle]
pub extern "C" fn seqattract_train_joint(
    net: *mut SeqattractNetwork,
    seq: *const SeqattractSequence,
    hp: *const SeqattractHyperparams,
    out_converged_epoch: *mut i64,
    out_final_hidden_error: *mut f64,
    out_final_visible_error: *mut f64,
) -> SeqattractStatus {
    guarded(|| {
        train_common(
            net,
            seq,
            hp,
            out_converged_epoch,
            out_final_hidden_error,
            out_final_visible_error,
            false,
        )
    })
}

/// Trains only the hidden-to-visible matrix, leaving the visible-to-hidden
/// weights frozen as fixed random codes.
#[no_mangle]
pub extern "C" fn seqattract_train_v_only(
    net: *mut SeqattractNetwork,
    seq: *const SeqattractSequence,
    hp: *const SeqattractHyperparams,
    out_converged_epoch: *mut i64,
    out_final_hidden_error: *mut f64,
    out_final_visible_error: *mut f64,
) -> SeqattractStatus {
    guarded(|| {
        train_common(
            net,
            seq,
            hp,
            out_converged_epoch,
            out_final_hidden_error,
            out_final_visible_error,
            true,
        )
    })
}

/// One-shot Hebbian assignment of the hidden-to-visible matrix from the
/// frozen hidden codes (baseline method; no iteration, no error curves).
#[no_mangle]
pub extern "C" fn seqattract_train_hebbian(
    net: *mut SeqattractNetwork,
    seq: *const SeqattractSequence,
) -> SeqattractStatus {
    guarded(|| {
        if net.is_null() || seq.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let net = unsafe { &mut *net };
        let seq = unsafe { &*seq };
        match hebbian_v(&mut net.inner, &[seq.inner.clone()]) {
            Ok(()) => SeqattractStatus::Ok,
            Err(e) => status_of(&e),
        }
    })
}

/// Noisy-retrieval trial: flips `flips` distinct entries of the sequence's
/// first pattern (chosen deterministically from `noise_seed`), runs the
/// free dynamics for `max_steps` steps (0 selects the default budget of
/// 2T + 10), and scans the trajectory for the full sequence. `out_success`
/// receives the verdict and `out_tau` (nullable) the alignment offset or -1.
#[no_mangle]
pub extern "C" fn seqattract_retrieve(
    net: *const SeqattractNetwork,
    seq: *const SeqattractSequence,
    flips: usize,
    max_steps: usize,
    noise_seed: u64,
    out_success: *mut bool,
    out_tau: *mut i64,
) -> SeqattractStatus {
    guarded(|| {
        if net.is_null() || seq.is_null() || out_success.is_null() {
            return SeqattractStatus::NullPointer;
        }
        let net = unsafe { &*net };
        let seq = unsafe { &*seq };
        let budget = if max_steps == 0 {
            default_max_steps(seq.inner.len())
        } else {
            max_steps
        };
        match retrieval_trial(&net.inner, &seq.inner, flips, budget, noise_seed) {
            Ok(outcome) => {
                unsafe { *out_success = outcome.success };
                if !out_tau.is_null() {
                    unsafe { *out_tau = outcome.tau.map_or(-1, |t| t as i64) };
                }
                SeqattractStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
