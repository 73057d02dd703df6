//! Property tests for the invariants the public API promises:
//!
//! - dynamics are deterministic, synchronous (permutation-equivariant), and
//!   tie-break `sign(0) = +1`;
//! - explicit biases are exactly equivalent to clamped +1 units;
//! - the explicit one-hot construction replays its sequence verbatim;
//! - weight updates are local, fix sub-margin rows in one step when
//!   `η ≥ κ/N`, and the fused multi-epoch trainer is bit-identical to the
//!   composition of the public single-pair operations;
//! - the Hebbian baseline is exactly order-independent;
//! - retrieval success matches a brute-force window scan;
//! - all three file formats round-trip losslessly and their decoders never
//!   panic on arbitrary or corrupted bytes.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqattract::{
    construct_one_hot, decode_checkpoint, decode_frames, decode_sequence, detect_alignment,
    encode_checkpoint, encode_frames, encode_sequence, gen_random_periodic_sequence, hebbian_v,
    project_target, retrieval_trial, sign_threshold, train, train_pair, update_u, update_v,
    BipolarVector, Frame, HiddenNetwork, Hyperparams, Matrix, PatternSequence, VisibleOnlyNetwork,
};

// ------------------------------------------------------------------
// Strategy helpers
// ------------------------------------------------------------------

fn bipolar(dim: usize) -> impl Strategy<Value = BipolarVector> {
    prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], dim)
        .prop_map(|e| BipolarVector::new(e).unwrap())
}

/// Matrix with small integer entries: sums of up to a few hundred of these
/// are exact in f64, so equality checks are immune to summation order.
fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-3i32..=3).prop_map(f64::from), rows * cols)
        .prop_map(move |d| Matrix::from_vec(rows, cols, d).unwrap())
}

fn int_biases(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-2i32..=2).prop_map(f64::from), len)
}

fn float_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3.0..3.0f64, rows * cols)
        .prop_map(move |d| Matrix::from_vec(rows, cols, d).unwrap())
}

fn int_net(n: usize, m: usize) -> impl Strategy<Value = HiddenNetwork> {
    (
        int_matrix(m, n),
        int_matrix(n, m),
        int_matrix(m, n),
        int_biases(m),
        int_biases(n),
    )
        .prop_map(|(u, v, p, bh, bv)| HiddenNetwork::from_parts(u, v, p, bh, bv).unwrap())
}

fn float_net(n: usize, m: usize) -> impl Strategy<Value = HiddenNetwork> {
    (float_matrix(m, n), float_matrix(n, m), float_matrix(m, n)).prop_map(move |(u, v, p)| {
        HiddenNetwork::from_parts(u, v, p, vec![0.0; m], vec![0.0; n]).unwrap()
    })
}

fn shuffled_indices(len: usize, seed: u64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..len).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    idx
}

fn permute_bipolar(x: &BipolarVector, perm: &[usize]) -> BipolarVector {
    BipolarVector::new(perm.iter().map(|&old| x.get(old)).collect()).unwrap()
}

/// Relabels neurons: new visible index `b` is old `pi[b]`, new hidden index
/// `a` is old `sigma[a]`. All weights, projections, and biases move along.
fn permute_net(net: &HiddenNetwork, pi: &[usize], sigma: &[usize]) -> HiddenNetwork {
    let (n, m) = (net.n(), net.m());
    let mut u = vec![0.0; m * n];
    let mut p = vec![0.0; m * n];
    let mut v = vec![0.0; n * m];
    for a in 0..m {
        for b in 0..n {
            u[a * n + b] = net.u().get(sigma[a], pi[b]);
            p[a * n + b] = net.p().get(sigma[a], pi[b]);
        }
    }
    for j in 0..n {
        for i in 0..m {
            v[j * m + i] = net.v().get(pi[j], sigma[i]);
        }
    }
    HiddenNetwork::from_parts(
        Matrix::from_vec(m, n, u).unwrap(),
        Matrix::from_vec(n, m, v).unwrap(),
        Matrix::from_vec(m, n, p).unwrap(),
        sigma.iter().map(|&i| net.bias_hidden()[i]).collect(),
        pi.iter().map(|&j| net.bias_visible()[j]).collect(),
    )
    .unwrap()
}

fn weights_bits(m: &Matrix) -> Vec<u64> {
    m.data().iter().map(|w| w.to_bits()).collect()
}

// ------------------------------------------------------------------
// Sign convention
// ------------------------------------------------------------------

#[test]
fn sign_of_zero_is_plus_one() {
    assert_eq!(sign_threshold(0.0).unwrap(), 1);
    assert_eq!(sign_threshold(-0.0).unwrap(), 1);
    assert_eq!(sign_threshold(f64::MIN_POSITIVE).unwrap(), 1);
    assert_eq!(sign_threshold(-f64::MIN_POSITIVE).unwrap(), -1);
    assert!(sign_threshold(f64::NAN).is_err());
}

proptest! {
    #[test]
    fn sign_is_bipolar_and_antisymmetric_off_ties(x in -1e12..1e12f64) {
        let s = sign_threshold(x).unwrap();
        prop_assert!(s == 1 || s == -1);
        if x != 0.0 {
            prop_assert_eq!(sign_threshold(-x).unwrap(), -s);
        }
    }
}

// ------------------------------------------------------------------
// Dynamics: determinism, synchrony, bias absorption
// ------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn free_run_is_deterministic_with_expected_length(
        (net, init) in (2..=10usize, 1..=8usize)
            .prop_flat_map(|(n, m)| (float_net(n, m), bipolar(n))),
        steps in 1..=20usize,
    ) {
        let a = net.run_free(&init, steps, true).unwrap();
        let b = net.run_free(&init, steps, true).unwrap();
        prop_assert_eq!(a.states(), b.states());
        prop_assert_eq!(a.hidden_states().unwrap(), b.hidden_states().unwrap());
        prop_assert_eq!(a.states().len(), steps + 1);
        prop_assert_eq!(a.hidden_states().unwrap().len(), steps);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn step_commutes_with_neuron_relabeling(
        (net, x) in (2..=9usize, 1..=7usize)
            .prop_flat_map(|(n, m)| (int_net(n, m), bipolar(n))),
        seed_pi in any::<u64>(),
        seed_sigma in any::<u64>(),
    ) {
        // Every unit must read the pre-step state: if any update leaked into
        // another unit's input within the same step, relabeling the neurons
        // would change the outcome. Integer weights keep all sums exact, so
        // the comparison is bitwise rather than approximate.
        let pi = shuffled_indices(net.n(), seed_pi);
        let sigma = shuffled_indices(net.m(), seed_sigma);
        let permuted = permute_net(&net, &pi, &sigma);

        let (vis, hid) = net.network_step(&x).unwrap();
        let (vis_p, hid_p) = permuted.network_step(&permute_bipolar(&x, &pi)).unwrap();
        prop_assert_eq!(vis_p, permute_bipolar(&vis, &pi));
        prop_assert_eq!(hid_p, permute_bipolar(&hid, &sigma));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn visible_only_step_commutes_with_neuron_relabeling(
        (w, x) in (2..=9usize)
            .prop_flat_map(|n| (int_matrix(n, n), bipolar(n))),
        seed in any::<u64>(),
    ) {
        let n = x.dim();
        let pi = shuffled_indices(n, seed);
        let mut wp = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                wp[a * n + b] = w.get(pi[a], pi[b]);
            }
        }
        let net = VisibleOnlyNetwork::new(w).unwrap();
        let permuted = VisibleOnlyNetwork::new(Matrix::from_vec(n, n, wp).unwrap()).unwrap();
        let stepped = net.step(&x).unwrap();
        let stepped_p = permuted.step(&permute_bipolar(&x, &pi)).unwrap();
        prop_assert_eq!(stepped_p, permute_bipolar(&stepped, &pi));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn biases_equal_clamped_plus_one_units(
        (net, x) in (2..=8usize, 1..=6usize)
            .prop_flat_map(|(n, m)| (int_net(n, m), bipolar(n))),
    ) {
        // A network with explicit biases must behave exactly like a biasless
        // network one unit wider on each layer, where the extra units are
        // clamped to +1. The clamps need no special casing: their incoming
        // weights are zero, and sign(0) = +1 holds them at +1 forever.
        let (n, m) = (net.n(), net.m());
        let mut u = vec![0.0; (m + 1) * (n + 1)];
        let mut p = vec![0.0; (m + 1) * (n + 1)];
        let mut v = vec![0.0; (n + 1) * (m + 1)];
        for i in 0..m {
            for k in 0..n {
                u[i * (n + 1) + k] = net.u().get(i, k);
                p[i * (n + 1) + k] = net.p().get(i, k);
            }
            u[i * (n + 1) + n] = net.bias_hidden()[i];
        }
        for j in 0..n {
            for k in 0..m {
                v[j * (m + 1) + k] = net.v().get(j, k);
            }
            v[j * (m + 1) + m] = net.bias_visible()[j];
        }
        let aug = HiddenNetwork::from_parts(
            Matrix::from_vec(m + 1, n + 1, u).unwrap(),
            Matrix::from_vec(n + 1, m + 1, v).unwrap(),
            Matrix::from_vec(m + 1, n + 1, p).unwrap(),
            vec![0.0; m + 1],
            vec![0.0; n + 1],
        )
        .unwrap();

        let mut entries = x.entries().to_vec();
        entries.push(1);
        let x_aug = BipolarVector::new(entries).unwrap();

        let (vis, hid) = net.network_step(&x).unwrap();
        let (vis_aug, hid_aug) = aug.network_step(&x_aug).unwrap();
        prop_assert_eq!(&vis_aug.entries()[..n], vis.entries());
        prop_assert_eq!(vis_aug.get(n), 1);
        prop_assert_eq!(&hid_aug.entries()[..m], hid.entries());
        prop_assert_eq!(hid_aug.get(m), 1);
    }
}

// ------------------------------------------------------------------
// One-hot construction: exact replay
// ------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn one_hot_construction_replays_exactly(
        n in 4..=12usize,
        t_len in 3..=10usize,
        seed in any::<u64>(),
        drop_last in any::<bool>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let periodic = gen_random_periodic_sequence(n, t_len, &mut rng).unwrap();
        // Half the time exercise the aperiodic variant (distinct patterns,
        // first != last) by cutting the wrap-around copy off the end.
        let seq = if drop_last {
            PatternSequence::new(periodic.patterns()[..t_len - 1].to_vec(), false).unwrap()
        } else {
            periodic
        };

        let net = construct_one_hot(&seq).unwrap();
        prop_assert_eq!(net.m(), seq.len() - 1);
        for t in 0..seq.len() - 1 {
            let (vis, _) = net.network_step(seq.pattern(t)).unwrap();
            prop_assert_eq!(&vis, seq.pattern(t + 1));
        }
        let traj = net.run_free(seq.pattern(0), seq.len() - 1, false).unwrap();
        prop_assert_eq!(detect_alignment(&traj, &seq), Some(0));
    }
}

// ------------------------------------------------------------------
// Learning rule: locality, single-step sufficiency, fused equivalence
// ------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn updates_read_only_their_own_row(
        (net, x_t, x_next) in (2..=9usize, 1..=7usize)
            .prop_flat_map(|(n, m)| (float_net(n, m), bipolar(n), bipolar(n))),
        eta in 1e-3..0.2f64,
        kappa in 0.5..2.0f64,
    ) {
        // Recompute each row's update from nothing but that row's weights,
        // its margin, and the shared pre/post-synaptic activity; the result
        // must match the library bit for bit.
        let hp = Hyperparams { eta, kappa, ..Hyperparams::default() };
        let z = project_target(net.p(), &x_next, 0.0).unwrap();

        let mut lib_net = net.clone();
        let mu = update_u(&mut lib_net, &x_t, &x_next, &hp).unwrap();
        for i in 0..net.m() {
            let pre: f64 = net.bias_hidden()[i]
                + net
                    .u()
                    .row(i)
                    .iter()
                    .zip(x_t.entries())
                    .map(|(&w, &e)| w * f64::from(e))
                    .sum::<f64>();
            let violated = kappa - f64::from(z.get(i)) * pre >= 0.0;
            prop_assert_eq!(mu[i] == 1, violated);
            let expect: Vec<f64> = net
                .u()
                .row(i)
                .iter()
                .zip(x_t.entries())
                .map(|(&w, &e)| {
                    if violated { w + eta * f64::from(z.get(i)) * f64::from(e) } else { w }
                })
                .collect();
            prop_assert_eq!(lib_net.u().row(i), &expect[..]);
        }

        // V's update sees the post-update hidden response.
        let y = lib_net.hidden_step(&x_t).unwrap();
        let v_before = lib_net.v().clone();
        let nu = update_v(&mut lib_net, &x_t, &x_next, &hp).unwrap();
        for j in 0..net.n() {
            let pre: f64 = net.bias_visible()[j]
                + v_before
                    .row(j)
                    .iter()
                    .zip(y.entries())
                    .map(|(&w, &e)| w * f64::from(e))
                    .sum::<f64>();
            let violated = kappa - f64::from(x_next.get(j)) * pre >= 0.0;
            prop_assert_eq!(nu[j] == 1, violated);
            let expect: Vec<f64> = v_before
                .row(j)
                .iter()
                .zip(y.entries())
                .map(|(&w, &e)| {
                    if violated { w + eta * f64::from(x_next.get(j)) * f64::from(e) } else { w }
                })
                .collect();
            prop_assert_eq!(lib_net.v().row(j), &expect[..]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn eta_at_least_kappa_over_n_fixes_submargin_rows_in_one_step(
        (net, x_t, x_next) in (2..=16usize, 1..=10usize)
            .prop_flat_map(|(n, m)| (float_net(n, m), bipolar(n), bipolar(n))),
        kappa in 0.5..2.0f64,
    ) {
        // One update with η ≥ κ/N turns every violated-but-not-sign-wrong
        // row (0 ≤ z·pre ≤ κ) into a satisfied one: the update adds exactly
        // ηN to the margin.
        let n = net.n();
        let hp = Hyperparams {
            eta: kappa / n as f64 + 1e-9,
            kappa,
            ..Hyperparams::default()
        };
        let z = project_target(net.p(), &x_next, 0.0).unwrap();

        let margin = |u: &Matrix, i: usize| -> f64 {
            let pre: f64 = net.bias_hidden()[i]
                + u.row(i)
                    .iter()
                    .zip(x_t.entries())
                    .map(|(&w, &e)| w * f64::from(e))
                    .sum::<f64>();
            f64::from(z.get(i)) * pre
        };
        let before: Vec<f64> = (0..net.m()).map(|i| margin(net.u(), i)).collect();

        let mut trained = net.clone();
        let mu = update_u(&mut trained, &x_t, &x_next, &hp).unwrap();
        for i in 0..net.m() {
            if mu[i] == 1 && before[i] >= 0.0 {
                prop_assert!(
                    kappa - margin(trained.u(), i) < 0.0,
                    "row {} margin {} -> {} not fixed",
                    i,
                    before[i],
                    margin(trained.u(), i)
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn fused_training_equals_composed_pair_updates(
        (net, patterns) in (3..=10usize, 1..=8usize, 2..=4usize)
            .prop_flat_map(|(n, m, t)| {
                (float_net(n, m), prop::collection::vec(bipolar(n), t))
            }),
        eta in 1e-3..0.1f64,
        kappa in 0.5..2.0f64,
        sparse in any::<bool>(),
    ) {
        // Multi-epoch training must be exactly the sequence-order composition
        // of the public single-pair updates — same weights, bit for bit, and
        // per-epoch errors must be the normalized flag sums.
        let theta = if sparse { 0.5 } else { 0.0 };
        let hp = Hyperparams { eta, kappa, theta, epochs: 3, ..Hyperparams::default() };
        let seq = PatternSequence::new(patterns, false).unwrap();

        let mut fused = net.clone();
        let log = train(&mut fused, &[seq.clone()], &hp).unwrap();

        let mut composed = net.clone();
        for errors in &log.per_epoch {
            let (mut mu_sum, mut nu_sum) = (0usize, 0usize);
            for t in 0..seq.len() - 1 {
                let (mu, nu) =
                    train_pair(&mut composed, seq.pattern(t), seq.pattern(t + 1), &hp).unwrap();
                mu_sum += mu.iter().map(|&f| f as usize).sum::<usize>();
                nu_sum += nu.iter().map(|&f| f as usize).sum::<usize>();
            }
            prop_assert_eq!(errors.hidden_error, mu_sum as f64 / net.m() as f64);
            prop_assert_eq!(errors.visible_error, nu_sum as f64 / net.n() as f64);
        }
        prop_assert_eq!(weights_bits(fused.u()), weights_bits(composed.u()));
        prop_assert_eq!(weights_bits(fused.v()), weights_bits(composed.v()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn hebbian_assignment_is_order_independent(
        (n, patterns_a, patterns_b) in (3..=10usize, 2..=4usize, 2..=4usize)
            .prop_flat_map(|(n, ta, tb)| {
                (
                    Just(n),
                    prop::collection::vec(bipolar(n), ta),
                    prop::collection::vec(bipolar(n), tb),
                )
            }),
        m in 1..=8usize,
        seed in any::<u64>(),
    ) {
        let seq_a = PatternSequence::new(patterns_a, false).unwrap();
        let seq_b = PatternSequence::new(patterns_b, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = HiddenNetwork::random(n, m, 1.0, &mut rng).unwrap();

        let mut fwd = base.clone();
        hebbian_v(&mut fwd, &[seq_a.clone(), seq_b.clone()]).unwrap();
        let mut rev = base.clone();
        hebbian_v(&mut rev, &[seq_b, seq_a]).unwrap();
        prop_assert_eq!(weights_bits(fwd.v()), weights_bits(rev.v()));
    }
}

// ------------------------------------------------------------------
// Retrieval: success criterion equivalence
// ------------------------------------------------------------------

fn brute_force_alignment(states: &[BipolarVector], target: &PatternSequence) -> Option<usize> {
    let t_len = target.len();
    if t_len > states.len() {
        return None;
    }
    for tau in 0..=states.len() - t_len {
        if (0..t_len).all(|t| states[tau + t] == *target.pattern(t)) {
            return Some(tau);
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]
    #[test]
    fn alignment_detection_matches_brute_force_scan(
        (net, init, target_patterns) in (2..=6usize, 1..=4usize)
            .prop_flat_map(|(n, m)| {
                (
                    int_net(n, m),
                    bipolar(n),
                    prop::collection::vec(bipolar(n), 1..=6),
                )
            }),
        steps in 3..=25usize,
        embed in any::<bool>(),
        offset_pick in any::<u64>(),
    ) {
        let traj = net.run_free(&init, steps, false).unwrap();
        let states = traj.states();
        // Half the time pull the target straight out of the trajectory so
        // the Some branch is exercised as often as the None branch.
        let target = if embed {
            let t_len = target_patterns.len().min(states.len());
            let tau = (offset_pick as usize) % (states.len() - t_len + 1);
            PatternSequence::new(states[tau..tau + t_len].to_vec(), false).unwrap()
        } else {
            PatternSequence::new(target_patterns, false).unwrap()
        };
        prop_assert_eq!(
            detect_alignment(&traj, &target),
            brute_force_alignment(states, &target)
        );
        if embed {
            prop_assert!(detect_alignment(&traj, &target).is_some());
        }
    }
}

// ------------------------------------------------------------------
// Converged networks: noiseless retrieval, fixed-projection identity,
// robustness margin
// ------------------------------------------------------------------

/// Trains one small network to zero errors and checks the three promises
/// that hold at convergence: exact noiseless replay from any phase, the
/// hidden response equaling the fixed projected target on every pair, and
/// tolerance of hidden flips small enough that `2f · max|V_jk| < κ`.
#[test]
fn converged_network_keeps_its_convergence_promises() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let seq = gen_random_periodic_sequence(12, 5, &mut rng).unwrap();
    let mut net = HiddenNetwork::random(12, 50, 1e-3, &mut rng).unwrap();
    let hp = Hyperparams {
        eta: 0.05,
        epochs: 400,
        stop_on_zero: true,
        ..Hyperparams::default()
    };
    let log = train(&mut net, &[seq.clone()], &hp).unwrap();
    assert!(
        log.converged_epoch.is_some(),
        "fixture must train to zero errors; adjust sizes if this ever fails"
    );

    // Noiseless retrieval succeeds with no transient, from every phase.
    for start in 0..seq.len() - 1 {
        let traj = net.run_free(seq.pattern(start), seq.len(), false).unwrap();
        for t in 0..seq.len() - start {
            assert_eq!(traj.states()[t], *seq.pattern(start + t), "phase {start} step {t}");
        }
    }
    let outcome = retrieval_trial(&net, &seq, 0, seq.len(), 0).unwrap();
    assert!(outcome.success);
    assert_eq!(outcome.tau, Some(0));

    // At zero errors the hidden response equals the projected target.
    for t in 0..seq.len() - 1 {
        let y = net.hidden_step(seq.pattern(t)).unwrap();
        let z = project_target(net.p(), seq.pattern(t + 1), 0.0).unwrap();
        assert_eq!(y, z, "pair {t}");
    }

    // Every hidden perturbation with Σ|ŷ−y| small enough that
    // ε·max_k|V_jk| < κ leaves row j's output intact. Each flip moves the
    // L1 distance by 2, so f flips give ε = 2f. Enumerate all 1- and
    // 2-flip perturbations exhaustively.
    let kappa = hp.kappa;
    for t in 0..seq.len() - 1 {
        let y = net.hidden_step(seq.pattern(t)).unwrap();
        let x_next = seq.pattern(t + 1);
        let mut flip_sets: Vec<Vec<usize>> = (0..net.m()).map(|i| vec![i]).collect();
        for a in 0..net.m() {
            for b in a + 1..net.m() {
                flip_sets.push(vec![a, b]);
            }
        }
        for flips in &flip_sets {
            let mut y_hat = y.clone();
            for &i in flips {
                y_hat.flip(i);
            }
            let eps = 2.0 * flips.len() as f64;
            let out = net.visible_update(&y_hat).unwrap();
            for j in 0..net.n() {
                let row_max = net.v().row(j).iter().fold(0.0f64, |acc, w| acc.max(w.abs()));
                if eps * row_max < kappa {
                    assert_eq!(
                        out.get(j),
                        x_next.get(j),
                        "pair {t}, flips {flips:?}, row {j}"
                    );
                }
            }
        }
    }
}

// ------------------------------------------------------------------
// Serialization: lossless round-trips, decoders never panic
// ------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn sequence_bytes_round_trip(
        (patterns, periodic) in (1..=24usize, 1..=8usize, any::<bool>())
            .prop_flat_map(|(n, t, periodic)| {
                (prop::collection::vec(bipolar(n), t), Just(periodic))
            }),
    ) {
        let mut patterns = patterns;
        if periodic {
            patterns.push(patterns[0].clone());
        }
        let seq = PatternSequence::new(patterns, periodic).unwrap();
        let bytes = encode_sequence(&seq);
        let back = decode_sequence(&bytes).unwrap();
        prop_assert_eq!(back.patterns(), seq.patterns());
        prop_assert_eq!(back.periodic(), seq.periodic());
        prop_assert_eq!(encode_sequence(&back), bytes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn checkpoint_bytes_round_trip(
        (net,) in (1..=6usize, 1..=5usize)
            .prop_flat_map(|(n, m)| {
                (
                    (
                        float_matrix(m, n),
                        float_matrix(n, m),
                        float_matrix(m, n),
                        prop::collection::vec(-100.0..100.0f64, m),
                        prop::collection::vec(-100.0..100.0f64, n),
                    )
                        .prop_map(|(u, v, p, bh, bv)| {
                            HiddenNetwork::from_parts(u, v, p, bh, bv).unwrap()
                        }),
                )
            }),
    ) {
        let bytes = encode_checkpoint(&net);
        let back = decode_checkpoint(&bytes).unwrap();
        prop_assert_eq!(weights_bits(back.u()), weights_bits(net.u()));
        prop_assert_eq!(weights_bits(back.v()), weights_bits(net.v()));
        prop_assert_eq!(weights_bits(back.p()), weights_bits(net.p()));
        prop_assert_eq!(back.bias_hidden(), net.bias_hidden());
        prop_assert_eq!(back.bias_visible(), net.bias_visible());
        prop_assert_eq!(encode_checkpoint(&back), bytes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn frame_bytes_round_trip(
        frames in (1..=12usize, 1..=12usize, 1..=3usize)
            .prop_flat_map(|(w, h, count)| {
                prop::collection::vec(
                    prop::collection::vec(any::<u8>(), w * h)
                        .prop_map(move |px| Frame::new(w, h, px).unwrap()),
                    count,
                )
            }),
    ) {
        let bytes = encode_frames(&frames);
        let back = decode_frames(&bytes).unwrap();
        prop_assert_eq!(back.len(), frames.len());
        for (a, b) in back.iter().zip(&frames) {
            prop_assert_eq!(a.width(), b.width());
            prop_assert_eq!(a.height(), b.height());
            prop_assert_eq!(a.pixels(), b.pixels());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]
    #[test]
    fn decoders_never_panic_on_arbitrary_bytes(bytes in prop::collection::vec(any::<u8>(), 0..300)) {
        let _ = decode_sequence(&bytes);
        let _ = decode_checkpoint(&bytes);
        let _ = decode_frames(&bytes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn decoders_never_panic_on_corrupted_valid_bytes(
        seed in any::<u64>(),
        position_pick in any::<u64>(),
        xor in 1..=255u8,
        truncate in any::<bool>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq = gen_random_periodic_sequence(6, 4, &mut rng).unwrap();
        let net = HiddenNetwork::random(4, 3, 1.0, &mut rng).unwrap();

        for bytes in [encode_sequence(&seq), encode_checkpoint(&net)] {
            let mut corrupted = bytes.clone();
            let pos = (position_pick as usize) % corrupted.len();
            corrupted[pos] ^= xor;
            if truncate {
                corrupted.truncate(pos);
            }
            let _ = decode_sequence(&corrupted);
            let _ = decode_checkpoint(&corrupted);
        }
    }
}
