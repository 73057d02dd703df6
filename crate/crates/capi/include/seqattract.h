#ifndef SEQATTRACT_H
#define SEQATTRACT_H

/* Generated by cbindgen from the seqattract-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every API call.
typedef enum SeqattractStatus {
  // The call succeeded.
  SEQATTRACT_STATUS_OK = 0,
  // A required pointer argument was null.
  SEQATTRACT_STATUS_NULL_POINTER = 1,
  // Dimensions of an operand do not match what the operation requires.
  SEQATTRACT_STATUS_SHAPE_MISMATCH = 2,
  // A value violates a domain invariant (entry not ±1, bad hyperparameter, ...).
  SEQATTRACT_STATUS_INVALID_VALUE = 3,
  // A number that must be finite is NaN or infinite.
  SEQATTRACT_STATUS_NON_FINITE = 4,
  // Two patterns that must be distinct are equal.
  SEQATTRACT_STATUS_DUPLICATE_PATTERN = 5,
  // The request cannot be satisfied for counting reasons.
  SEQATTRACT_STATUS_INFEASIBLE = 6,
  // Filesystem failure.
  SEQATTRACT_STATUS_IO = 7,
  // A byte stream does not conform to one of the on-disk formats.
  SEQATTRACT_STATUS_BAD_FORMAT = 8,
  // The provided buffer is smaller than the required size.
  SEQATTRACT_STATUS_BUFFER_TOO_SMALL = 9,
  // An internal panic was caught; the handle state is unspecified.
  SEQATTRACT_STATUS_PANIC = 10,
} SeqattractStatus;

// Opaque handle to a recurrent network with hidden units.
typedef struct SeqattractNetwork SeqattractNetwork;

// Opaque handle to a periodic or aperiodic pattern sequence.
typedef struct SeqattractSequence SeqattractSequence;

// Training hyperparameters; obtain defaults from
// `seqattract_hyperparams_default` and override fields as needed.
typedef struct SeqattractHyperparams {
  // Learning rate (> 0).
  double eta;
  // Robustness margin (> 0).
  double kappa;
  // Number of passes over each sequence (>= 1).
  size_t epochs;
  // Standard deviation of the Gaussian weight initialization (>= 0);
  // consumed by `seqattract_network_random`, recorded here for parity
  // with the Rust API.
  double init_std;
  // Sparsity threshold subtracted inside the hidden sign (>= 0).
  double theta;
  // Stop as soon as both error curves reach zero.
  bool stop_on_zero;
} SeqattractHyperparams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns a static, nul-terminated description of a status code.
const char *seqattract_status_message(enum SeqattractStatus status);

// Returns the library version as a static, nul-terminated string.
const char *seqattract_version(void);

// Returns the default hyperparameters (eta 1e-3, kappa 1, 500 epochs,
// init std 1e-3, theta 0, no early stop).
struct SeqattractHyperparams seqattract_hyperparams_default(void);

// Creates a sequence from `count` patterns of `dim` entries each, stored
// row-major in `entries` (values must be exactly +1 or -1). If `periodic`
// is true the last pattern must equal the first.
enum SeqattractStatus seqattract_sequence_create(const int8_t *entries,
                                                 size_t dim,
                                                 size_t count,
                                                 bool periodic,
                                                 struct SeqattractSequence **out);

// Decodes a sequence from its serialized byte format.
enum SeqattractStatus seqattract_sequence_decode(const uint8_t *bytes,
                                                 size_t len,
                                                 struct SeqattractSequence **out);

// Serializes a sequence. Two-call protocol: with `buf` null, only
// `*written` is set to the required size.
enum SeqattractStatus seqattract_sequence_encode(const struct SeqattractSequence *seq,
                                                 uint8_t *buf,
                                                 size_t cap,
                                                 size_t *written);

// Writes the pattern dimension N through `out`.
enum SeqattractStatus seqattract_sequence_dim(const struct SeqattractSequence *seq, size_t *out);

// Writes the number of stored patterns (including the closing repeat of a
// periodic sequence) through `out`.
enum SeqattractStatus seqattract_sequence_len(const struct SeqattractSequence *seq, size_t *out);

// Copies pattern `t` (0-based) into `out`, which must hold at least `dim`
// entries.
enum SeqattractStatus seqattract_sequence_pattern(const struct SeqattractSequence *seq,
                                                  size_t t,
                                                  int8_t *out,
                                                  size_t cap);

// Destroys a sequence handle; null is a no-op.
void seqattract_sequence_free(struct SeqattractSequence *seq);

// Creates a network with `n` visible and `m` hidden units, all weight
// matrices drawn i.i.d. Gaussian with standard deviation `init_std` from a
// deterministic generator seeded with `seed`.
enum SeqattractStatus seqattract_network_random(size_t n,
                                                size_t m,
                                                double init_std,
                                                uint64_t seed,
                                                struct SeqattractNetwork **out);

// Builds a network that replays `seq` exactly, using one hidden unit per
// transition (requires a periodic sequence; M equals its period).
enum SeqattractStatus seqattract_network_construct(const struct SeqattractSequence *seq,
                                                   struct SeqattractNetwork **out);

// Decodes a network checkpoint from bytes.
enum SeqattractStatus seqattract_network_decode(const uint8_t *bytes,
                                                size_t len,
                                                struct SeqattractNetwork **out);

// Serializes a network checkpoint. Two-call protocol as for sequences.
enum SeqattractStatus seqattract_network_encode(const struct SeqattractNetwork *net,
                                                uint8_t *buf,
                                                size_t cap,
                                                size_t *written);

// Writes the visible and hidden dimensions through the out pointers (either
// may be null to skip it).
enum SeqattractStatus seqattract_network_dims(const struct SeqattractNetwork *net,
                                              size_t *out_n,
                                              size_t *out_m);

// Destroys a network handle; null is a no-op.
void seqattract_network_free(struct SeqattractNetwork *net);

// Performs one synchronous update: `state` (length N, entries ±1) is mapped
// through the hidden layer and the successor visible state is written to
// `next` (length N). `hidden`, if non-null, receives the intermediate
// hidden state (length M).
enum SeqattractStatus seqattract_network_step(const struct SeqattractNetwork *net,
                                              const int8_t *state,
                                              int8_t *next,
                                              int8_t *hidden);

// Runs the free dynamics for `steps` updates from `init` (length N) and
// writes the `steps + 1` visited visible states row-major into `out`
// (capacity `(steps + 1) * N` entries).
enum SeqattractStatus seqattract_network_run(const struct SeqattractNetwork *net,
                                             const int8_t *init,
                                             size_t steps,
                                             int8_t *out,
                                             size_t cap);

// Trains both weight matrices with the local three-factor rule on every
// consecutive pair of `seq`. `out_converged_epoch` (nullable) receives the
// first epoch with both error curves zero, or -1; the final per-epoch
// errors are written through the nullable f64 out pointers.
enum SeqattractStatus seqattract_train_joint(struct SeqattractNetwork *net,
                                             const struct SeqattractSequence *seq,
                                             const struct SeqattractHyperparams *hp,
                                             int64_t *out_converged_epoch,
                                             double *out_final_hidden_error,
                                             double *out_final_visible_error);

// Trains only the hidden-to-visible matrix, leaving the visible-to-hidden
// weights frozen as fixed random codes.
enum SeqattractStatus seqattract_train_v_only(struct SeqattractNetwork *net,
                                              const struct SeqattractSequence *seq,
                                              const struct SeqattractHyperparams *hp,
                                              int64_t *out_converged_epoch,
                                              double *out_final_hidden_error,
                                              double *out_final_visible_error);

// One-shot Hebbian assignment of the hidden-to-visible matrix from the
// frozen hidden codes (baseline method; no iteration, no error curves).
enum SeqattractStatus seqattract_train_hebbian(struct SeqattractNetwork *net,
                                               const struct SeqattractSequence *seq);

// Noisy-retrieval trial: flips `flips` distinct entries of the sequence's
// first pattern (chosen deterministically from `noise_seed`), runs the
// free dynamics for `max_steps` steps (0 selects the default budget of
// 2T + 10), and scans the trajectory for the full sequence. `out_success`
// receives the verdict and `out_tau` (nullable) the alignment offset or -1.
enum SeqattractStatus seqattract_retrieve(const struct SeqattractNetwork *net,
                                          const struct SeqattractSequence *seq,
                                          size_t flips,
                                          size_t max_steps,
                                          uint64_t noise_seed,
                                          bool *out_success,
                                          int64_t *out_tau);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEQATTRACT_H */
