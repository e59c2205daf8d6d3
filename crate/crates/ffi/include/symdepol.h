/* Copyright 2026 The symdepol Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef SYMDEPOL_H
#define SYMDEPOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every call. Zero is success.
 */
typedef enum SdStatus {
  SD_STATUS_OK = 0,
  SD_STATUS_NULL_POINTER = 1,
  SD_STATUS_INVALID_UTF8 = 2,
  SD_STATUS_PARSE = 3,
  SD_STATUS_SHAPE = 4,
  SD_STATUS_ARGUMENT = 5,
  SD_STATUS_INVALID_STATE = 6,
  SD_STATUS_PRECONDITION = 7,
  SD_STATUS_INCONSISTENT_REPRESENTATION = 8,
  SD_STATUS_NUMERICAL = 9,
  SD_STATUS_CONVERGENCE = 10,
  SD_STATUS_IO = 11,
  SD_STATUS_PANIC = 12,
} SdStatus;

/**
 * Which symmetry-adapted generator to build from a representation.
 */
typedef enum SdGeneratorKind {
  /**
   * Jumps along the Cartan elements.
   */
  SD_GENERATOR_KIND_DEPHASING = 0,
  /**
   * Jumps along the lowering operators.
   */
  SD_GENERATOR_KIND_DAMPING = 1,
  /**
   * Jumps along both raising and lowering operators.
   */
  SD_GENERATOR_KIND_SYMMETRIC_DEPOLARIZER = 2,
} SdGeneratorKind;

/**
 * Kraus channel.
 */
typedef struct SdChannel SdChannel;

/**
 * Lindblad generator.
 */
typedef struct SdGenerator SdGenerator;

/**
 * Dense complex matrix.
 */
typedef struct SdMatrix SdMatrix;

/**
 * Lie-algebra representation with its invariant blocks.
 */
typedef struct SdRepresentation SdRepresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sd_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *sd_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void sd_string_free(char *s);

/**
 * Builds a `rows`×`cols` matrix from row-major real and imaginary parts.
 * `im` may be null for a real matrix.
 */
enum SdStatus sd_matrix_new(size_t rows,
                            size_t cols,
                            const double *re,
                            const double *im,
                            struct SdMatrix **out);

/**
 * Parses nested `[re, im]` rows.
 */
enum SdStatus sd_matrix_from_json(const char *json, struct SdMatrix **out);

enum SdStatus sd_matrix_to_json(const struct SdMatrix *m, char **out);

enum SdStatus sd_matrix_shape(const struct SdMatrix *m, size_t *rows, size_t *cols);

/**
 * Reads entry `(i, j)`.
 */
enum SdStatus sd_matrix_get(const struct SdMatrix *m, size_t i, size_t j, double *re, double *im);

void sd_matrix_free(struct SdMatrix *m);

/**
 * Spin-j irrep with j = two_j/2.
 */
enum SdStatus sd_representation_spin(uint32_t two_j, struct SdRepresentation **out);

/**
 * Total spin of `qubits` qubits.
 */
enum SdStatus sd_representation_collective(size_t qubits, struct SdRepresentation **out);

enum SdStatus sd_representation_from_json(const char *json, struct SdRepresentation **out);

enum SdStatus sd_representation_to_json(const struct SdRepresentation *rep, char **out);

enum SdStatus sd_representation_dim(const struct SdRepresentation *rep, size_t *dim);

enum SdStatus sd_representation_block_count(const struct SdRepresentation *rep, size_t *count);

/**
 * Spin label, Casimir value and dimension of block `k`.
 */
enum SdStatus sd_representation_block(const struct SdRepresentation *rep,
                                      size_t k,
                                      double *spin,
                                      double *casimir,
                                      size_t *dim);

void sd_representation_free(struct SdRepresentation *rep);

enum SdStatus sd_generator_from_json(const char *json, struct SdGenerator **out);

enum SdStatus sd_generator_to_json(const struct SdGenerator *g, char **out);

/**
 * Qubit depolarizer contracting the Bloch vector at rate `gamma`.
 */
enum SdStatus sd_generator_qubit_depolarizer(double gamma, struct SdGenerator **out);

/**
 * Builds a generator on `rep` with one rate per Cartan element (dephasing)
 * or per root pair (damping, symmetric depolarizer).
 */
enum SdStatus sd_generator_symmetric(const struct SdRepresentation *rep,
                                     enum SdGeneratorKind kind,
                                     const double *rates,
                                     size_t n_rates,
                                     struct SdGenerator **out);

enum SdStatus sd_generator_dim(const struct SdGenerator *g, size_t *dim);

/**
 * Dimension of the Liouvillian kernel.
 */
enum SdStatus sd_generator_fixed_point_count(const struct SdGenerator *g, size_t *count);

void sd_generator_free(struct SdGenerator *g);

/**
 * Parses `{"dim": d, "kraus_ops": [...]}`. Completeness is not enforced so
 * that arbitrary sets can be passed to [`sd_channel_verify`].
 */
enum SdStatus sd_channel_from_json(const char *json, struct SdChannel **out);

enum SdStatus sd_channel_to_json(const struct SdChannel *ch, char **out);

/**
 * `(1−p)ρ + (p/3)Σ σ_j ρ σ_j`.
 */
enum SdStatus sd_channel_qubit_depolarizer(double p, struct SdChannel **out);

/**
 * Independent depolarization of `n` qubits.
 */
enum SdStatus sd_channel_pauli_product(size_t n, double p, struct SdChannel **out);

/**
 * First-order Kraus map of `g` over a step `tau`.
 */
enum SdStatus sd_channel_first_order(const struct SdGenerator *g,
                                     double tau,
                                     struct SdChannel **out);

/**
 * Trace-preservation residual, smallest Choi eigenvalue and the verdict
 * against `tol` (used for both checks).
 */
enum SdStatus sd_channel_verify(const struct SdChannel *ch,
                                double tol,
                                double *tp_residual,
                                double *choi_min_eig,
                                bool *pass);

enum SdStatus sd_channel_apply(const struct SdChannel *ch,
                               const struct SdMatrix *rho,
                               struct SdMatrix **out);

void sd_channel_free(struct SdChannel *ch);

/**
 * `ρ(t)` under `g` from the density matrix `rho0`.
 */
enum SdStatus sd_propagate(const struct SdGenerator *g,
                           const struct SdMatrix *rho0,
                           double t,
                           struct SdMatrix **out);

/**
 * Long-time state. A non-positive `horizon` selects the automatic horizon.
 */
enum SdStatus sd_asymptotic_state(const struct SdGenerator *g,
                                  const struct SdMatrix *rho0,
                                  double horizon,
                                  double tol,
                                  struct SdMatrix **out);

/**
 * Runs a scenario from its JSON configuration and returns the report JSON.
 * Nothing is written to disk.
 */
enum SdStatus sd_scenario_run(const char *config_json, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMDEPOL_H */
