/* C interface to the tlent library. */

#ifndef TLENT_H
#define TLENT_H

/* Generated by cbindgen. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Largest site dimension the constructors accept.
 */
#define TLENT_MAX_SITE_DIM 16

/**
 * Outcome of a library call.
 */
typedef enum TlentStatus {
  /**
   * The call succeeded and all out parameters are valid.
   */
  TLENT_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TLENT_STATUS_NULL_POINTER = 1,
  /**
   * An argument violated a documented domain or validity rule.
   */
  TLENT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An iterative routine failed to converge or produced a non-finite
   * intermediate value.
   */
  TLENT_STATUS_NUMERIC_FAILURE = 3,
  /**
   * The supplied buffer cannot hold the full result.
   */
  TLENT_STATUS_BUFFER_TOO_SMALL = 4,
} TlentStatus;

/**
 * Opaque handle bundling a projector state, its amplitude matrix, and the
 * generator built from them.
 */
typedef struct TlentGenerator TlentGenerator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the generator for the maximally entangled family on `n`-state
 * sites. `phases` may be null for all-zero phases, otherwise it must point
 * to `n` values. `n` must lie in `2..=TLENT_MAX_SITE_DIM`.
 *
 * # Safety
 * `out` must be a valid pointer. `phases`, when non-null, must point to at
 * least `n` readable doubles.
 */
enum TlentStatus tlent_generator_max_entangled(size_t n,
                                               const double *phases,
                                               struct TlentGenerator **out);

/**
 * Builds the generator for the two-state family with amplitude ratio `q`
 * (loop parameter q + 1/q) and ket phases `k01`, `k10`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TlentStatus tlent_generator_two_dim(double q,
                                         double k01,
                                         double k10,
                                         struct TlentGenerator **out);

/**
 * Builds the generator for a three-state family branch (1, 2 or 3) with
 * amplitude ratio `q` (loop parameter q + 1/q + 1). `phases` may be null
 * for all-zero phases, otherwise it must point to 3 values.
 *
 * # Safety
 * `out` must be a valid pointer. `phases`, when non-null, must point to at
 * least 3 readable doubles.
 */
enum TlentStatus tlent_generator_three_dim(uint8_t branch,
                                           double q,
                                           const double *phases,
                                           struct TlentGenerator **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must be null or a pointer returned by one of the constructors
 * that has not been freed yet.
 */
void tlent_generator_free(struct TlentGenerator *handle);

/**
 * Writes the site dimension n (the generator matrix is n² by n²).
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
enum TlentStatus tlent_generator_site_dim(const struct TlentGenerator *handle, size_t *out);

/**
 * Writes the loop parameter d.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
enum TlentStatus tlent_generator_loop_parameter(const struct TlentGenerator *handle, double *out);

/**
 * Writes one entry of the n²-by-n² generator matrix.
 *
 * # Safety
 * `handle` must be a live handle; `out_re` and `out_im` must be valid
 * pointers.
 */
enum TlentStatus tlent_generator_entry(const struct TlentGenerator *handle,
                                       size_t row,
                                       size_t col,
                                       double *out_re,
                                       double *out_im);

/**
 * Writes the worst residual over the generator identities (idempotency up
 * to d, the braid-monoid contraction, Hermiticity) and the quadratic
 * amplitude constraints.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
enum TlentStatus tlent_generator_relation_residual(const struct TlentGenerator *handle,
                                                   double *out);

/**
 * Writes the generalized concurrence of the underlying two-site state.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
enum TlentStatus tlent_generator_state_concurrence(const struct TlentGenerator *handle,
                                                   double *out);

/**
 * Writes one entry of the braid matrix at spectral parameter e^{iθ}.
 *
 * # Safety
 * `handle` must be a live handle; `out_re` and `out_im` must be valid
 * pointers.
 */
enum TlentStatus tlent_generator_braid_entry(const struct TlentGenerator *handle,
                                             double theta,
                                             size_t row,
                                             size_t col,
                                             double *out_re,
                                             double *out_im);

/**
 * Writes the braid-relation residual for spectral parameters e^{iθx} and
 * e^{iθy}.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
enum TlentStatus tlent_generator_braid_residual(const struct TlentGenerator *handle,
                                                double theta_x,
                                                double theta_y,
                                                double *out);

/**
 * Writes the largest thermal concurrence reachable at loop parameter `d`,
 * attained in the cold limit at zero field.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TlentStatus tlent_c_max(double d, double *out);

/**
 * Writes the temperature above which the thermal state stays separable,
 * or 0 when no entangled regime exists. The value does not depend on the
 * magnetic field or the generator phase.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TlentStatus tlent_critical_temperature(double j, double g, double d, double *out);

/**
 * Writes the concurrence of the Gibbs state at temperature `t` for the
 * two-site model with field `b`, exchange coupling `j`, interaction
 * strength `g`, loop parameter `d`, and generator phase `phi`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TlentStatus tlent_thermal_concurrence(double b,
                                           double j,
                                           double g,
                                           double d,
                                           double phi,
                                           double t,
                                           double *out);

/**
 * Writes the zero-temperature limit of the thermal concurrence.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TlentStatus tlent_zero_t_limit(double b,
                                    double j,
                                    double g,
                                    double d,
                                    double phi,
                                    double *out);

/**
 * Writes the concurrence at time `t` of a state evolved under the braid
 * conjugated Hamiltonian from the Werner-like start
 * (1−γ)/4 · 1 + γ|ψ⟩⟨ψ| with ψ = sin(α)|01⟩ + cos(α)|10⟩.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TlentStatus tlent_evolved_concurrence(double b,
                                           double j,
                                           double g,
                                           double d,
                                           double phi,
                                           double gamma,
                                           double alpha_angle,
                                           double t,
                                           double *out);

/**
 * Writes the closed-form concurrence of the standard sudden-death
 * trajectory at loop parameter `d` and time `t`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TlentStatus tlent_esd_concurrence(double d, double t, double *out);

/**
 * Finds the zero-concurrence windows of the standard sudden-death
 * trajectory on [0, t_max]. Each window occupies two slots of `out_pairs`
 * (death time, revival time). The window count is always written to
 * `out_count`; when it exceeds `capacity_pairs` nothing is copied and the
 * call returns `TLENT_STATUS_BUFFER_TOO_SMALL`, so a first call with
 * capacity 0 sizes the buffer.
 *
 * # Safety
 * `out_count` must be a valid pointer. `out_pairs` must point to at least
 * `2 * capacity_pairs` writable doubles, or may be null when
 * `capacity_pairs` is 0.
 */
enum TlentStatus tlent_esd_windows(double d,
                                   double t_max,
                                   double *out_pairs,
                                   size_t capacity_pairs,
                                   size_t *out_count);

/**
 * Returns a static, NUL-terminated description of a status code.
 */
const char *tlent_status_message(enum TlentStatus status);

/**
 * Returns the library version as a static, NUL-terminated string.
 */
const char *tlent_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TLENT_H */
