#ifndef DIRAC_WP_H
#define DIRAC_WP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum DwpStatus {
  DWP_STATUS_OK = 0,
  DWP_STATUS_NULL_POINTER = 1,
  DWP_STATUS_INVALID_ARGUMENT = 2,
  DWP_STATUS_SUPERCRITICAL = 3,
  DWP_STATUS_NO_SUCH_STATE = 4,
  DWP_STATUS_ACCURACY = 5,
  DWP_STATUS_BUFFER_TOO_SMALL = 6,
  DWP_STATUS_PANIC = 7,
} DwpStatus;

/**
 * Opaque packet handle.
 */
typedef struct DwpPacket DwpPacket;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a packet and stores the new handle in `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum DwpStatus dwp_packet_new(uint32_t z,
                              uint32_t n_mean,
                              double sigma,
                              double a,
                              double b,
                              struct DwpPacket **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `packet` must come from `dwp_packet_new` and not be used afterwards.
 */
void dwp_packet_free(struct DwpPacket *packet);

/**
 * Window bounds and orbit radius `N²/(Zα)` of a packet.
 *
 * # Safety
 * Pointers must be valid; output pointers may be null to skip a value.
 */
enum DwpStatus dwp_packet_info(const struct DwpPacket *packet,
                               uint32_t *n_min,
                               uint32_t *n_max,
                               double *orbit_radius);

/**
 * `A(t)` for `len` times; real and imaginary parts go to `re` and `im`.
 *
 * # Safety
 * `times`, `re` and `im` must each point to `len` elements.
 */
enum DwpStatus dwp_autocorrelation(const struct DwpPacket *packet,
                                   const double *times,
                                   size_t len,
                                   double *re,
                                   double *im);

/**
 * Mean spin `(<σx>, <σy>, <σz>)` at time `t`.
 *
 * # Safety
 * `out` must point to three writable doubles.
 */
enum DwpStatus dwp_spin(const struct DwpPacket *packet, double t, bool include_delta, double *out);

/**
 * Small-component weights `(<c3|c3>, <c4|c4>, total)`.
 *
 * # Safety
 * `out` must point to three writable doubles.
 */
enum DwpStatus dwp_small_norm(const struct DwpPacket *packet, double *out);

/**
 * `T(1..=k_max)` into `t_k`, plus `T_ls` and the non-relativistic Kepler
 * period `T_cl`. `k_max` must be in `1..=6`.
 *
 * # Safety
 * `t_k` must point to `k_max` doubles; `t_ls` and `t_cl` may be null.
 */
enum DwpStatus dwp_timescales(uint32_t z,
                              uint32_t n,
                              size_t k_max,
                              double *t_k,
                              double *t_ls,
                              double *t_cl);

/**
 * `E(j = l+1/2) - E(j = l-1/2)` of the circular level `n`.
 *
 * # Safety
 * `out` must point to one writable double.
 */
enum DwpStatus dwp_fine_splitting(uint32_t z, uint32_t n, double *out);

/**
 * Spin-resolved density on the orbit plane. Both buffers hold
 * `resolution²` values in row-major order (`y` outer, `x` inner), with
 * nodes spanning `[-extent, extent]·r_N` on each axis.
 *
 * # Safety
 * `spin_up` and `spin_down` must each point to `len` writable doubles.
 */
enum DwpStatus dwp_density_grid(const struct DwpPacket *packet,
                                double extent,
                                size_t resolution,
                                double t,
                                double *spin_up,
                                double *spin_down,
                                size_t len);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call on the same thread.
 */
const char *dwp_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dwp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRAC_WP_H */
