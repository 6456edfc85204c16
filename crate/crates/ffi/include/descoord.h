#ifndef DESCOORD_H
#define DESCOORD_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_UTF8 = 2,
  DC_STATUS_PARSE = 3,
  DC_STATUS_VALIDATION = 4,
  DC_STATUS_ALPHABET_MISMATCH = 5,
  DC_STATUS_UNKNOWN_EVENT = 6,
  DC_STATUS_PRECONDITION_VIOLATED = 7,
  DC_STATUS_ALPHABET_CONSTRAINT = 8,
  DC_STATUS_NOT_DECOMPOSABLE = 9,
  DC_STATUS_CONFLICTING = 10,
  DC_STATUS_FIXPOINT_NOT_REACHED = 11,
  DC_STATUS_INTERNAL = 12,
} DcStatus;

/**
 * Opaque generator handle.
 */
typedef struct DcGenerator DcGenerator;

/**
 * Opaque synthesis report handle.
 */
typedef struct DcReport DcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *dc_last_error_message(void);

void dc_string_free(char *s);

/**
 * Parses a generator in the text format.
 */
enum DcStatus dc_generator_parse(const char *text, struct DcGenerator **out);

/**
 * Renders a generator in the text format.
 */
enum DcStatus dc_generator_serialize(const struct DcGenerator *g, char **out);

void dc_generator_free(struct DcGenerator *g);

/**
 * Number of states, or 0 for a null handle.
 */
uintptr_t dc_generator_num_states(const struct DcGenerator *g);

enum DcStatus dc_sync_product(const struct DcGenerator *a,
                              const struct DcGenerator *b,
                              struct DcGenerator **out);

/**
 * Natural projection onto the comma separated `events`.
 */
enum DcStatus dc_project(const struct DcGenerator *g, const char *events, struct DcGenerator **out);

enum DcStatus dc_trim(const struct DcGenerator *g, struct DcGenerator **out);

/**
 * Writes whether both the marked and the generated languages coincide.
 */
enum DcStatus dc_language_equal(const struct DcGenerator *a,
                                const struct DcGenerator *b,
                                bool *out);

enum DcStatus dc_is_controllable(const struct DcGenerator *spec,
                                 const struct DcGenerator *plant,
                                 bool *out);

/**
 * Supremal controllable sublanguage of `spec` w.r.t. `plant`.
 */
enum DcStatus dc_sup_c(const struct DcGenerator *spec,
                       const struct DcGenerator *plant,
                       struct DcGenerator **out);

/**
 * Supremal controllable and normal sublanguage; the observed events are
 * those flagged observable in the plant alphabet.
 */
enum DcStatus dc_sup_cn(const struct DcGenerator *spec,
                        const struct DcGenerator *plant,
                        struct DcGenerator **out);

/**
 * Coordinated synthesis for two subsystems. `sigma_k` is a comma separated
 * coordinator alphabet; `partial` hides events flagged unobservable.
 */
enum DcStatus dc_synthesize(const struct DcGenerator *g1,
                            const struct DcGenerator *g2,
                            const struct DcGenerator *spec,
                            const char *sigma_k,
                            bool partial,
                            struct DcReport **out);

void dc_report_free(struct DcReport *r);

/**
 * Copies the synthesized generator out of the report; fails with
 * `Conflicting` when the supervisors conflict.
 */
enum DcStatus dc_report_result(const struct DcReport *r, struct DcGenerator **out);

/**
 * Whether the result is the supremal conditionally controllable
 * sublanguage; false for a null handle.
 */
bool dc_report_is_supremal(const struct DcReport *r);

enum DcStatus dc_report_to_json(const struct DcReport *r, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DESCOORD_H */
