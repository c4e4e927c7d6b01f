/* C interface to the description-based QA data pipeline.
 *
 * Usage pattern:
 *   descqa_session* s = descqa_session_new();
 *   descqa_load_config(s, "run.conf");
 *   descqa_set_option(s, "seed", "7");
 *   if (descqa_build(s) != DESCQA_OK) { puts(descqa_last_error(s)); }
 *   else { puts(descqa_last_report(s)); }
 *   descqa_session_free(s);
 *
 * All functions are safe to call from multiple threads as long as each
 * session is confined to one thread at a time.
 */
#ifndef DESCQA_H
#define DESCQA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes. */
typedef enum descqa_status {
  DESCQA_OK = 0,
  DESCQA_USAGE_ERROR = 1, /* bad arguments or configuration */
  DESCQA_DATA_ERROR = 2,  /* unreadable or malformed input data */
  DESCQA_BACKEND_ERROR = 3 /* scoring/translation/infill service failure */
} descqa_status;

/* Opaque handle holding configuration plus the last error and report. */
typedef struct descqa_session descqa_session;

descqa_session* descqa_session_new(void);
void descqa_session_free(descqa_session* session);

/* Merge `key = value` lines from a file into the session configuration.
 * Later loads and descqa_set_option calls override earlier values. */
descqa_status descqa_load_config(descqa_session* session, const char* path);

/* Set one configuration key directly. */
descqa_status descqa_set_option(descqa_session* session, const char* key,
                                const char* value);

/* Message from the most recent failing call on this session, or "" if the
 * last call succeeded. Owned by the session; valid until the next call. */
const char* descqa_last_error(const descqa_session* session);

/* Human-readable report from the most recent successful command, or "".
 * Owned by the session; valid until the next command. */
const char* descqa_last_report(const descqa_session* session);

/* Commands. Each reads its inputs from the session configuration, writes
 * its files under output.dir, and stores a report for
 * descqa_last_report. */
descqa_status descqa_build(descqa_session* session);
descqa_status descqa_augment(descqa_session* session, const char* technique);
descqa_status descqa_truncate(descqa_session* session);
descqa_status descqa_stats(descqa_session* session);
descqa_status descqa_eval(descqa_session* session);
descqa_status descqa_overlap(descqa_session* session);
descqa_status descqa_import_lexicon(descqa_session* session);

/* Stateless helpers. Output strings are heap-allocated; release them with
 * descqa_string_free. */

/* Subset-averaged accuracy of one prediction against exactly 10
 * ground-truth answers. */
descqa_status descqa_vqa_accuracy(const char* prediction,
                                  const char* const* answers,
                                  size_t answer_count,
                                  int official_normalization,
                                  double* accuracy);

/* "<s> question </s> </s> description </s>", single-spaced. */
descqa_status descqa_assemble_sequence(const char* question,
                                       const char* description,
                                       char** sequence);

/* Drops floor(rate * word_count) words from the description, later
 * sentence words first under the seeded order. rate must be in [0, 1]. */
descqa_status descqa_truncate_description(const char* description, double rate,
                                          uint64_t seed, char** truncated);

void descqa_string_free(char* s);

/* Semantic version of the library, e.g. "0.1.0". Static storage. */
const char* descqa_version(void);

#ifdef __cplusplus
}
#endif

#endif
