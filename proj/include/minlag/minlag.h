/* C interface to the minlag verifier. */
#ifndef MINLAG_H
#define MINLAG_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define MINLAG_API __attribute__((visibility("default")))
#else
#define MINLAG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum minlag_status {
  MINLAG_OK = 0,
  MINLAG_ERR_ARGUMENT = 1,
  MINLAG_ERR_SHAPE_MISMATCH = 2,
  MINLAG_ERR_SINGULARITY = 3,
  MINLAG_ERR_TRUNCATION = 4,
  MINLAG_ERR_DEGENERATE_PARAMETRIZATION = 5,
  MINLAG_ERR_INCONSISTENCY = 6,
  MINLAG_ERR_STRUCTURE_VIOLATION = 7,
  MINLAG_ERR_NOT_SPACE_FORM_PRODUCT = 8,
  MINLAG_ERR_PARSE = 9,
  MINLAG_ERR_VALIDATION = 10,
  MINLAG_ERR_INTERNAL = 100
} minlag_status;

typedef enum minlag_format { MINLAG_FORMAT_JSON = 0, MINLAG_FORMAT_MARKDOWN = 1 } minlag_format;

typedef struct minlag_config minlag_config;
typedef struct minlag_report minlag_report;

MINLAG_API const char* minlag_version(void);

/* Message of the last failure on the calling thread; never NULL. */
MINLAG_API const char* minlag_last_error(void);

MINLAG_API minlag_status minlag_config_parse(const char* json_text, minlag_config** out);
MINLAG_API size_t minlag_builtin_count(void);
/* `name` may be NULL; otherwise receives a string owned by the library. */
MINLAG_API minlag_status minlag_builtin(size_t index, const char** name, minlag_config** out);
MINLAG_API void minlag_config_free(minlag_config* config);

MINLAG_API minlag_status minlag_config_set_samples(minlag_config* config, int samples);
MINLAG_API minlag_status minlag_config_set_seed(minlag_config* config, uint64_t seed);
MINLAG_API minlag_status minlag_config_set_order(minlag_config* config, int order);
MINLAG_API minlag_status minlag_config_set_tolerance(minlag_config* config, const char* tier, double value);
MINLAG_API minlag_status minlag_config_set_workers(minlag_config* config, int workers);
MINLAG_API minlag_status minlag_config_set_format(minlag_config* config, minlag_format format);
MINLAG_API minlag_status minlag_config_get_format(const minlag_config* config, minlag_format* out);

MINLAG_API minlag_status minlag_run(const minlag_config* config, minlag_report** out);
MINLAG_API int minlag_report_passed(const minlag_report* report);
/* Output strings are released with minlag_string_free. */
MINLAG_API minlag_status minlag_report_emit(const minlag_report* report, minlag_format format, char** out);
MINLAG_API void minlag_report_free(minlag_report* report);

/* Adapted-frame table at the first sample point. */
MINLAG_API minlag_status minlag_frame_table(const minlag_config* config, minlag_format format, char** out);
MINLAG_API minlag_status minlag_catalog_describe(minlag_format format, char** out);
/* Combined document; `names` may be NULL. */
MINLAG_API minlag_status minlag_reports_emit(const minlag_report* const* reports, const char* const* names,
                                  size_t count, minlag_format format, char** out);
MINLAG_API void minlag_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
