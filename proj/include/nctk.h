/* C interface to the normal crossing toolkit. */
#ifndef NCTK_H
#define NCTK_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(NCTK_BUILDING)
#    define NCTK_API __declspec(dllexport)
#  else
#    define NCTK_API __declspec(dllimport)
#  endif
#else
#  define NCTK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nctk_status {
    NCTK_OK = 0,
    NCTK_PARSE_ERROR,
    NCTK_DIMENSION_MISMATCH,
    NCTK_INVALID_ARGUMENT,
    NCTK_ILL_DEFINED_INDUCED_MAP,
    NCTK_NOT_NILPOTENT,
    NCTK_RELATIVE_MONODROMY_NONEXISTENT,
    NCTK_FILTRATION_NOT_PRESERVED,
    NCTK_NON_COMMUTING_OPERATORS,
    NCTK_PAIRING_DEGENERATE,
    NCTK_MISSING_HODGE_FILTRATION,
    NCTK_INTERNAL
} nctk_status;

typedef struct nctk_model nctk_model;
typedef struct nctk_report nctk_report;

/* Unset optional fields are NULL (strings) or have their has_* flag cleared. */
typedef struct nctk_options {
    const char* verb;
    const char* z;        /* comma-separated 1-based branch indices */
    const char* complex;  /* omega | ic | iclog */
    const char* mode;     /* open | support | closed | compact | link */
    int k;
    int has_k;
    int shift;
    int has_shift;
    uint64_t seed;
} nctk_options;

NCTK_API void nctk_options_init(nctk_options* options);

/* Parses an instance document. On failure *out is NULL and nctk_last_error() describes the problem. */
NCTK_API nctk_status nctk_model_parse(const char* text, nctk_model** out);
NCTK_API void nctk_model_free(nctk_model* model);
/* Canonical re-serialization; release with nctk_string_free. */
NCTK_API char* nctk_model_canonical_json(const nctk_model* model);

/* Runs one verb. Domain errors still produce a report (an error document with exit code 2). */
NCTK_API nctk_status nctk_run(const nctk_model* model, const char* instance, const nctk_options* options,
                              nctk_report** out);
/* Error report for input that never became a model (e.g. a parse failure). */
NCTK_API nctk_report* nctk_report_from_last_error(void);
NCTK_API int nctk_report_exit_code(const nctk_report* report);
/* 1 when the verdict is pass. */
NCTK_API int nctk_report_passed(const nctk_report* report);
/* format: 0 = JSON, 1 = text. Release with nctk_string_free. */
NCTK_API char* nctk_report_render(const nctk_report* report, int format);
NCTK_API void nctk_report_free(nctk_report* report);

NCTK_API const char* nctk_status_name(nctk_status status);
/* Message of the last failure on the calling thread, "" if none. */
NCTK_API const char* nctk_last_error(void);
NCTK_API void nctk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
