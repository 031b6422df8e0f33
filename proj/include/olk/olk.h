/* C interface to the Orlicz–Lorentz toolkit. Objects are opaque handles;
 * every call returns an olk_status and, on failure, leaves a message in
 * olk_last_error() for the calling thread. */
#ifndef OLK_OLK_H
#define OLK_OLK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OLK_BUILDING_LIBRARY)
#    define OLK_API __declspec(dllexport)
#  else
#    define OLK_API __declspec(dllimport)
#  endif
#else
#  define OLK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum olk_status {
  OLK_OK = 0,
  OLK_INVALID_ARGUMENT = 1,
  OLK_PARSE_ERROR = 2,
  OLK_OUTSIDE_SPACE = 3,
  OLK_HORIZON_EXCEEDED = 4,
  OLK_PRECONDITION_VIOLATED = 5,
  OLK_DOMAIN_MISMATCH = 6,
  OLK_INCONSISTENT = 7,
  OLK_IO_ERROR = 8,
  OLK_INTERNAL_ERROR = 9
} olk_status;

typedef enum olk_norm_which {
  OLK_NORM_LUXEMBURG = 0,
  OLK_NORM_ORLICZ = 1,
  OLK_NORM_BOTH = 2
} olk_norm_which;

typedef struct olk_space olk_space;
typedef struct olk_function olk_function;
typedef struct olk_report olk_report;

OLK_API const char* olk_version(void);
/* Stable token such as "parse_error"; "ok" for OLK_OK. */
OLK_API const char* olk_status_token(olk_status status);
/* Message of the last failed call on this thread, "" if none. */
OLK_API const char* olk_last_error(void);

/* Spaces */
OLK_API olk_status olk_space_parse(const char* text, olk_space** out);
OLK_API olk_status olk_space_load(const char* path, olk_space** out);
OLK_API void olk_space_free(olk_space* space);
/* Domain length γ of the space: 1 or +inf. */
OLK_API olk_status olk_space_gamma(const olk_space* space, double* out);

/* Step functions on [0, domain) */
OLK_API olk_status olk_function_parse(const char* text, double domain, olk_function** out);
OLK_API olk_status olk_function_load(const char* path, double domain, olk_function** out);
OLK_API olk_status olk_function_from_pieces(double domain, const double* starts,
                                            const double* lengths, const double* values,
                                            size_t count, olk_function** out);
OLK_API void olk_function_free(olk_function* fn);

/* Numerics */
OLK_API olk_status olk_eval_phi(const olk_space* space, double u, double* out);
OLK_API olk_status olk_eval_psi(const olk_space* space, double v, double* out);
OLK_API olk_status olk_psi_inverse(const olk_space* space, double w, double* out);
OLK_API olk_status olk_modular(const olk_space* space, const olk_function* x, double* out);
OLK_API olk_status olk_luxemburg_norm(const olk_space* space, const olk_function* x,
                                      double* out);
OLK_API olk_status olk_orlicz_norm(const olk_space* space, const olk_function* x,
                                   double* out);
OLK_API olk_status olk_k_interval(const olk_space* space, const olk_function* x,
                                  double* k_star, double* k_double_star);

/* Reports: one text rendering and one JSON document each. workers = 0 means
 * OLK_THREADS or the hardware concurrency. */
OLK_API olk_status olk_report_norm(const olk_space* space, const olk_function* x,
                                   olk_norm_which which, olk_report** out);
OLK_API olk_status olk_report_rearrange(const olk_function* x, olk_report** out);
OLK_API olk_status olk_report_conjugate(const olk_space* space, olk_report** out);
OLK_API olk_status olk_report_classify(const olk_space* space, olk_report** out);
OLK_API olk_status olk_report_predict(const olk_space* space, olk_report** out);
OLK_API olk_status olk_report_witness(const olk_space* space, olk_report** out);
OLK_API olk_status olk_report_probe(const olk_space* space, uint64_t seed, uint64_t samples,
                                    unsigned workers, olk_report** out);
OLK_API olk_status olk_report_luns(const olk_space* space, const olk_function* x,
                                   uint64_t seed, uint64_t samples, unsigned workers,
                                   olk_report** out);
OLK_API const char* olk_report_text(const olk_report* report);
OLK_API const char* olk_report_json(const olk_report* report);
OLK_API void olk_report_free(olk_report* report);

#ifdef __cplusplus
}
#endif

#endif /* OLK_OLK_H */
