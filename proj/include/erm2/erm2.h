/*
 * C interface to the ERM revenue library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an erm2_status;
 * on failure erm2_last_error() describes the problem for the calling thread.
 *
 * Text outputs use a size-query convention: *len receives the length
 * without the terminating NUL. If cap > *len the text is copied and
 * NUL-terminated, otherwise ERM2_E_BUFFER_TOO_SMALL is returned and buf is
 * left alone (buf may be NULL when cap is 0).
 */
#ifndef ERM2_H
#define ERM2_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ERM2_BUILDING_LIBRARY)
#    define ERM2_API __declspec(dllexport)
#  else
#    define ERM2_API __declspec(dllimport)
#  endif
#else
#  define ERM2_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum erm2_status {
  ERM2_OK = 0,
  ERM2_E_NON_MONOTONE_QUANTILES = 1,
  ERM2_E_NON_CONCAVE = 2,
  ERM2_E_NEGATIVE_REVENUE = 3,
  ERM2_E_NONZERO_ORIGIN = 4,
  ERM2_E_OUT_OF_RANGE = 5,
  ERM2_E_NON_POSITIVE_SCALE = 6,
  ERM2_E_INFEASIBLE_BUMP = 7,
  ERM2_E_EMPTY_SAMPLE = 8,
  ERM2_E_TOLERANCE_NOT_MET = 9,
  ERM2_E_DEGENERATE_REGION = 10,
  ERM2_E_BOUND_VIOLATED = 11,
  ERM2_E_SEARCH_FAILED = 12,
  ERM2_E_CURVE_PARSE = 13,
  ERM2_E_IO = 14,
  ERM2_E_INVALID_ARGUMENT = 15,
  ERM2_E_BUFFER_TOO_SMALL = 16,
  ERM2_E_INTERNAL = 99
} erm2_status;

typedef enum erm2_method {
  ERM2_METHOD_EXACT1 = 0,
  ERM2_METHOD_EXACT2 = 1,
  ERM2_METHOD_MONTE_CARLO = 2
} erm2_method;

typedef enum erm2_region { ERM2_REGION_R = 0, ERM2_REGION_L = 1, ERM2_REGION_B = 2 } erm2_region;

typedef enum erm2_format {
  ERM2_FORMAT_TABLE = 0,
  ERM2_FORMAT_CSV = 1,
  ERM2_FORMAT_JSON = 2
} erm2_format;

typedef enum erm2_order_kind {
  ERM2_ORDER_MIN_DENSITY = 0,
  ERM2_ORDER_MAX_DENSITY = 1,
  ERM2_ORDER_MAX_COND_BELOW = 2,
  ERM2_ORDER_MAX_COND_ABOVE = 3
} erm2_order_kind;

typedef enum erm2_target_kind {
  ERM2_TARGET_NEAR = 0,     /* |computed - value| <= tolerance */
  ERM2_TARGET_BELOW = 1,    /* computed < value */
  ERM2_TARGET_ABOVE = 2,    /* computed > value */
  ERM2_TARGET_AT_LEAST = 3  /* computed >= value */
} erm2_target_kind;

typedef struct erm2_estimate {
  double value;
  erm2_method method;
  double std_error;
  uint64_t trials;
  uint32_t n_samples;
} erm2_estimate;

typedef struct erm2_bound_report {
  double q_star;
  double delta;
  double gamma;
  double bound_r;
  double bound_l;
  double bound_l_delta;
  double bound_b;
  double combined;
} erm2_bound_report;

typedef struct erm2_curve erm2_curve;
typedef struct erm2_report erm2_report;

ERM2_API const char* erm2_version(void);
ERM2_API const char* erm2_status_name(erm2_status status);
ERM2_API const char* erm2_last_error(void);

/* Curves */
ERM2_API erm2_status erm2_curve_create(const double* q, const double* r, size_t n,
                                       erm2_curve** out);
ERM2_API erm2_status erm2_curve_triangular(double q_star, erm2_curve** out);
ERM2_API erm2_status erm2_curve_truncated_equal_revenue(double v_max, erm2_curve** out);
ERM2_API erm2_status erm2_curve_quadrilateral(double q_b, double r_b, erm2_curve** out);
ERM2_API erm2_status erm2_curve_bump(double q_peak, double q_b, double r_b, erm2_curve** out);
ERM2_API erm2_status erm2_curve_random(uint64_t seed, size_t pieces, erm2_curve** out);
ERM2_API erm2_status erm2_curve_parse(const char* text, erm2_curve** out);
ERM2_API erm2_status erm2_curve_load(const char* path, erm2_curve** out);
ERM2_API erm2_status erm2_curve_save(const erm2_curve* curve, const char* path);
ERM2_API erm2_status erm2_curve_format(const erm2_curve* curve, char* buf, size_t cap,
                                       size_t* len);
ERM2_API erm2_status erm2_curve_scale(const erm2_curve* curve, double alpha, erm2_curve** out);
ERM2_API void erm2_curve_destroy(erm2_curve* curve);

ERM2_API size_t erm2_curve_size(const erm2_curve* curve);
ERM2_API erm2_status erm2_curve_breakpoint(const erm2_curve* curve, size_t i, double* q,
                                           double* r);
ERM2_API erm2_status erm2_curve_value_at(const erm2_curve* curve, double q, double* out);
ERM2_API erm2_status erm2_curve_price_at(const erm2_curve* curve, double q, double* out);
ERM2_API erm2_status erm2_curve_opt(const erm2_curve* curve, double* q_star, double* opt);
/* Fills n quantiles and prices; both arrays must hold n entries. */
ERM2_API erm2_status erm2_sample_values(const erm2_curve* curve, size_t n, uint64_t seed,
                                        double* quantiles, double* values);

/* ERM engine */
ERM2_API erm2_status erm2_e2(const erm2_curve* curve, double q1, double q2, double* out);
ERM2_API erm2_status erm2_erm_price(const double* values, size_t n, double* out);
ERM2_API erm2_status erm2_threshold_upper(const erm2_curve* curve, double q, double* out);
ERM2_API erm2_status erm2_threshold_lower(const erm2_curve* curve, double q, double* out);
ERM2_API erm2_status erm2_conditional_given_min(const erm2_curve* curve, double q, double* out);
ERM2_API erm2_status erm2_conditional_given_max(const erm2_curve* curve, double q, double* out);
ERM2_API erm2_status erm2_erm1_exact(const erm2_curve* curve, erm2_estimate* out);
ERM2_API erm2_status erm2_erm2_exact(const erm2_curve* curve, double tol, erm2_estimate* out);
ERM2_API erm2_status erm2_erm2_region_exact(const erm2_curve* curve, erm2_region region,
                                            double tol, erm2_estimate* out);
/* threads = 0 picks the hardware concurrency; the result does not depend on it. */
ERM2_API erm2_status erm2_erm_mc(const erm2_curve* curve, size_t n, uint64_t trials,
                                 uint64_t seed, unsigned threads, erm2_estimate* out);

/* Bounds, as fractions of OPT */
ERM2_API erm2_status erm2_bound_r(double q_star, double* out);
ERM2_API erm2_status erm2_bound_l(double delta, double* out);
ERM2_API erm2_status erm2_bound_b(double q_star, double* out);
ERM2_API erm2_status erm2_trr_bound(double m, double* out);
ERM2_API erm2_status erm2_cdec_bound(double q, double r_q, double* out);
ERM2_API erm2_status erm2_order_stat(erm2_order_kind kind, double q, double m, double* out);
ERM2_API erm2_status erm2_combined_bound(double q_star, double delta, erm2_bound_report* out);
ERM2_API erm2_status erm2_optimize_delta(double lo, double hi, double* delta, double* bound);
ERM2_API erm2_status erm2_minimize_combined(double lo, double hi, double* q_star,
                                            double* bound);

/* Experiments. name is one of "prop1", "prop3", "switch", "theorem";
 * curves and seed only matter for "theorem". */
ERM2_API erm2_status erm2_reproduce(const char* name, size_t curves, uint64_t seed,
                                    erm2_report** out);
ERM2_API erm2_status erm2_search_triangular(size_t grid, double tol, erm2_report** out);
/* Runs the triangular search first and bumps its minimizer. */
ERM2_API erm2_status erm2_search_quadrilateral(size_t grid, double tol, erm2_report** out);

/* Reports */
ERM2_API erm2_status erm2_report_create(const char* name, erm2_report** out);
ERM2_API erm2_status erm2_report_set(erm2_report* report, const char* label, double value);
ERM2_API erm2_status erm2_report_get(const erm2_report* report, const char* label,
                                     double* out);
/* Checks the value already stored under label; *met (optional) gets 1 or 0. */
ERM2_API erm2_status erm2_report_expect(erm2_report* report, const char* label,
                                        erm2_target_kind kind, double value, double tolerance,
                                        const char* note, int* met);
ERM2_API int erm2_report_pass(const erm2_report* report);
ERM2_API erm2_status erm2_report_render(const erm2_report* report, erm2_format format,
                                        char* buf, size_t cap, size_t* len);
ERM2_API void erm2_report_destroy(erm2_report* report);

#ifdef __cplusplus
}
#endif

#endif
