#include "erm2/erm2.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <string_view>
#include <vector>

#include "erm2/bounds.hpp"
#include "erm2/curve.hpp"
#include "erm2/engine.hpp"
#include "erm2/error.hpp"
#include "erm2/experiments.hpp"
#include "erm2/report.hpp"

struct erm2_curve {
  erm2::RevenueCurve curve;
};

struct erm2_report {
  erm2::Report report;
};

namespace {

thread_local std::string last_error;

erm2_status fail(erm2_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs fn, converting exceptions into status codes.
template <class Fn>
erm2_status guard(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return ERM2_OK;
  } catch (const erm2::Error& e) {
    return fail(static_cast<erm2_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ERM2_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ERM2_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ERM2_E_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr)
    throw erm2::Error(erm2::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

erm2_status copy_text(const std::string& text, char* buf, size_t cap, size_t* len) {
  if (len == nullptr) return fail(ERM2_E_INVALID_ARGUMENT, "len is null");
  *len = text.size();
  if (cap <= text.size() || buf == nullptr)
    return fail(ERM2_E_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(text.size() + 1) +
                                             " bytes");
  std::memcpy(buf, text.data(), text.size());
  buf[text.size()] = '\0';
  last_error.clear();
  return ERM2_OK;
}

void store(const erm2::ErmEstimate& e, erm2_estimate* out) {
  out->value = e.value;
  out->method = static_cast<erm2_method>(e.method);
  out->std_error = e.std_error;
  out->trials = e.trials;
  out->n_samples = static_cast<uint32_t>(e.n_samples);
}

template <class Make>
erm2_status make_curve_handle(erm2_curve** out, Make&& make) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    *out = new erm2_curve{make()};
  });
}

erm2_status make_report_handle(erm2_report** out, erm2::Report report) {
  *out = new erm2_report{std::move(report)};
  return ERM2_OK;
}

}  // namespace

extern "C" {

const char* erm2_version(void) { return "0.1.0"; }

const char* erm2_status_name(erm2_status status) {
  switch (status) {
    case ERM2_OK:
      return "ok";
    case ERM2_E_BUFFER_TOO_SMALL:
      return "buffer-too-small";
    case ERM2_E_INTERNAL:
      return "internal";
    default:
      if (status >= ERM2_E_NON_MONOTONE_QUANTILES && status <= ERM2_E_INVALID_ARGUMENT)
        return erm2::to_string(static_cast<erm2::ErrorCode>(status));
      return "unknown";
  }
}

const char* erm2_last_error(void) { return last_error.c_str(); }

erm2_status erm2_curve_create(const double* q, const double* r, size_t n, erm2_curve** out) {
  return make_curve_handle(out, [&] {
    if (n > 0) {
      require(q, "q");
      require(r, "r");
    }
    std::vector<erm2::Breakpoint> points(n);
    for (size_t i = 0; i < n; ++i) points[i] = {q[i], r[i]};
    return erm2::make_curve(std::move(points));
  });
}

erm2_status erm2_curve_triangular(double q_star, erm2_curve** out) {
  return make_curve_handle(out, [&] { return erm2::triangular(q_star); });
}

erm2_status erm2_curve_truncated_equal_revenue(double v_max, erm2_curve** out) {
  return make_curve_handle(out, [&] { return erm2::truncated_equal_revenue(v_max); });
}

erm2_status erm2_curve_quadrilateral(double q_b, double r_b, erm2_curve** out) {
  return make_curve_handle(out, [&] { return erm2::quadrilateral(q_b, r_b); });
}

erm2_status erm2_curve_bump(double q_peak, double q_b, double r_b, erm2_curve** out) {
  return make_curve_handle(out, [&] { return erm2::bump_curve(q_peak, q_b, r_b); });
}

erm2_status erm2_curve_random(uint64_t seed, size_t pieces, erm2_curve** out) {
  return make_curve_handle(out, [&] { return erm2::random_regular_curve(seed, pieces); });
}

erm2_status erm2_curve_parse(const char* text, erm2_curve** out) {
  return make_curve_handle(out, [&] {
    require(text, "text");
    return erm2::parse_curve(text);
  });
}

erm2_status erm2_curve_load(const char* path, erm2_curve** out) {
  return make_curve_handle(out, [&] {
    require(path, "path");
    return erm2::load_curve(path);
  });
}

erm2_status erm2_curve_save(const erm2_curve* curve, const char* path) {
  return guard([&] {
    require(curve, "curve");
    require(path, "path");
    erm2::save_curve(curve->curve, path);
  });
}

erm2_status erm2_curve_format(const erm2_curve* curve, char* buf, size_t cap, size_t* len) {
  if (curve == nullptr) return fail(ERM2_E_INVALID_ARGUMENT, "curve is null");
  std::string text;
  erm2_status s = guard([&] { text = erm2::format_curve(curve->curve); });
  if (s != ERM2_OK) return s;
  return copy_text(text, buf, cap, len);
}

erm2_status erm2_curve_scale(const erm2_curve* curve, double alpha, erm2_curve** out) {
  return make_curve_handle(out, [&] {
    require(curve, "curve");
    return erm2::scale(curve->curve, alpha);
  });
}

void erm2_curve_destroy(erm2_curve* curve) { delete curve; }

size_t erm2_curve_size(const erm2_curve* curve) {
  return curve == nullptr ? 0 : curve->curve.breakpoints().size();
}

erm2_status erm2_curve_breakpoint(const erm2_curve* curve, size_t i, double* q, double* r) {
  return guard([&] {
    require(curve, "curve");
    const auto points = curve->curve.breakpoints();
    if (i >= points.size())
      throw erm2::Error(erm2::ErrorCode::OutOfRange,
                        "breakpoint index " + std::to_string(i) + " out of range");
    if (q != nullptr) *q = points[i].q;
    if (r != nullptr) *r = points[i].r;
  });
}

erm2_status erm2_curve_value_at(const erm2_curve* curve, double q, double* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    *out = curve->curve.value_at(q);
  });
}

erm2_status erm2_curve_price_at(const erm2_curve* curve, double q, double* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    *out = curve->curve.price_at(q);
  });
}

erm2_status erm2_curve_opt(const erm2_curve* curve, double* q_star, double* opt) {
  return guard([&] {
    require(curve, "curve");
    const auto o = curve->curve.opt();
    if (q_star != nullptr) *q_star = o.q_star;
    if (opt != nullptr) *opt = o.opt;
  });
}

erm2_status erm2_sample_values(const erm2_curve* curve, size_t n, uint64_t seed,
                               double* quantiles, double* values) {
  return guard([&] {
    require(curve, "curve");
    if (n > 0) {
      require(quantiles, "quantiles");
      require(values, "values");
    }
    const auto s = erm2::sample_values(curve->curve, n, seed);
    std::copy(s.quantiles.begin(), s.quantiles.end(), quantiles);
    std::copy(s.values.begin(), s.values.end(), values);
  });
}

erm2_status erm2_e2(const erm2_curve* curve, double q1, double q2, double* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    *out = erm2::e2(curve->curve, q1, q2);
  });
}

erm2_status erm2_erm_price(const double* values, size_t n, double* out) {
  return guard([&] {
    require(out, "out");
    if (n > 0) require(values, "values");
    *out = erm2::erm_price(std::span<const double>(values, n));
  });
}

erm2_status erm2_threshold_upper(const erm2_curve* curve, double q, double* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    *out = erm2::threshold_upper(curve->curve, q);
  });
}

erm2_status erm2_threshold_lower(const erm2_curve* curve, double q, double* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    *out = erm2::threshold_lower(curve->curve, q);
  });
}

erm2_status erm2_conditional_given_min(const erm2_curve* curve, double q, double* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    *out = erm2::conditional_given_min(curve->curve, q);
  });
}

erm2_status erm2_conditional_given_max(const erm2_curve* curve, double q, double* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    *out = erm2::conditional_given_max(curve->curve, q);
  });
}

erm2_status erm2_erm1_exact(const erm2_curve* curve, erm2_estimate* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    store(erm2::erm1_exact(curve->curve), out);
  });
}

erm2_status erm2_erm2_exact(const erm2_curve* curve, double tol, erm2_estimate* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    store(erm2::erm2_exact(curve->curve, tol), out);
  });
}

erm2_status erm2_erm2_region_exact(const erm2_curve* curve, erm2_region region, double tol,
                                   erm2_estimate* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    if (region < ERM2_REGION_R || region > ERM2_REGION_B)
      throw erm2::Error(erm2::ErrorCode::InvalidArgument, "unknown region");
    store(erm2::erm2_region_exact(curve->curve, static_cast<erm2::Region>(region), tol), out);
  });
}

erm2_status erm2_erm_mc(const erm2_curve* curve, size_t n, uint64_t trials, uint64_t seed,
                        unsigned threads, erm2_estimate* out) {
  return guard([&] {
    require(curve, "curve");
    require(out, "out");
    store(erm2::erm_mc(curve->curve, n, trials, seed, threads), out);
  });
}

#define ERM2_SCALAR(name, expr)              \
  erm2_status name(double x, double* out) {  \
    return guard([&] {                       \
      require(out, "out");                   \
      *out = expr(x);                        \
    });                                      \
  }

ERM2_SCALAR(erm2_bound_r, erm2::bound_R)
ERM2_SCALAR(erm2_bound_l, erm2::bound_L)
ERM2_SCALAR(erm2_bound_b, erm2::bound_B)
ERM2_SCALAR(erm2_trr_bound, erm2::trr_bound)

#undef ERM2_SCALAR

erm2_status erm2_cdec_bound(double q, double r_q, double* out) {
  return guard([&] {
    require(out, "out");
    *out = erm2::cdec_bound(q, r_q);
  });
}

erm2_status erm2_order_stat(erm2_order_kind kind, double q, double m, double* out) {
  return guard([&] {
    require(out, "out");
    if (kind < ERM2_ORDER_MIN_DENSITY || kind > ERM2_ORDER_MAX_COND_ABOVE)
      throw erm2::Error(erm2::ErrorCode::InvalidArgument, "unknown order statistic");
    *out = erm2::order_stat(static_cast<erm2::OrderStat>(kind), q, m);
  });
}

erm2_status erm2_combined_bound(double q_star, double delta, erm2_bound_report* out) {
  return guard([&] {
    require(out, "out");
    const auto b = erm2::combined_bound(q_star, delta);
    *out = {b.q_star, b.delta, b.gamma, b.bound_R, b.bound_L, b.bound_L_delta, b.bound_B,
            b.combined};
  });
}

erm2_status erm2_optimize_delta(double lo, double hi, double* delta, double* bound) {
  return guard([&] {
    const auto o = erm2::optimize_delta(lo, hi);
    if (delta != nullptr) *delta = o.argument;
    if (bound != nullptr) *bound = o.value;
  });
}

erm2_status erm2_minimize_combined(double lo, double hi, double* q_star, double* bound) {
  return guard([&] {
    const auto o = erm2::minimize_combined(lo, hi);
    if (q_star != nullptr) *q_star = o.argument;
    if (bound != nullptr) *bound = o.value;
  });
}

erm2_status erm2_reproduce(const char* name, size_t curves, uint64_t seed, erm2_report** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = nullptr;
    const std::string_view n(name);
    if (n == "prop1") {
      make_report_handle(out, erm2::reproduce_prop1());
    } else if (n == "prop3") {
      make_report_handle(out, erm2::reproduce_prop3());
    } else if (n == "switch") {
      make_report_handle(out, erm2::find_switch_pair().report);
    } else if (n == "theorem") {
      make_report_handle(out, erm2::theorem_check(curves, seed));
    } else {
      throw erm2::Error(erm2::ErrorCode::InvalidArgument,
                        "unknown experiment '" + std::string(n) + "'");
    }
  });
}

namespace {

erm2::Report triangular_report(size_t grid, double tol, erm2::Optimum* best) {
  const auto o = erm2::triangular_worst_case(grid, tol);
  if (best != nullptr) *best = o;
  erm2::Report report("triangular-search");
  report.set("q_star", o.argument);
  report.set("erm2_ratio", o.value);
  report.expect("erm2_ratio", erm2::TargetKind::Above, erm2::kGuarantee, 0.0,
                "above the two-sample guarantee");
  return report;
}

}  // namespace

erm2_status erm2_search_triangular(size_t grid, double tol, erm2_report** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    make_report_handle(out, triangular_report(grid, tol, nullptr));
  });
}

erm2_status erm2_search_quadrilateral(size_t grid, double tol, erm2_report** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    erm2::Optimum tri;
    triangular_report(grid, tol, &tri);
    make_report_handle(out, erm2::quadrilateral_improves(tri.argument));
  });
}

erm2_status erm2_report_create(const char* name, erm2_report** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = new erm2_report{erm2::Report(name)};
  });
}

erm2_status erm2_report_set(erm2_report* report, const char* label, double value) {
  return guard([&] {
    require(report, "report");
    require(label, "label");
    report->report.set(label, value);
  });
}

erm2_status erm2_report_get(const erm2_report* report, const char* label, double* out) {
  return guard([&] {
    require(report, "report");
    require(label, "label");
    require(out, "out");
    const auto v = report->report.get(label);
    if (!v)
      throw erm2::Error(erm2::ErrorCode::InvalidArgument,
                        "no value labelled '" + std::string(label) + "'");
    *out = *v;
  });
}

erm2_status erm2_report_expect(erm2_report* report, const char* label, erm2_target_kind kind,
                               double value, double tolerance, const char* note, int* met) {
  return guard([&] {
    require(report, "report");
    require(label, "label");
    if (kind < ERM2_TARGET_NEAR || kind > ERM2_TARGET_AT_LEAST)
      throw erm2::Error(erm2::ErrorCode::InvalidArgument, "unknown target kind");
    const bool ok = report->report.expect(label, static_cast<erm2::TargetKind>(kind), value,
                                          tolerance, note == nullptr ? "" : note);
    if (met != nullptr) *met = ok ? 1 : 0;
  });
}

int erm2_report_pass(const erm2_report* report) {
  return report != nullptr && report->report.pass() ? 1 : 0;
}

erm2_status erm2_report_render(const erm2_report* report, erm2_format format, char* buf,
                               size_t cap, size_t* len) {
  if (report == nullptr) return fail(ERM2_E_INVALID_ARGUMENT, "report is null");
  if (format < ERM2_FORMAT_TABLE || format > ERM2_FORMAT_JSON)
    return fail(ERM2_E_INVALID_ARGUMENT, "unknown format");
  std::string text;
  erm2_status s =
      guard([&] { text = report->report.render(static_cast<erm2::Format>(format)); });
  if (s != ERM2_OK) return s;
  return copy_text(text, buf, cap, len);
}

void erm2_report_destroy(erm2_report* report) { delete report; }

}  // extern "C"
