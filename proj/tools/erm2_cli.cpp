// Command-line front end. Talks to the library only through the C API.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "erm2/erm2.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Failure {
  erm2_status status;
  std::string message;
};

void check(erm2_status s) {
  if (s != ERM2_OK) throw Failure{s, erm2_last_error()};
}

struct CurveDeleter {
  void operator()(erm2_curve* c) const { erm2_curve_destroy(c); }
};
struct ReportDeleter {
  void operator()(erm2_report* r) const { erm2_report_destroy(r); }
};
using Curve = std::unique_ptr<erm2_curve, CurveDeleter>;
using Report = std::unique_ptr<erm2_report, ReportDeleter>;

Report new_report(const std::string& name) {
  erm2_report* r = nullptr;
  check(erm2_report_create(name.c_str(), &r));
  return Report(r);
}

void set(const Report& r, const char* label, double v) {
  check(erm2_report_set(r.get(), label, v));
}

std::string render(const Report& r, erm2_format format) {
  size_t len = 0;
  erm2_status s = erm2_report_render(r.get(), format, nullptr, 0, &len);
  if (s != ERM2_E_BUFFER_TOO_SMALL) check(s);
  std::string out(len + 1, '\0');
  check(erm2_report_render(r.get(), format, out.data(), out.size(), &len));
  out.resize(len);
  return out;
}

std::string format_curve(const Curve& c) {
  size_t len = 0;
  erm2_status s = erm2_curve_format(c.get(), nullptr, 0, &len);
  if (s != ERM2_E_BUFFER_TOO_SMALL) check(s);
  std::string out(len + 1, '\0');
  check(erm2_curve_format(c.get(), out.data(), out.size(), &len));
  out.resize(len);
  return out;
}

unsigned thread_cap() {
  const char* env = std::getenv("ERM2_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0)
    throw Failure{ERM2_E_INVALID_ARGUMENT, "ERM2_THREADS must be a positive integer"};
  return static_cast<unsigned>(v);
}

struct ErmArgs {
  std::string curve;
  std::size_t n = 2;
  bool exact = false;
  bool mc = false;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string region;
};

Report run_erm(const ErmArgs& a) {
  erm2_curve* raw = nullptr;
  check(erm2_curve_load(a.curve.c_str(), &raw));
  Curve curve(raw);
  double q_star = 0.0, opt = 0.0;
  check(erm2_curve_opt(curve.get(), &q_star, &opt));

  const bool mc = a.mc || (!a.exact && a.n > 2);
  if (!mc && a.n > 2)
    throw Failure{ERM2_E_INVALID_ARGUMENT, "--exact supports only --n 1 or --n 2"};
  if (!a.region.empty() && (mc || a.n != 2))
    throw Failure{ERM2_E_INVALID_ARGUMENT, "--region requires --exact with --n 2"};

  erm2_estimate e{};
  if (mc) {
    check(erm2_erm_mc(curve.get(), a.n, a.trials, a.seed, thread_cap(), &e));
  } else if (!a.region.empty()) {
    erm2_region region = a.region == "R"   ? ERM2_REGION_R
                         : a.region == "L" ? ERM2_REGION_L
                         : a.region == "B" ? ERM2_REGION_B
                                           : static_cast<erm2_region>(-1);
    if (region == static_cast<erm2_region>(-1))
      throw Failure{ERM2_E_INVALID_ARGUMENT, "--region must be R, L or B"};
    check(erm2_erm2_region_exact(curve.get(), region, a.tol, &e));
  } else if (a.n == 1) {
    check(erm2_erm1_exact(curve.get(), &e));
  } else {
    check(erm2_erm2_exact(curve.get(), a.tol, &e));
  }

  Report r = new_report(a.region.empty() ? "erm" : "erm-region-" + a.region);
  set(r, "n", static_cast<double>(a.n));
  set(r, "value", e.value);
  if (mc) {
    set(r, "std_error", e.std_error);
    set(r, "trials", static_cast<double>(e.trials));
    set(r, "seed", static_cast<double>(a.seed));
  }
  set(r, "q_star", q_star);
  set(r, "opt", opt);
  set(r, "ratio", e.value / opt);
  return r;
}

struct BoundsArgs {
  std::optional<double> q_star;
  double delta = 0.15117;
  bool minimize = false;
  bool optimize_delta = false;
};

Report run_bounds(const BoundsArgs& a) {
  if (a.minimize) {
    double q = 0.0, b = 0.0;
    check(erm2_minimize_combined(0.0, 1.0, &q, &b));
    Report r = new_report("bounds-minimize");
    set(r, "q_star", q);
    set(r, "bound", b);
    check(erm2_report_expect(r.get(), "bound", ERM2_TARGET_ABOVE, 0.509, 0.0,
                             "combined bound stays above 0.509", nullptr));
    return r;
  }
  if (a.optimize_delta) {
    double d = 0.0, b = 0.0;
    check(erm2_optimize_delta(0.0, 1.0, &d, &b));
    Report r = new_report("bounds-delta");
    set(r, "delta", d);
    set(r, "bound_L", b);
    return r;
  }
  if (!a.q_star)
    throw Failure{ERM2_E_INVALID_ARGUMENT, "bounds needs --qstar, --minimize or --optimize-delta"};
  erm2_bound_report b{};
  check(erm2_combined_bound(*a.q_star, a.delta, &b));
  Report r = new_report("bounds");
  set(r, "q_star", b.q_star);
  set(r, "delta", b.delta);
  set(r, "gamma", b.gamma);
  set(r, "bound_R", b.bound_r);
  set(r, "bound_L", b.bound_l);
  set(r, "bound_L_delta", b.bound_l_delta);
  set(r, "bound_B", b.bound_b);
  set(r, "combined", b.combined);
  return r;
}

struct EmitArgs {
  std::string kind;
  double q_star = 1.0;
  double v_max = 10.0;
  double q_b = 0.1;
  double r_b = 0.22;
  double peak = 1.0;
  std::uint64_t seed = 1;
  std::size_t pieces = 8;
  std::string out;
};

Curve make_named_curve(const EmitArgs& a) {
  erm2_curve* raw = nullptr;
  if (a.kind == "triangular") {
    check(erm2_curve_triangular(a.q_star, &raw));
  } else if (a.kind == "truncated-equal-revenue") {
    check(erm2_curve_truncated_equal_revenue(a.v_max, &raw));
  } else if (a.kind == "quadrilateral") {
    check(erm2_curve_quadrilateral(a.q_b, a.r_b, &raw));
  } else if (a.kind == "bump") {
    check(erm2_curve_bump(a.peak, a.q_b, a.r_b, &raw));
  } else {
    check(erm2_curve_random(a.seed, a.pieces, &raw));
  }
  return Curve(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ERM revenue from 1, 2 or n samples of a regular distribution"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "table";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  ErmArgs erm;
  auto* erm_cmd = app.add_subcommand("erm", "Expected ERM revenue of a curve file");
  erm_cmd->add_option("--curve", erm.curve, "Curve file (lines 'q r')")->required();
  erm_cmd->add_option("--n", erm.n, "Number of samples")->check(CLI::PositiveNumber);
  auto* exact_flag = erm_cmd->add_flag("--exact", erm.exact, "Quadrature (n = 1 or 2)");
  erm_cmd->add_flag("--mc", erm.mc, "Monte Carlo")->excludes(exact_flag);
  erm_cmd->add_option("--trials", erm.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  erm_cmd->add_option("--seed", erm.seed, "Monte Carlo seed");
  erm_cmd->add_option("--tol", erm.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  erm_cmd->add_option("--region", erm.region, "Restrict to region R, L or B (n = 2)");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Region bounds and the combined guarantee");
  bounds_cmd->add_option("--qstar", bounds.q_star, "Revenue-maximizing quantile");
  bounds_cmd->add_option("--delta", bounds.delta, "Left-region split parameter");
  bounds_cmd->add_flag("--minimize", bounds.minimize, "Minimize the combined bound over q*");
  bounds_cmd->add_flag("--optimize-delta", bounds.optimize_delta,
                       "Maximize the left-region bound over delta");

  std::string experiment;
  std::size_t curves = 500;
  std::uint64_t seed = 1;
  auto* repro_cmd = app.add_subcommand("reproduce", "Rerun a canned experiment");
  repro_cmd->add_option("experiment", experiment, "prop1, prop3, switch or theorem")
      ->required()
      ->check(CLI::IsMember({"prop1", "prop3", "switch", "theorem"}));
  repro_cmd->add_option("--curves", curves, "Random curves (theorem)");
  repro_cmd->add_option("--seed", seed, "Seed (theorem)");

  std::string search_kind;
  std::size_t grid = 200;
  double search_tol = 1e-7;
  auto* search_cmd = app.add_subcommand("search", "Worst-case search over curve families");
  search_cmd->add_option("family", search_kind, "triangular or quadrilateral")
      ->required()
      ->check(CLI::IsMember({"triangular", "quadrilateral"}));
  search_cmd->add_option("--grid", grid, "Grid points")->check(CLI::Range(2, 1000000));
  search_cmd->add_option("--tol", search_tol, "Refinement tolerance")->check(CLI::PositiveNumber);

  EmitArgs emit;
  auto* emit_cmd = app.add_subcommand("emit-curve", "Write a named curve");
  emit_cmd->add_option("kind", emit.kind)
      ->required()
      ->check(CLI::IsMember(
          {"triangular", "truncated-equal-revenue", "quadrilateral", "bump", "random"}));
  emit_cmd->add_option("--qstar", emit.q_star, "triangular peak");
  emit_cmd->add_option("--vmax", emit.v_max, "truncated-equal-revenue value cap");
  emit_cmd->add_option("--qb", emit.q_b, "bump quantile");
  emit_cmd->add_option("--rb", emit.r_b, "bump revenue");
  emit_cmd->add_option("--peak", emit.peak, "bump: peak quantile");
  emit_cmd->add_option("--seed", emit.seed, "random: seed");
  emit_cmd->add_option("--pieces", emit.pieces, "random: pieces");
  emit_cmd->add_option("--out", emit.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "erm2: " << e.what() << "\n";
    return kExitUsage;
  }

  const erm2_format format = format_name == "csv"    ? ERM2_FORMAT_CSV
                             : format_name == "json" ? ERM2_FORMAT_JSON
                                                     : ERM2_FORMAT_TABLE;
  try {
    if (*emit_cmd) {
      Curve c = make_named_curve(emit);
      if (emit.out.empty())
        std::cout << format_curve(c);
      else
        check(erm2_curve_save(c.get(), emit.out.c_str()));
      return kExitOk;
    }

    Report report;
    if (*erm_cmd) {
      report = run_erm(erm);
    } else if (*bounds_cmd) {
      report = run_bounds(bounds);
    } else if (*repro_cmd) {
      erm2_report* raw = nullptr;
      check(erm2_reproduce(experiment.c_str(), curves, seed, &raw));
      report.reset(raw);
    } else {
      erm2_report* raw = nullptr;
      check(search_kind == "triangular" ? erm2_search_triangular(grid, search_tol, &raw)
                                        : erm2_search_quadrilateral(grid, search_tol, &raw));
      report.reset(raw);
    }
    std::cout << render(report, format);
    std::cout.flush();
    return erm2_report_pass(report.get()) ? kExitOk : kExitFailed;
  } catch (const Failure& f) {
    std::cerr << "erm2: " << erm2_status_name(f.status) << ": " << f.message << "\n";
    // A violated bound or a failed search is a failed reproduction, not a usage error.
    if (f.status == ERM2_E_BOUND_VIOLATED || f.status == ERM2_E_SEARCH_FAILED)
      return kExitFailed;
    return kExitUsage;
  }
}
