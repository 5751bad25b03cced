// vdm: command-line front end for the vdm library.
//
//   vdm extrema N [--format text|json] [--out FILE]
//   vdm optimize N [--seed S] [--restarts R] [--out DIR]
//   vdm grid N [--res TxP] [--exponents a,b,c] [--format csv|json] [--out FILE]
//   vdm limits factorize|minors|ratio --nodes ... --exponents ... [...]
//
// Exit codes: 0 success, 1 usage error, 2 numerical or certification failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_parse.hpp"
#include "vdm/vdm.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;

using vdm::io::fmt;

std::string short_fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<double>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += short_fmt(v[i] + 0.0);
  }
  return out;
}

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out + "]";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Writes to the file at `path`, or to stdout when path is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw vdm::Error(vdm::ErrorCode::InvalidArgument, "cannot open output file " + path);
  body(os);
}

int exit_code_for(const vdm::Error& e) {
  switch (e.code()) {
    case vdm::ErrorCode::RootFindingFailure:
      return kNumerical;
    default:
      return kUsage;
  }
}

std::vector<vdm::Complex> to_complex(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

// ---------------------------------------------------------------- extrema

struct ExtremaArgs {
  int n = 0;
  std::string format = "text";
  std::string out;
};

int run_extrema(const ExtremaArgs& args) {
  if (args.n < 2 || static_cast<std::size_t>(args.n) > vdm::kMaxExtremaDimension) {
    std::cerr << "extrema: n must satisfy 2 <= n <= 50\n";
    return kUsage;
  }
  const auto n = static_cast<std::size_t>(args.n);
  const auto from_hermite = vdm::pn_from_hermite(n);
  const auto recursive = vdm::pn_recursive(n);
  const auto exact = vdm::pn_exact(n);
  const auto set = vdm::solve_extrema(n);
  std::optional<vdm::ClosedFormReport> errata;
  if (n >= 3 && n <= 7) errata = vdm::closed_form_roots(n);

  emit(args.out, [&](std::ostream& os) {
    if (args.format == "json") {
      os << "{\"n\":" << n << ",\"coefficients\":" << json_array(from_hermite.coeffs)
         << ",\"coefficients_recursive\":" << json_array(recursive.coeffs) << ",\"coefficients_exact\":[";
      for (std::size_t k = 0; k < exact.size(); ++k) os << (k ? "," : "") << json_string(exact[k].str());
      os << "],\"roots\":" << json_array(set.roots) << ",\"extreme_value\":" << fmt(set.extreme_value)
         << ",\"log10_extreme_value\":" << fmt(set.log10_extreme_value) << ",\"residuals\":{";
      bool first = true;
      for (const auto& [name, value] : set.residuals) {
        os << (first ? "" : ",") << json_string(name) << ":" << fmt(value);
        first = false;
      }
      os << "},\"errata\":[";
      if (errata) {
        first = true;
        for (const auto& e : errata->entries) {
          if (!e.flagged) continue;
          os << (first ? "" : ",") << "{\"label\":" << json_string(e.label)
             << ",\"expression\":" << json_string(e.expression) << ",\"value\":" << fmt(e.value)
             << ",\"nearest_root\":" << fmt(e.nearest_root) << ",\"deviation\":" << fmt(e.deviation);
          if (e.suggested_expression) {
            os << ",\"suggested_expression\":" << json_string(*e.suggested_expression)
               << ",\"suggested_value\":" << fmt(*e.suggested_value)
               << ",\"suggested_deviation\":" << fmt(*e.suggested_deviation);
          }
          os << "}";
          first = false;
        }
      }
      os << "]}\n";
      return;
    }
    os << "n = " << n << "\n";
    os << "P_n coefficients, ascending powers (exact): ";
    for (std::size_t k = 0; k < exact.size(); ++k) os << (k ? ", " : "") << exact[k].str();
    os << "\nP_n from Hermite:   " << join(from_hermite.coeffs) << "\n";
    os << "P_n by recursion:   " << join(recursive.coeffs) << "\n";
    os << "roots: " << join(set.roots) << "\n";
    os << "extreme value: " << short_fmt(set.extreme_value) << " (log10 " << short_fmt(set.log10_extreme_value)
       << ")\n";
    os << "residuals:\n";
    for (const auto& [name, value] : set.residuals) os << "  " << name << " = " << fmt(value) << "\n";
    if (errata) {
      os << "closed-form roots (" << errata->flagged_count() << " flagged):\n";
      for (const auto& e : errata->entries) {
        os << "  " << e.label << " = " << short_fmt(e.value) << "  deviation " << fmt(e.deviation)
           << (e.flagged ? "  ERRATUM" : "") << "\n";
        if (e.flagged) {
          os << "    printed:   " << e.expression << "\n";
          if (e.suggested_expression) {
            os << "    candidate: " << *e.suggested_expression << " = " << short_fmt(*e.suggested_value)
               << " (deviation " << fmt(*e.suggested_deviation) << ")\n";
          }
        }
      }
    }
  });
  return kOk;
}

// --------------------------------------------------------------- optimize

struct OptimizeArgs {
  int n = 0;
  std::uint64_t seed = 0;
  int restarts = 8;
  std::string out = ".";
};

int run_optimize(const OptimizeArgs& args) {
  if (args.n < 2 || static_cast<std::size_t>(args.n) > vdm::kMaxExtremaDimension) {
    std::cerr << "optimize: n must satisfy 2 <= n <= 50\n";
    return kUsage;
  }
  if (args.restarts < 1) {
    std::cerr << "optimize: --restarts must be at least 1\n";
    return kUsage;
  }
  vdm::OptimizerConfig cfg;
  cfg.n = static_cast<std::size_t>(args.n);
  cfg.seed = args.seed;
  cfg.restarts = static_cast<std::size_t>(args.restarts);
  const auto traces = vdm::maximize_vn_all(cfg);

  std::filesystem::create_directories(args.out);
  std::size_t converged = 0;
  for (const auto& t : traces) {
    if (t.converged) ++converged;
    const auto path = std::filesystem::path(args.out) /
                      ("trace_n" + std::to_string(cfg.n) + "_seed" + std::to_string(t.seed) + ".csv");
    std::ofstream os(path, std::ios::binary);
    vdm::io::write_trace_csv(os, t);
  }
  const auto analytic = vdm::solve_extrema(cfg.n);
  std::vector<vdm::OptimizationTrace> ok;
  for (const auto& t : traces)
    if (t.converged) ok.push_back(t);
  if (ok.empty()) {
    std::cerr << "optimize: no restart converged\n";
    return kNumerical;
  }
  const auto best = vdm::detail::best_of(ok);
  const double value = std::abs(best.final_value());
  const double gap = std::abs(value - analytic.extreme_value) / analytic.extreme_value;
  const double equi = vdm::equi_residual(best.final_point);

  std::cout << "converged restarts: " << converged << "/" << traces.size() << "\n";
  std::cout << "best seed: " << best.seed << "\n";
  std::cout << "best point: " << join(best.final_point) << "\n";
  std::cout << "best |v_n|: " << fmt(value) << "\n";
  std::cout << "analytic |v_n|: " << fmt(analytic.extreme_value) << "\n";
  std::cout << "relative gap: " << fmt(gap) << "\n";
  std::cout << "equi residual: " << fmt(equi) << "\n";
  return gap < 1e-6 ? kOk : kNumerical;
}

// ------------------------------------------------------------------- grid

struct GridArgs {
  int n = 0;
  std::string res = "720x360";
  std::string exponents;
  std::string format = "csv";
  std::string out;
};

int run_grid(const GridArgs& args) {
  if (args.n < 3 || args.n > 7) {
    std::cerr << "grid: n must be in 3..7\n";
    return kUsage;
  }
  if (!args.exponents.empty() && args.n != 3) {
    std::cerr << "grid: --exponents only applies to n = 3\n";
    return kUsage;
  }
  const auto res = vdm::cli::parse_resolution(args.res);
  std::optional<std::vector<double>> exps;
  if (!args.exponents.empty()) exps = vdm::cli::parse_list(args.exponents);
  const auto grid = vdm::grid_eval(static_cast<std::size_t>(args.n), res.theta_count, res.phi_count, exps);

  const std::string out = args.out.empty() ? ("grid." + args.format) : args.out;
  emit(out, [&](std::ostream& os) {
    if (args.format == "json")
      vdm::io::write_grid_json(os, grid);
    else
      vdm::io::write_grid_csv(os, grid);
  });

  const auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
  auto where = [&](auto it) {
    const auto idx = static_cast<std::size_t>(it - grid.values.begin());
    return "theta=" + short_fmt(grid.theta(idx % grid.theta_count)) +
           " phi=" + short_fmt(grid.phi(idx / grid.theta_count));
  };
  std::cout << "transform: " << grid.transform_label << "\n";
  std::cout << "max: " << fmt(*hi) << " at " << where(hi) << "\n";
  std::cout << "min: " << fmt(*lo) << " at " << where(lo) << "\n";

  if (exps) {
    // Classify each sign-change edge by the plane it sits on.
    const double band = 4.0 * std::numbers::pi / static_cast<double>(std::min(res.theta_count, 2 * res.phi_count));
    std::size_t plus_one = 0, minus_one = 0, zero_sum = 0, node_planes = 0, other = 0;
    for (const auto& z : vdm::zero_crossings(grid)) {
      const double s = z.x[0] + z.x[1] + z.x[2];
      const double gap = std::min({std::abs(z.x[0] - z.x[1]), std::abs(z.x[0] - z.x[2]), std::abs(z.x[1] - z.x[2])});
      if (gap < band)
        ++node_planes;
      else if (std::abs(s - 1.0) < band)
        ++plus_one;
      else if (std::abs(s + 1.0) < band)
        ++minus_one;
      else if (std::abs(s) < band)
        ++zero_sum;
      else
        ++other;
    }
    std::cout << "zero crossings on x_i = x_j planes: " << node_planes << "\n";
    std::cout << "zero crossings near sum(x) = +1: " << plus_one << "\n";
    std::cout << "zero crossings near sum(x) = -1: " << minus_one << "\n";
    std::cout << "zero crossings near sum(x) = 0: " << zero_sum << "\n";
    std::cout << "other zero crossings: " << other << "\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- limits

struct LimitsArgs {
  std::string nodes;
  std::string exponents;
  int k = 40;
  int K = 30;
  std::string t;
  double branch = 0.0;
  std::string out;
};

std::string default_out(const std::string& name, const std::string& given) {
  return given.empty() ? ("limits_" + name + ".csv") : given;
}

int run_factorize(const LimitsArgs& args) {
  const auto x = to_complex(vdm::cli::parse_list(args.nodes));
  const auto a = to_complex(vdm::cli::parse_list(args.exponents));
  if (args.k < 1) {
    std::cerr << "limits factorize: --k must be at least 1\n";
    return kUsage;
  }
  const vdm::LogBranch branch{args.branch};
  const auto reference = vdm::build_generalized(std::span<const vdm::Complex>(x), std::span<const vdm::Complex>(a), branch);
  double ref_norm = 0.0;
  for (const auto& v : reference.data()) ref_norm = std::max(ref_norm, std::abs(v));

  std::vector<vdm::io::ConvergenceRow> rows;
  for (int k = 1; k <= args.k; ++k) {
    const auto approx = vdm::truncated_factorization(x, a, static_cast<std::size_t>(k), branch);
    double err = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < approx.rows(); ++i)
      for (std::size_t j = 0; j < approx.cols(); ++j) {
        err = std::max(err, std::abs(approx(i, j) - reference(i, j)));
        norm = std::max(norm, std::abs(approx(i, j)));
      }
    rows.push_back({static_cast<double>(k), norm, ref_norm, err});
  }
  emit(default_out("factorize", args.out), [&](std::ostream& os) { vdm::io::write_convergence_csv(os, "k", rows); });
  const double final_error = rows.back().abs_error;
  std::cout << "final max entry error at k=" << args.k << ": " << fmt(final_error) << "\n";
  return final_error < 1e-10 ? kOk : kNumerical;
}

int run_minors(const LimitsArgs& args) {
  const auto x = to_complex(vdm::cli::parse_list(args.nodes));
  const auto a = to_complex(vdm::cli::parse_list(args.exponents));
  if (args.K < static_cast<int>(x.size())) {
    std::cerr << "limits minors: --K must be at least the number of nodes\n";
    return kUsage;
  }
  const vdm::LogBranch branch{args.branch};
  const auto partial = vdm::minor_series_gn(x, a, static_cast<std::size_t>(args.K), branch);
  const auto direct =
      vdm::det_general(vdm::build_generalized(std::span<const vdm::Complex>(x), std::span<const vdm::Complex>(a), branch));
  std::vector<vdm::io::ConvergenceRow> rows;
  for (std::size_t i = 0; i < partial.size(); ++i)
    rows.push_back({static_cast<double>(x.size() + i), partial[i].real(), direct.real(), std::abs(partial[i] - direct)});
  emit(default_out("minors", args.out), [&](std::ostream& os) { vdm::io::write_convergence_csv(os, "k", rows); });
  const double final_error = rows.back().abs_error;
  std::cout << "direct determinant: " << fmt(direct.real()) << "\n";
  std::cout << "final partial sum at K=" << args.K << ": " << fmt(partial.back().real()) << "\n";
  std::cout << "final error: " << fmt(final_error) << "\n";
  return final_error < 1e-8 * std::max(1.0, std::abs(direct)) ? kOk : kNumerical;
}

int run_ratio(const LimitsArgs& args) {
  const auto x = to_complex(vdm::cli::parse_list(args.nodes));
  const auto a = to_complex(vdm::cli::parse_list(args.exponents));
  const auto schedule = args.t.empty() ? vdm::default_t_schedule() : vdm::cli::parse_list(args.t);
  const vdm::LogBranch branch{args.branch};
  const auto result = vdm::ratio_limit(x, a, schedule, branch);

  std::vector<vdm::io::ConvergenceRow> rows;
  for (const auto& p : result.points) rows.push_back({p.t, p.ratio.real(), result.rhs.real(), p.abs_error});
  emit(default_out("ratio", args.out), [&](std::ostream& os) { vdm::io::write_convergence_csv(os, "t", rows); });

  const double rel = result.points.back().abs_error / std::abs(result.rhs);
  // observed order over the last ten steps of the schedule
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t m = result.points.size();
  for (std::size_t i = (m > 11 ? m - 11 : 0); i + 1 < m; ++i) {
    const auto& p = result.points[i];
    const auto& q = result.points[i + 1];
    const double order = std::log(p.abs_error / q.abs_error) / std::log(p.t / q.t);
    lo = std::min(lo, order);
    hi = std::max(hi, order);
  }
  const bool first_order = m >= 2 && lo >= std::log2(1.5) && hi <= std::log2(2.5);
  std::cout << "limit: " << fmt(result.rhs.real());
  if (result.rhs.imag() != 0.0) std::cout << " + " << fmt(result.rhs.imag()) << "i";
  std::cout << "\nfinal ratio: " << fmt(result.points.back().ratio.real()) << "\n";
  std::cout << "final relative error: " << fmt(rel) << "\n";
  std::cout << "observed order range: [" << short_fmt(lo) << ", " << short_fmt(hi) << "]\n";
  std::cout << "first-order convergence " << (first_order ? "confirmed" : "NOT confirmed") << "\n";
  return rel < 1e-4 && first_order ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme points of the Vandermonde determinant on the sphere, and generalized Vandermonde limits"};
  app.require_subcommand(1);

  ExtremaArgs ex;
  auto* extrema = app.add_subcommand("extrema", "Certified extreme points from rescaled Hermite roots");
  extrema->add_option("n", ex.n, "Dimension (2..50)")->required();
  extrema->add_option("--format", ex.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  extrema->add_option("--out", ex.out, "Output file (default stdout)");

  OptimizeArgs op;
  auto* optimize = app.add_subcommand("optimize", "Projected gradient ascent of |v_n| on the unit sphere");
  optimize->add_option("n", op.n, "Dimension")->required();
  optimize->add_option("--seed", op.seed, "Base RNG seed; restart r uses seed + r");
  optimize->add_option("--restarts", op.restarts, "Number of restarts");
  optimize->add_option("--out", op.out, "Directory for per-restart trace CSVs");

  GridArgs gr;
  auto* grid = app.add_subcommand("grid", "Evaluate the determinant over a spherical lattice");
  grid->add_option("n", gr.n, "Dimension (3..7)")->required();
  grid->add_option("--res", gr.res, "Resolution THETAxPHI");
  grid->add_option("--exponents", gr.exponents, "Integer exponents for g_3, e.g. 0,2,3");
  grid->add_option("--format", gr.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  grid->add_option("--out", gr.out, "Output file (default grid.csv or grid.json)");

  LimitsArgs li;
  auto* limits = app.add_subcommand("limits", "Generalized Vandermonde limit theorems");
  limits->require_subcommand(1);
  auto add_common = [&li](CLI::App* sub) {
    sub->add_option("--nodes", li.nodes, "Nonzero nodes, e.g. 1,e or 1/2,3")->required();
    sub->add_option("--exponents", li.exponents, "Exponents")->required();
    sub->add_option("--branch", li.branch, "Centre of the log branch window (default principal)");
    sub->add_option("--out", li.out, "Convergence report CSV");
  };
  auto* factorize = limits->add_subcommand("factorize", "Truncated V^T D V(log x) factorization");
  add_common(factorize);
  factorize->add_option("--k", li.k, "Truncation");
  auto* minors = limits->add_subcommand("minors", "Cauchy-Binet minor series for g_n");
  add_common(minors);
  minors->add_option("--K", li.K, "Truncation");
  auto* ratio = limits->add_subcommand("ratio", "g_n(x, at) / v_n(at) as t -> 0");
  add_common(ratio);
  ratio->add_option("--t", li.t, "Decreasing t schedule (default 1, 1/2, ..., 2^-20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*extrema) return run_extrema(ex);
    if (*optimize) return run_optimize(op);
    if (*grid) return run_grid(gr);
    if (*factorize) return run_factorize(li);
    if (*minors) return run_minors(li);
    if (*ratio) return run_ratio(li);
  } catch (const vdm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsage;
}
