#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "vdm/hermite.hpp"
#include "vdm/limits.hpp"
#include "vdm/optimizer.hpp"
#include "vdm/sphere_viz.hpp"

namespace vdm::io {

/// "%.17g" rendering; every emitted number goes through here.
[[nodiscard]] inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // no "-0"
  return buf;
}

namespace detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string array(std::span<const double> v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out + "]";
}

}  // namespace detail

/// {"n", "roots", "extreme_value", "log10_extreme_value", "residuals"}
inline void write_extrema_json(std::ostream& os, const ExtremePointSet& e) {
  os << "{\"n\":" << e.n << ",\"roots\":" << detail::array(e.roots) << ",\"extreme_value\":" << fmt(e.extreme_value)
     << ",\"log10_extreme_value\":" << fmt(e.log10_extreme_value) << ",\"residuals\":{";
  bool first = true;
  for (const auto& [name, value] : e.residuals) {
    if (!first) os << ",";
    first = false;
    os << detail::quote(name) << ":" << fmt(value);
  }
  os << "}}";
}

/// CSV header theta,phi,value; rows ordered by phi row then theta column.
inline void write_grid_csv(std::ostream& os, const SphereGrid& g) {
  os << "theta,phi,value\n";
  for (std::size_t i = 0; i < g.phi_count; ++i)
    for (std::size_t j = 0; j < g.theta_count; ++j)
      os << fmt(g.theta(j)) << ',' << fmt(g.phi(i)) << ',' << fmt(g.at(i, j)) << '\n';
}

inline void write_grid_json(std::ostream& os, const SphereGrid& g) {
  os << "{\"n\":" << g.n << ",\"transform_label\":" << detail::quote(g.transform_label)
     << ",\"exponents\":" << detail::array(g.exponents) << ",\"theta_count\":" << g.theta_count
     << ",\"phi_count\":" << g.phi_count << ",\"values\":" << detail::array(g.values) << "}\n";
}

/// iteration,v_n,gradient_norm
inline void write_trace_csv(std::ostream& os, const OptimizationTrace& t) {
  os << "iteration,v_n,gradient_norm\n";
  for (std::size_t i = 0; i < t.iterates.size(); ++i)
    os << i << ',' << fmt(t.iterates[i].value) << ',' << fmt(t.iterates[i].grad_norm) << '\n';
}

struct ConvergenceRow {
  double index = 0.0;  // k or t
  double approximation = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
};

/// Convergence report with the first column named after the driving parameter.
inline void write_convergence_csv(std::ostream& os, const std::string& index_name,
                                  std::span<const ConvergenceRow> rows) {
  os << index_name << ",approximation,reference,abs_error\n";
  for (const auto& r : rows)
    os << fmt(r.index) << ',' << fmt(r.approximation) << ',' << fmt(r.reference) << ',' << fmt(r.abs_error) << '\n';
}

}  // namespace vdm::io
