#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "vdm/core.hpp"
#include "vdm/errors.hpp"
#include "vdm/hermite.hpp"

namespace vdm {

struct OptimizerConfig {
  std::size_t n = 3;
  double step = 0.1;
  std::size_t max_iters = 100000;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t restarts = 8;

  void validate() const {
    if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "optimizer needs n >= 2");
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
  }
};

struct TraceEntry {
  std::vector<double> point;
  double value = 0.0;
  double grad_norm = 0.0;  // Riemannian gradient norm of log|v_n|
};

struct OptimizationTrace {
  std::uint64_t seed = 0;
  std::vector<TraceEntry> iterates;
  bool converged = false;
  std::vector<double> final_point;

  [[nodiscard]] double final_value() const { return iterates.empty() ? 0.0 : iterates.back().value; }
};

namespace detail {

inline double norm2(std::span<const double> x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

inline void normalize(std::vector<double>& x) {
  const double r = norm2(x);
  for (auto& xi : x) xi /= r;
}

inline void remove_mean(std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (auto& xi : x) xi -= mean;
}

inline void require_unit(std::span<const double> x) {
  if (std::abs(norm2(x) - 1.0) > 1e-8) throw Error(ErrorCode::InvalidArgument, "point is not on the unit sphere");
}

inline double min_gap(std::span<const double> x) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < x.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) g = std::min(g, std::abs(x[j] - x[i]));
  return g;
}

// Tangent-space gradient of log|v_n| at a unit vector.
inline std::vector<double> riemannian_log_grad(std::span<const double> x) {
  auto g = grad_log_vn(x);
  const double radial = std::inner_product(g.begin(), g.end(), x.begin(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] -= radial * x[k];
  return g;
}

}  // namespace detail

/// Ambient gradient of v_n projected onto the tangent space of the sphere at x.
[[nodiscard]] inline std::vector<double> riemannian_grad(std::span<const double> x) {
  detail::require_unit(x);
  auto g = grad_vn(x);
  const double radial = std::inner_product(g.begin(), g.end(), x.begin(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] -= radial * x[k];
  return g;
}

/// |sum_{i<j} (x_j - x_i)^{-2} - (1/2)(n(n-1)/2)^2|; zero exactly at the extrema.
[[nodiscard]] inline double equi_residual(std::span<const double> x) {
  return std::abs(reciprocal_square_sum(x) - reciprocal_square_target(x.size()));
}

namespace detail {

inline std::vector<double> random_start(std::size_t n, std::mt19937_64& rng, bool hyperplane) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    std::vector<double> x(n);
    for (auto& xi : x) xi = normal(rng);
    if (hyperplane) remove_mean(x);
    if (norm2(x) == 0.0) continue;
    normalize(x);
    std::sort(x.begin(), x.end());
    if (det_vandermonde(std::span<const double>(x)) != 0.0) return x;
  }
}

inline OptimizationTrace ascend(const OptimizerConfig& cfg, std::uint64_t seed, bool hyperplane) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  OptimizationTrace trace;
  trace.seed = seed;
  std::vector<double> x = random_start(cfg.n, rng, hyperplane);
  const double sign = det_vandermonde(std::span<const double>(x)) > 0.0 ? 1.0 : -1.0;

  auto record = [&](const std::vector<double>& p, double gnorm) {
    trace.iterates.push_back({p, det_vandermonde(std::span<const double>(p)), gnorm});
  };

  double h = cfg.step;
  for (std::size_t it = 0;; ++it) {
    if (min_gap(x) < 1e-13) {
      std::vector<double> kick(cfg.n);
      for (auto& k : kick) k = normal(rng);
      if (hyperplane) remove_mean(kick);
      const double radial = std::inner_product(kick.begin(), kick.end(), x.begin(), 0.0);
      for (std::size_t k = 0; k < cfg.n; ++k) x[k] += 1e-9 * (kick[k] - radial * x[k]);
      normalize(x);
    }
    auto d = riemannian_log_grad(x);
    if (hyperplane) remove_mean(d);
    const double gnorm = norm2(d);
    record(x, gnorm);
    if (gnorm < cfg.tol) {
      trace.converged = true;
      break;
    }
    if (it >= cfg.max_iters) break;

    const double current = sign * trace.iterates.back().value;
    bool accepted = false;
    while (h > 1e-300) {
      std::vector<double> y(cfg.n);
      for (std::size_t k = 0; k < cfg.n; ++k) y[k] = x[k] + h * d[k];
      if (hyperplane) remove_mean(y);
      normalize(y);
      const double candidate = sign * det_vandermonde(std::span<const double>(y));
      bool improves = candidate > current;
      if (!improves && candidate >= current * (1.0 - 8.0 * std::numeric_limits<double>::epsilon())) {
        // flat to rounding: fall back to the gradient norm as the merit
        auto dy = riemannian_log_grad(y);
        if (hyperplane) remove_mean(dy);
        improves = norm2(dy) < gnorm;
      }
      if (improves) {
        x = std::move(y);
        accepted = true;
        h *= 2.0;
        break;
      }
      h *= 0.5;
    }
    if (!accepted) {
      // no representable step improves the objective: we sit on the optimum
      // up to rounding, so the gradient test decides convergence
      trace.converged = gnorm < std::max(cfg.tol, 1e3 * std::numeric_limits<double>::epsilon());
      break;
    }
  }
  trace.final_point = x;
  return trace;
}

inline OptimizationTrace best_of(std::vector<OptimizationTrace> traces) {
  auto better = [](const OptimizationTrace& a, const OptimizationTrace& b) {
    const double va = std::abs(a.final_value());
    const double vb = std::abs(b.final_value());
    if (va != vb) return va > vb;
    return a.seed < b.seed;
  };
  return *std::min_element(traces.begin(), traces.end(), better);
}

}  // namespace detail

/// Runs every restart of projected gradient ascent on |v_n| over the sphere.
/// Restart r uses seed cfg.seed + r; each run is independent and deterministic.
[[nodiscard]] inline std::vector<OptimizationTrace> maximize_vn_all(const OptimizerConfig& cfg,
                                                                    bool hyperplane = false) {
  cfg.validate();
  std::vector<OptimizationTrace> traces;
  traces.reserve(cfg.restarts);
  for (std::size_t r = 0; r < cfg.restarts; ++r) traces.push_back(detail::ascend(cfg, cfg.seed + r, hyperplane));
  return traces;
}

/// Best restart of the sphere ascent; ties go to the lower seed.
[[nodiscard]] inline OptimizationTrace maximize_vn(const OptimizerConfig& cfg) {
  return detail::best_of(maximize_vn_all(cfg, false));
}

/// Same ascent with iterates also projected onto the hyperplane sum(x) = 0.
[[nodiscard]] inline OptimizationTrace hyperplane_restricted_maximize(const OptimizerConfig& cfg) {
  return detail::best_of(maximize_vn_all(cfg, true));
}

}  // namespace vdm
