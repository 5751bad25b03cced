#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vdm/core.hpp"
#include "vdm/errors.hpp"
#include "vdm/matrix.hpp"

namespace vdm {

using Vec3 = std::array<double, 3>;

/// t(theta, phi) = (cos phi sin theta, sin phi, cos phi cos theta).
[[nodiscard]] inline Vec3 spherical_to_t(double theta, double phi) {
  return {std::cos(phi) * std::sin(theta), std::sin(phi), std::cos(phi) * std::cos(theta)};
}

/// Column-orthonormal map from the t-sphere into R^n.
struct EmbeddingTransform {
  std::size_t n = 0;
  Matrix<double> matrix;  // n x 3
  std::string label;
};

/// The t-basis transform used to visualise v_n for n = 3..7.
///
/// n = 3 spans all of R^3; n = 4 spans the hyperplane sum(x) = 0; n = 5..7
/// span the subspaces of +/- symmetric points, plus the (1,...,1) direction
/// for n = 5.
[[nodiscard]] inline EmbeddingTransform embedding_transform(std::size_t n) {
  const double r2 = 1.0 / std::sqrt(2.0);
  EmbeddingTransform tr;
  tr.n = n;
  auto scaled = [](Matrix<double> m, const Vec3& col_scale) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) *= col_scale[j];
    return m;
  };
  switch (n) {
    case 3:
      tr.matrix = scaled({{2, 0, 1}, {-1, 1, 1}, {-1, -1, 1}}, {1.0 / std::sqrt(6.0), r2, 1.0 / std::sqrt(3.0)});
      tr.label = "t3-full";
      break;
    case 4:
      tr.matrix = scaled({{-1, -1, 0}, {-1, 1, 0}, {1, 0, -1}, {1, 0, 1}}, {0.5, r2, r2});
      tr.label = "t4-hyperplane";
      break;
    case 5:
      tr.matrix = scaled({{-1, 0, 1}, {0, -1, 1}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}}, {r2, r2, 1.0 / std::sqrt(5.0)});
      tr.label = "t5-symmetric";
      break;
    case 6:
      tr.matrix = scaled({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}, {r2, r2, r2});
      tr.label = "t6-symmetric";
      break;
    case 7:
      tr.matrix =
          scaled({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}, {r2, r2, r2});
      tr.label = "t7-symmetric";
      break;
    default:
      throw Error(ErrorCode::UnsupportedDimension, "embedding transforms exist for n = 3..7");
  }
  return tr;
}

/// x = matrix * t.
[[nodiscard]] inline std::vector<double> embed(const EmbeddingTransform& tr, const Vec3& t) {
  const double norm = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
  if (std::abs(norm - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "t must be a unit vector");
  std::vector<double> x(tr.n, 0.0);
  for (std::size_t i = 0; i < tr.n; ++i)
    for (std::size_t j = 0; j < 3; ++j) x[i] += tr.matrix(i, j) * t[j];
  return x;
}

/// Determinant values on a (phi, theta) lattice; values are phi-row-major.
struct SphereGrid {
  std::size_t n = 0;
  std::size_t theta_count = 0;
  std::size_t phi_count = 0;
  std::vector<double> values;
  std::string transform_label;
  std::vector<double> exponents;  // empty for the ordinary determinant

  /// theta_j = 2 pi j / theta_count, half-open.
  [[nodiscard]] double theta(std::size_t j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(theta_count);
  }
  /// phi_i = -pi/2 + pi i / (phi_count - 1), both poles included.
  [[nodiscard]] double phi(std::size_t i) const {
    return -0.5 * std::numbers::pi + std::numbers::pi * static_cast<double>(i) / static_cast<double>(phi_count - 1);
  }
  [[nodiscard]] double at(std::size_t phi_index, std::size_t theta_index) const {
    return values[phi_index * theta_count + theta_index];
  }
};

inline constexpr std::size_t kDefaultThetaCount = 720;
inline constexpr std::size_t kDefaultPhiCount = 360;

/// Evaluates v_n, or g_3 for integer exponents when n = 3, over the lattice.
[[nodiscard]] inline SphereGrid grid_eval(std::size_t n, std::size_t theta_count, std::size_t phi_count,
                                          std::optional<std::vector<double>> exponents = std::nullopt) {
  if (n < 3 || n > 7) throw Error(ErrorCode::UnsupportedDimension, "grids exist for n = 3..7");
  if (exponents && n != 3) throw Error(ErrorCode::GeneralizedOnlyFor3D, "generalized grids only for n = 3");
  if (theta_count < 2 || phi_count < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be at least 2x2");
  if (exponents) {
    if (exponents->size() != 3) throw Error(ErrorCode::LengthMismatch, "n = 3 grids take three exponents");
    for (double a : *exponents)
      if (a < 0.0 || a != std::floor(a)) {
        throw Error(ErrorCode::InvalidArgument, "grid exponents must be non-negative integers");
      }
  }
  const auto tr = embedding_transform(n);
  SphereGrid g;
  g.n = n;
  g.theta_count = theta_count;
  g.phi_count = phi_count;
  g.transform_label = tr.label;
  if (exponents) g.exponents = *exponents;
  g.values.resize(theta_count * phi_count);
  for (std::size_t i = 0; i < phi_count; ++i)
    for (std::size_t j = 0; j < theta_count; ++j) {
      const auto x = embed(tr, spherical_to_t(g.theta(j), g.phi(i)));
      const std::span<const double> xs(x);
      g.values[i * theta_count + j] =
          exponents ? det_general(build_generalized(xs, std::span<const double>(*exponents))) : det_vandermonde(xs);
    }
  return g;
}

/// Rotation by theta about (1,1,1)/sqrt(3).
[[nodiscard]] inline Matrix<double> rodrigues_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sqrt(3.0) * std::sin(theta);
  const double d = 2.0 * c + 1.0;
  const double p = 1.0 - c + s;
  const double m = 1.0 - c - s;
  Matrix<double> r{{d, m, p}, {p, d, m}, {m, p, d}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) /= 3.0;
  return r;
}

/// Rotates (-1, 0, 1)/sqrt(2) by theta on the circle sum(x) = 0 and returns
/// the point with v_3 there; v_3 follows cos(3 theta)/sqrt(2).
[[nodiscard]] inline std::pair<std::vector<double>, double> rodrigues_circle(double theta) {
  const auto r = rodrigues_rotation(theta);
  const double h = 1.0 / std::sqrt(2.0);
  const Vec3 x0{-h, 0.0, h};
  std::vector<double> x(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) x[i] += r(i, j) * x0[j];
  const double v = det_vandermonde(std::span<const double>(x));
  return {std::move(x), v};
}

/// A lattice edge whose endpoint values have opposite signs (or touch zero).
struct ZeroCrossing {
  double theta = 0.0;
  double phi = 0.0;
  std::vector<double> x;  // embedded edge midpoint
};

/// Sign changes along theta- and phi-edges of the lattice.
[[nodiscard]] inline std::vector<ZeroCrossing> zero_crossings(const SphereGrid& g) {
  const auto tr = embedding_transform(g.n);
  std::vector<ZeroCrossing> out;
  auto push = [&](double theta, double phi) {
    ZeroCrossing z;
    z.theta = theta;
    z.phi = phi;
    z.x = embed(tr, spherical_to_t(theta, phi));
    out.push_back(std::move(z));
  };
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(g.theta_count);
  for (std::size_t i = 0; i < g.phi_count; ++i)
    for (std::size_t j = 0; j < g.theta_count; ++j) {
      const double v = g.at(i, j);
      const double right = g.at(i, (j + 1) % g.theta_count);
      if (v * right < 0.0 || (v == 0.0) != (right == 0.0)) push(g.theta(j) + 0.5 * dtheta, g.phi(i));
      if (i + 1 < g.phi_count) {
        const double up = g.at(i + 1, j);
        if (v * up < 0.0 || (v == 0.0) != (up == 0.0)) push(g.theta(j), 0.5 * (g.phi(i) + g.phi(i + 1)));
      }
    }
  return out;
}

/// A lattice point where |value| strictly exceeds its eight neighbours.
struct GridExtremum {
  std::size_t phi_index = 0;
  std::size_t theta_index = 0;
  double value = 0.0;
};

/// Strict local maxima of |value| away from the pole rows; theta wraps.
[[nodiscard]] inline std::vector<GridExtremum> grid_local_extrema(const SphereGrid& g) {
  std::vector<GridExtremum> out;
  for (std::size_t i = 1; i + 1 < g.phi_count; ++i)
    for (std::size_t j = 0; j < g.theta_count; ++j) {
      const double v = std::abs(g.at(i, j));
      if (v == 0.0) continue;
      bool strict = true;
      for (int di = -1; di <= 1 && strict; ++di)
        for (int dj = -1; dj <= 1 && strict; ++dj) {
          if (di == 0 && dj == 0) continue;
          const std::size_t ii = static_cast<std::size_t>(static_cast<long>(i) + di);
          const std::size_t jj =
              static_cast<std::size_t>(static_cast<long>(j + g.theta_count) + dj) % g.theta_count;
          if (std::abs(g.at(ii, jj)) >= v) strict = false;
        }
      if (strict) out.push_back({i, j, g.at(i, j)});
    }
  return out;
}

/// Maximises |v_n(embed(t))| over the t-sphere starting from t0 by projected
/// gradient ascent on log|v_n|; returns the optimal t.
[[nodiscard]] inline Vec3 refine_on_slice(const EmbeddingTransform& tr, Vec3 t, std::size_t max_iters = 20000,
                                          double tol = 1e-10) {
  auto value = [&](const Vec3& tt) { return std::abs(det_vandermonde(std::span<const double>(embed(tr, tt)))); };
  auto normalise = [](Vec3& v) {
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& c : v) c /= r;
  };
  double h = 0.05;
  double current = value(t);
  for (std::size_t it = 0; it < max_iters; ++it) {
    const auto x = embed(tr, t);
    const auto gx = grad_log_vn(std::span<const double>(x));
    Vec3 gt{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < tr.n; ++i)
      for (std::size_t j = 0; j < 3; ++j) gt[j] += tr.matrix(i, j) * gx[i];
    const double radial = gt[0] * t[0] + gt[1] * t[1] + gt[2] * t[2];
    for (std::size_t j = 0; j < 3; ++j) gt[j] -= radial * t[j];
    if (std::sqrt(gt[0] * gt[0] + gt[1] * gt[1] + gt[2] * gt[2]) < tol) break;
    bool accepted = false;
    while (h > 1e-300) {
      Vec3 y{t[0] + h * gt[0], t[1] + h * gt[1], t[2] + h * gt[2]};
      normalise(y);
      const double vy = value(y);
      if (vy > current) {
        t = y;
        current = vy;
        h *= 2.0;
        accepted = true;
        break;
      }
      h *= 0.5;
    }
    if (!accepted) break;
  }
  return t;
}

}  // namespace vdm
