#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "vdm/core.hpp"
#include "vdm/errors.hpp"

namespace vdm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxExtremaDimension = 50;

/// Certification tolerances for ExtremePointSet residuals.
struct ExtremaTolerances {
  double algebraic = 1e-10;     // sum, sum of squares, +/- symmetry
  double stationarity = 1e-8;   // Lagrange condition, scale-free form
  double reciprocal = 1e-10;    // reciprocal-square identity, relative
  double hermite_sum = 1e-8;    // sum of squared unscaled Hermite roots
};

/// Monic polynomial in the monomial basis, coeffs[k] multiplies x^k.
struct MonicPolynomial {
  std::vector<double> coeffs;

  [[nodiscard]] std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  [[nodiscard]] double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

/// Exact coefficients of the physicists' Hermite polynomial H_n, index = power.
[[nodiscard]] inline std::vector<BigInt> hermite_coeffs_exact(std::size_t n) {
  std::vector<BigInt> c(n + 1, 0);
  // c_{n-2i} = n! (-1)^i 2^{n-2i} / (i! (n-2i)!)
  BigInt n_fact = 1;
  for (std::size_t j = 2; j <= n; ++j) n_fact *= j;
  for (std::size_t i = 0; 2 * i <= n; ++i) {
    const std::size_t p = n - 2 * i;
    BigInt denom = 1;
    for (std::size_t j = 2; j <= i; ++j) denom *= j;
    for (std::size_t j = 2; j <= p; ++j) denom *= j;
    BigInt term = (n_fact / denom) << p;
    c[p] = (i % 2 == 0) ? term : BigInt(-term);
  }
  return c;
}

[[nodiscard]] inline std::vector<double> hermite_coeffs(std::size_t n) {
  const auto exact = hermite_coeffs_exact(n);
  std::vector<double> c;
  c.reserve(exact.size());
  for (const auto& v : exact) c.push_back(v.convert_to<double>());
  return c;
}

/// Exact coefficients of P_n(x) = (2n(n-1))^{-n/2} H_n(sqrt(n(n-1)/2) x).
///
/// Only even shifts from the leading term survive, so the irrational scale
/// enters as powers of n(n-1)/2 and every coefficient is rational.
[[nodiscard]] inline std::vector<Rational> pn_exact(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "P_n requires n >= 2");
  const auto h = hermite_coeffs_exact(n);
  const BigInt twice_scale_sq = BigInt(n) * (n - 1);  // 2 s^2 with s^2 = n(n-1)/2
  std::vector<Rational> a(n + 1, Rational(0));
  Rational scale = Rational(1) / Rational(h[n]);
  for (std::size_t i = 0; 2 * i <= n; ++i) {
    const std::size_t p = n - 2 * i;
    a[p] = Rational(h[p]) * scale;
    // moving two powers down divides by s^2
    scale *= Rational(BigInt(2), twice_scale_sq);
  }
  return a;
}

[[nodiscard]] inline MonicPolynomial pn_from_hermite(std::size_t n) {
  const auto exact = pn_exact(n);
  MonicPolynomial p;
  p.coeffs.reserve(exact.size());
  for (const auto& r : exact) p.coeffs.push_back(r.convert_to<double>());
  return p;
}

/// P_n from the downward coefficient recursion
///   a_k = -(k+1)(k+2) / (n(n-1)(n-k)) * a_{k+2},
/// seeded with a_n = 1, a_{n-1} = 0, a_{n-2} = -1/2.
[[nodiscard]] inline MonicPolynomial pn_recursive(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "P_n requires n >= 2");
  MonicPolynomial p;
  p.coeffs.assign(n + 1, 0.0);
  p.coeffs[n] = 1.0;
  p.coeffs[n - 2] = -0.5;
  const double nn = static_cast<double>(n) * static_cast<double>(n - 1);
  for (std::size_t k = n - 2; k-- > 0;) {
    const double kk = static_cast<double>(k);
    p.coeffs[k] = -(kk + 1.0) * (kk + 2.0) / (nn * static_cast<double>(n - k)) * p.coeffs[k + 2];
  }
  return p;
}

namespace detail {

// Orthonormal Hermite recurrence (weight omitted); returns {p_n(z), p_{n-1}(z)}.
inline std::pair<double, double> orthonormal_hermite(std::size_t n, double z) {
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / static_cast<double>(k + 1)) * z * cur -
                        std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace detail

/// Roots of H_n as eigenvalues of its symmetric Jacobi matrix, Newton-polished.
[[nodiscard]] inline std::vector<double> hermite_roots(std::size_t n) {
  if (n == 0) return {};
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
  for (std::size_t k = 1; k < n; ++k) sub(static_cast<Eigen::Index>(k - 1)) = std::sqrt(static_cast<double>(k) / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::RootFindingFailure, "tridiagonal eigensolver did not converge");
  }
  std::vector<double> z(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  const double dn = std::sqrt(2.0 * static_cast<double>(n));
  for (auto& zi : z) {
    for (int it = 0; it < 3; ++it) {
      const auto [pn, pn1] = detail::orthonormal_hermite(n, zi);
      if (pn1 == 0.0) break;
      const double step = pn / (dn * pn1);
      zi -= step;
      if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(zi))) break;
    }
  }
  std::sort(z.begin(), z.end());
  return z;
}

/// Coordinates of the extreme points of v_n on the unit sphere.
struct ExtremePointSet {
  std::size_t n = 0;
  std::vector<double> roots;  // ascending
  double extreme_value = 0.0;  // |v_n(roots)|, underflows to 0 past n ~ 26
  double log10_extreme_value = 0.0;
  std::map<std::string, double> residuals;
};

/// sum_{i<j} (x_j - x_i)^{-2}
template <typename T>
[[nodiscard]] double reciprocal_square_sum(std::span<const T> x) {
  detail::require_distinct(x);
  double s = 0.0;
  for (std::size_t j = 1; j < x.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const double d = std::abs(x[j] - x[i]);
      s += 1.0 / (d * d);
    }
  return s;
}

/// Half the square of n(n-1)/2, the value taken by reciprocal_square_sum at extrema.
[[nodiscard]] constexpr double reciprocal_square_target(std::size_t n) {
  const double m = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return 0.5 * m * m;
}

[[nodiscard]] inline ExtremePointSet solve_extrema(std::size_t n, const ExtremaTolerances& tol = {}) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "extreme points need n >= 2");
  if (n > kMaxExtremaDimension) {
    throw Error(ErrorCode::UnsupportedDimension, "extreme points supported for n <= 50");
  }
  const auto z = hermite_roots(n);
  const double m = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double scale = std::sqrt(1.0 / m);

  ExtremePointSet out;
  out.n = n;
  out.roots.resize(n);
  std::transform(z.begin(), z.end(), out.roots.begin(), [scale](double zi) { return zi * scale; });

  auto& res = out.residuals;
  double sum_sq_z = 0.0;
  for (double zi : z) sum_sq_z += zi * zi;
  res["hermite_sum_squares"] = std::abs(sum_sq_z - m);

  // symmetry is measured before it is imposed
  double sym = 0.0;
  for (std::size_t i = 0; i < n; ++i) sym = std::max(sym, std::abs(out.roots[i] + out.roots[n - 1 - i]));
  res["symmetry"] = sym;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double r = 0.5 * (out.roots[n - 1 - i] - out.roots[i]);
    out.roots[i] = -r;
    out.roots[n - 1 - i] = r;
  }
  if (n % 2 == 1) out.roots[n / 2] = 0.0;  // P_n is odd

  const std::span<const double> x(out.roots);
  double s = 0.0;
  double s2 = 0.0;
  for (double xi : x) {
    s += xi;
    s2 += xi * xi;
  }
  res["sum"] = std::abs(s);
  res["sum_squares"] = std::abs(s2 - 1.0);

  const auto glog = grad_log_vn(x);
  const double v = det_vandermonde(x);
  double stat_rel = 0.0;
  double stat_abs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double rk = glog[k] - m * x[k];
    stat_rel += rk * rk;
    stat_abs += (v * rk) * (v * rk);
  }
  res["stationarity"] = std::sqrt(stat_abs);
  res["stationarity_scaled"] = std::sqrt(stat_rel) / std::max(1.0, m);

  const double target = reciprocal_square_target(n);
  res["reciprocal_square"] = std::abs(reciprocal_square_sum(x) - target);

  double log_abs = 0.0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) log_abs += std::log10(x[j] - x[i]);
  out.extreme_value = std::abs(v);
  out.log10_extreme_value = log_abs;

  const bool ok = res["sum"] < tol.algebraic && res["sum_squares"] < tol.algebraic &&
                  res["symmetry"] < tol.algebraic && res["stationarity_scaled"] < tol.stationarity &&
                  res["reciprocal_square"] / target < tol.reciprocal &&
                  res["hermite_sum_squares"] < tol.hermite_sum;
  if (!ok) throw Error(ErrorCode::RootFindingFailure, "certification residual above tolerance");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) throw Error(ErrorCode::RootFindingFailure, "roots not distinct");
  return out;
}

/// One printed closed-form root compared against the certified roots.
struct ClosedFormRoot {
  std::string label;       // e.g. "x64"
  std::string expression;  // the printed formula
  double value = 0.0;
  double nearest_root = 0.0;
  double deviation = 0.0;
  bool flagged = false;
  std::optional<std::string> suggested_expression;
  std::optional<double> suggested_value;
  std::optional<double> suggested_deviation;
};

struct ClosedFormReport {
  std::size_t n = 0;
  double threshold = 1e-8;
  std::vector<ClosedFormRoot> entries;

  [[nodiscard]] std::size_t flagged_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.flagged; }));
  }
};

namespace detail {

struct TrigConstants {
  double k;
  double l;
};

inline TrigConstants trig_constants(double ratio) {
  const double angle = std::atan(std::sqrt(ratio)) / 3.0;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

/// Evaluates the printed radical/trigonometric root formulas for n = 3..7 and
/// reports how far each lies from the nearest certified root. Known misprints
/// carry a suggested replacement; they are reported, never substituted.
[[nodiscard]] inline ClosedFormReport closed_form_roots(std::size_t n, double threshold = 1e-8) {
  if (n < 3 || n > 7) throw Error(ErrorCode::UnsupportedDimension, "closed forms exist for n = 3..7");
  using std::sqrt;
  const double s3 = sqrt(3.0);
  const auto c6 = detail::trig_constants(3.0 / 2.0);
  const auto c7 = detail::trig_constants(5.0 / 2.0);

  ClosedFormReport rep;
  rep.n = n;
  rep.threshold = threshold;
  auto add = [&](std::string label, std::string expr, double value) -> ClosedFormRoot& {
    ClosedFormRoot e;
    e.label = std::move(label);
    e.expression = std::move(expr);
    e.value = value;
    rep.entries.push_back(std::move(e));
    return rep.entries.back();
  };

  switch (n) {
    case 3:
      add("x31", "-1/sqrt(2)", -1.0 / sqrt(2.0));
      add("x32", "0", 0.0);
      add("x33", "1/sqrt(2)", 1.0 / sqrt(2.0));
      break;
    case 4:
      add("x41", "-1/2*sqrt(1+sqrt(2/3))", -0.5 * sqrt(1.0 + sqrt(2.0 / 3.0)));
      add("x42", "-1/2*sqrt(1-sqrt(2/3))", -0.5 * sqrt(1.0 - sqrt(2.0 / 3.0)));
      add("x43", "1/2*sqrt(1-sqrt(2/3))", 0.5 * sqrt(1.0 - sqrt(2.0 / 3.0)));
      add("x44", "1/2*sqrt(1+sqrt(2/3))", 0.5 * sqrt(1.0 + sqrt(2.0 / 3.0)));
      break;
    case 5:
      add("x53", "0", 0.0);
      add("x54", "1/2*sqrt(1-sqrt(2/5))", 0.5 * sqrt(1.0 - sqrt(2.0 / 5.0)));
      add("x55", "1/2*sqrt(1+sqrt(2/5))", 0.5 * sqrt(1.0 + sqrt(2.0 / 5.0)));
      break;
    case 6: {
      const double pre = 1.0 / (2.0 * sqrt(15.0));
      auto& x64 = add("x64", "1/(2 sqrt(15)) sqrt(10 - 2 sqrt(10) (sqrt(3) l6 - k6))",
                      pre * sqrt(10.0 - 2.0 * sqrt(10.0) * (s3 * c6.l - c6.k)));
      x64.suggested_expression = "1/(2 sqrt(15)) sqrt(10 - 2 sqrt(10) (k6 - sqrt(3) l6))";
      x64.suggested_value = pre * sqrt(10.0 - 2.0 * sqrt(10.0) * (c6.k - s3 * c6.l));
      add("x65", "1/(2 sqrt(15)) sqrt(10 - 2 sqrt(10) (sqrt(3) l6 + k6))",
          pre * sqrt(10.0 - 2.0 * sqrt(10.0) * (s3 * c6.l + c6.k)));
      add("x66", "sqrt((2 sqrt(10) k6 + 5) / 30)", sqrt((2.0 * sqrt(10.0) * c6.k + 5.0) / 30.0));
      break;
    }
    case 7: {
      const double pre = 1.0 / (2.0 * sqrt(21.0));
      add("x74", "0", 0.0);
      auto& x75 = add("x75", "1/(2 sqrt(21)) sqrt(14 - 2 sqrt(14) (sqrt(3) l6 - k6))",
                      pre * sqrt(14.0 - 2.0 * sqrt(14.0) * (s3 * c6.l - c6.k)));
      x75.suggested_expression = "1/(2 sqrt(21)) sqrt(14 - 2 sqrt(14) (k7 - sqrt(3) l7))";
      x75.suggested_value = pre * sqrt(14.0 - 2.0 * sqrt(14.0) * (c7.k - s3 * c7.l));
      add("x76", "1/(2 sqrt(21)) sqrt(14 - 2 sqrt(14) (sqrt(3) l7 + k7))",
          pre * sqrt(14.0 - 2.0 * sqrt(14.0) * (s3 * c7.l + c7.k)));
      auto& x77 = add("x77", "sqrt((2 sqrt(14) k7 + 5) / 42)", sqrt((2.0 * sqrt(14.0) * c7.k + 5.0) / 42.0));
      x77.suggested_expression = "sqrt((2 sqrt(14) k7 + 7) / 42)";
      x77.suggested_value = sqrt((2.0 * sqrt(14.0) * c7.k + 7.0) / 42.0);
      break;
    }
    default:
      break;
  }

  const auto certified = solve_extrema(n);
  auto nearest = [&](double v) {
    double best = certified.roots.front();
    for (double r : certified.roots)
      if (std::abs(r - v) < std::abs(best - v)) best = r;
    return best;
  };
  for (auto& e : rep.entries) {
    e.nearest_root = nearest(e.value);
    e.deviation = std::abs(e.value - e.nearest_root);
    e.flagged = e.deviation > threshold;
    if (e.suggested_value) e.suggested_deviation = std::abs(*e.suggested_value - nearest(*e.suggested_value));
    if (!e.flagged) {
      e.suggested_expression.reset();
      e.suggested_value.reset();
      e.suggested_deviation.reset();
    }
  }
  return rep;
}

/// A permutation of the extreme-point coordinates with the sign of v_n there.
struct SignedExtremePoint {
  std::vector<double> point;
  int sign = 1;  // +1 maximum, -1 minimum
};

/// Lazily walks all n! permutations of the sorted roots in lexicographic
/// order of index permutations. The sign equals the permutation parity since
/// v_n is positive at the ascending arrangement.
class ExtremaEnumerator {
 public:
  ExtremaEnumerator(std::vector<double> sorted_roots, std::optional<std::size_t> cap = std::nullopt)
      : roots_(std::move(sorted_roots)), perm_(roots_.size()), cap_(cap) {
    if (!cap_ && roots_.size() > 10) {
      throw Error(ErrorCode::CapExceeded, "enumerating more than 10! points needs an explicit cap");
    }
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  }

  explicit ExtremaEnumerator(const ExtremePointSet& set, std::optional<std::size_t> cap = std::nullopt)
      : ExtremaEnumerator(set.roots, cap) {}

  /// Next point, or nullopt once all n! have been produced. Requesting more
  /// than cap points raises CapExceeded.
  [[nodiscard]] std::optional<SignedExtremePoint> next() {
    if (done_) return std::nullopt;
    if (cap_ && produced_ >= *cap_) throw Error(ErrorCode::CapExceeded, "enumeration cap reached");
    SignedExtremePoint p;
    p.point.resize(roots_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) p.point[i] = roots_[perm_[i]];
    p.sign = parity();
    ++produced_;
    done_ = !std::next_permutation(perm_.begin(), perm_.end());
    return p;
  }

  [[nodiscard]] std::size_t produced() const noexcept { return produced_; }

 private:
  [[nodiscard]] int parity() const {
    int inversions = 0;
    for (std::size_t i = 0; i < perm_.size(); ++i)
      for (std::size_t j = i + 1; j < perm_.size(); ++j)
        if (perm_[i] > perm_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  std::vector<double> roots_;
  std::vector<std::size_t> perm_;
  std::optional<std::size_t> cap_;
  std::size_t produced_ = 0;
  bool done_ = false;
};

}  // namespace vdm
