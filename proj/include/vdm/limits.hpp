#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vdm/core.hpp"
#include "vdm/errors.hpp"
#include "vdm/matrix.hpp"

namespace vdm {

/// Diagonal of D_k: 1/0!, 1/1!, ..., 1/(k-1)!.
struct FactorialDiagonal {
  std::vector<double> entries;

  explicit FactorialDiagonal(std::size_t k) : entries(k) {
    double fact = 1.0;  // exact through 22!
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0) fact *= static_cast<double>(i);
      entries[i] = 1.0 / fact;
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return entries[i]; }

  template <typename T>
  [[nodiscard]] Matrix<T> as_matrix() const {
    Matrix<T> d(size(), size());
    for (std::size_t i = 0; i < size(); ++i) d(i, i) = T{entries[i]};
    return d;
  }
};

/// Strictly increasing one-based indices p_1 < ... < p_n.
struct IndexCombination {
  std::vector<std::size_t> entries;

  [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }

  /// Checks strict monotonicity and 1 <= p_j <= bound.
  void validate(std::size_t bound) const {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (entries[j] < 1 || entries[j] > bound) {
        throw Error(ErrorCode::IndexOutOfRange, "combination entry outside [1, bound]");
      }
      if (j > 0 && entries[j] <= entries[j - 1]) {
        throw Error(ErrorCode::IndexOutOfRange, "combination not strictly increasing");
      }
    }
  }

  [[nodiscard]] static IndexCombination leading(std::size_t n) {
    IndexCombination c;
    c.entries.resize(n);
    for (std::size_t j = 0; j < n; ++j) c.entries[j] = j + 1;
    return c;
  }
};

/// E(q) = sum_j (q_j - 1), the power of t carried by the minor at columns q.
[[nodiscard]] inline std::size_t exponent_sum(const IndexCombination& q) {
  std::size_t e = 0;
  for (auto p : q.entries) e += p - 1;
  return e;
}

/// Combinations with n entries from [1, k] whose last entry is k (the set
/// Q_kn), in lexicographic order.
[[nodiscard]] inline std::vector<IndexCombination> combinations_ending_at(std::size_t k, std::size_t n) {
  std::vector<IndexCombination> out;
  if (n == 0 || n > k) return out;
  std::vector<std::size_t> head(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) head[j] = j + 1;
  for (;;) {
    IndexCombination c;
    c.entries = head;
    c.entries.push_back(k);
    out.push_back(std::move(c));
    // advance head over (n-1)-subsets of [1, k-1]
    std::size_t j = head.size();
    while (j > 0 && head[j - 1] == (k - 1) - (head.size() - j)) --j;
    if (j == 0) break;
    ++head[j - 1];
    for (std::size_t l = j; l < head.size(); ++l) head[l] = head[l - 1] + 1;
  }
  return out;
}

/// Determinant of the submatrix picked by one-based row and column combinations.
template <typename T>
[[nodiscard]] T minor(const Matrix<T>& m, const IndexCombination& rows, const IndexCombination& cols) {
  if (rows.size() != cols.size()) throw Error(ErrorCode::LengthMismatch, "row and column combinations differ in length");
  rows.validate(m.rows());
  cols.validate(m.cols());
  Matrix<T> sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows.entries[i] - 1, cols.entries[j] - 1);
  return det_general(std::move(sub));
}

namespace detail {

inline std::vector<Complex> logs_of(std::span<const Complex> x, const LogBranch& branch) {
  std::vector<Complex> out;
  out.reserve(x.size());
  for (const auto& xj : x) {
    if (xj == Complex{0.0}) throw Error(ErrorCode::ZeroNode, "log-based constructions need nonzero nodes");
    out.push_back(branch.log(xj));
  }
  return out;
}

}  // namespace detail

/// V_km(a)^T D_k V_kn(log x): entry (i, j) is the k-term Taylor partial sum
/// of exp(a_i log x_j).
[[nodiscard]] inline Matrix<Complex> truncated_factorization(std::span<const Complex> x,
                                                            std::span<const Complex> a, std::size_t k,
                                                            const LogBranch& branch = {}) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "truncation k must be at least 1");
  if (a.size() != x.size()) throw Error(ErrorCode::LengthMismatch, "factorization needs as many exponents as nodes");
  const auto logs = detail::logs_of(x, branch);
  const auto va = build_vandermonde(a, k);
  const auto vl = build_vandermonde(std::span<const Complex>(logs), k);
  return va.transpose() * FactorialDiagonal(k).as_matrix<Complex>() * vl;
}

/// Tail sum_{l >= k} |z|^l / l!, the entrywise truncation error bound.
[[nodiscard]] inline double exponential_tail_bound(double abs_z, std::size_t k) {
  double term = 1.0;
  for (std::size_t l = 1; l <= k; ++l) term *= abs_z / static_cast<double>(l);
  double sum = 0.0;
  for (std::size_t l = k; l < k + 1000; ++l) {
    sum += term;
    if (term <= 1e-18 * sum) break;
    term *= abs_z / static_cast<double>(l + 1);
  }
  return sum;
}

inline constexpr std::size_t kMinorSeriesMaxDimension = 4;

/// Partial sums, for k = n..K, of the Cauchy-Binet expansion
///   sum_k sum_{q in Q_kn} V_kn(a)^T[i_n|q] * D_k[q|q] * V_kn(log x)[q|i_n],
/// which converges to g_n(x, a). Terms are visited in lexicographic order of q.
[[nodiscard]] inline std::vector<Complex> minor_series_gn(std::span<const Complex> x,
                                                         std::span<const Complex> a, std::size_t K,
                                                         const LogBranch& branch = {}) {
  const std::size_t n = x.size();
  if (a.size() != n) throw Error(ErrorCode::LengthMismatch, "minor series needs as many exponents as nodes");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty node vector");
  if (n > kMinorSeriesMaxDimension) throw Error(ErrorCode::DimensionGuard, "minor series limited to n <= 4");
  if (K < n) throw Error(ErrorCode::InvalidArgument, "truncation K must be at least n");
  const auto logs = detail::logs_of(x, branch);
  const auto va_t = build_vandermonde(a, K).transpose();                  // n x K
  const auto vl = build_vandermonde(std::span<const Complex>(logs), K);  // K x n
  const FactorialDiagonal d(K);
  const auto all = IndexCombination::leading(n);

  std::vector<Complex> partial;
  partial.reserve(K - n + 1);
  Complex sum{0.0};
  for (std::size_t k = n; k <= K; ++k) {
    for (const auto& q : combinations_ending_at(k, n)) {
      double dq = 1.0;
      for (auto p : q.entries) dq *= d[p - 1];
      sum += minor(va_t, all, q) * dq * minor(vl, q, all);
    }
    partial.push_back(sum);
  }
  return partial;
}

/// (prod_k 1/(k-1)!) * prod_{i<j} (log x_j - log x_i), the t -> 0 limit of
/// g_n(x, a t) / v_n(a t).
[[nodiscard]] inline Complex ratio_limit_rhs(std::span<const Complex> x, const LogBranch& branch = {}) {
  const auto logs = detail::logs_of(x, branch);
  const FactorialDiagonal d(x.size());
  Complex c{1.0};
  for (double di : d.entries) c *= di;
  return c * det_vandermonde(std::span<const Complex>(logs));
}

namespace detail {

// g_n(x, s) / v_n(s) as det[ f_j[s_1..s_i] ], f_j(s) = exp(s L_j), each divided
// difference summed from the Taylor series through complete homogeneous
// symmetric polynomials: x^m[s_1..s_i] = h_{m-i+1}(s_1..s_i).
inline Complex divided_difference_ratio(std::span<const Complex> logs, std::span<const Complex> s) {
  const std::size_t n = logs.size();
  constexpr std::size_t kTerms = 160;
  // h[i][p] = h_p(s_1..s_{i+1})
  std::vector<std::vector<Complex>> h(n, std::vector<Complex>(kTerms, Complex{0.0}));
  for (std::size_t i = 0; i < n; ++i) {
    h[i][0] = 1.0;
    for (std::size_t p = 1; p < kTerms; ++p) {
      const Complex below = i > 0 ? h[i - 1][p] : Complex{0.0};
      h[i][p] = below + s[i] * h[i][p - 1];
    }
  }
  Matrix<Complex> e(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    // c_m = L^m / m!
    std::vector<Complex> c(kTerms + n);
    c[0] = 1.0;
    for (std::size_t m = 1; m < c.size(); ++m) c[m] = c[m - 1] * logs[j] / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc{0.0};
      for (std::size_t p = 0; p < kTerms; ++p) acc += c[p + i] * h[i][p];
      e(i, j) = acc;
    }
  }
  return det_general(std::move(e));
}

}  // namespace detail

/// Beyond this value of max|a_i t| * max|log x_j| the divided-difference
/// series is replaced by elimination on the generalized matrix.
inline constexpr double kRatioSeriesCrossover = 8.0;

struct RatioPoint {
  double t = 0.0;
  Complex ratio;
  double abs_error = 0.0;
  bool elimination = false;  // crossover flag: true when computed by elimination
};

struct RatioLimitResult {
  std::vector<RatioPoint> points;
  Complex rhs;
};

/// g_n(x, a t) / v_n(a t), stable as t -> 0.
[[nodiscard]] inline RatioPoint generalized_ratio(std::span<const Complex> x, std::span<const Complex> a, double t,
                                                  const LogBranch& branch = {}) {
  const std::size_t n = x.size();
  if (a.size() != n) throw Error(ErrorCode::LengthMismatch, "ratio needs as many exponents as nodes");
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "ratio limit needs n >= 2");
  if (det_vandermonde(a) == Complex{0.0}) throw Error(ErrorCode::DegenerateExponents, "v_n(a) vanishes");
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
  const auto logs = detail::logs_of(x, branch);
  std::vector<Complex> s(n);
  double smax = 0.0;
  double lmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = a[i] * t;
    smax = std::max(smax, std::abs(s[i]));
    lmax = std::max(lmax, std::abs(logs[i]));
  }
  RatioPoint p;
  p.t = t;
  if (smax * lmax <= kRatioSeriesCrossover && lmax <= 40.0) {
    p.ratio = detail::divided_difference_ratio(logs, s);
  } else {
    p.elimination = true;
    p.ratio = det_general(build_generalized(x, std::span<const Complex>(s), branch)) /
              det_vandermonde(std::span<const Complex>(s));
  }
  return p;
}

/// Ratios along a decreasing t schedule together with the analytic limit.
[[nodiscard]] inline RatioLimitResult ratio_limit(std::span<const Complex> x, std::span<const Complex> a,
                                                  std::span<const double> t_schedule,
                                                  const LogBranch& branch = {}) {
  for (std::size_t i = 1; i < t_schedule.size(); ++i)
    if (!(t_schedule[i] < t_schedule[i - 1])) throw Error(ErrorCode::InvalidArgument, "t schedule must decrease");
  RatioLimitResult r;
  r.rhs = ratio_limit_rhs(x, branch);
  for (double t : t_schedule) {
    auto p = generalized_ratio(x, a, t, branch);
    p.abs_error = std::abs(p.ratio - r.rhs);
    r.points.push_back(p);
  }
  return r;
}

/// 1, 1/2, 1/4, ..., 2^-20.
[[nodiscard]] inline std::vector<double> default_t_schedule() {
  std::vector<double> t(21);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::ldexp(1.0, -static_cast<int>(i));
  return t;
}

}  // namespace vdm
