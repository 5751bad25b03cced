#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "vdm/errors.hpp"
#include "vdm/matrix.hpp"

namespace vdm {

/// Node vector x defining the columns of a Vandermonde matrix.
template <typename T>
using NodeVector = std::vector<T>;

/// Exponent vector a defining the rows of a generalized Vandermonde matrix.
template <typename T>
using ExponentVector = std::vector<T>;

/// Fixes the branch of the complex logarithm: the imaginary part of log z
/// lies in (center - pi, center + pi]. center = 0 is the principal branch.
struct LogBranch {
  double center = 0.0;

  [[nodiscard]] Complex log(Complex z) const {
    double arg = std::arg(z);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    while (arg <= center - std::numbers::pi) arg += two_pi;
    while (arg > center + std::numbers::pi) arg -= two_pi;
    return {std::log(std::abs(z)), arg};
  }
};

/// x^k for a non-negative integer k by repeated multiplication; 0^0 = 1.
template <typename T>
[[nodiscard]] constexpr T int_pow(T x, std::size_t k) {
  T result{1};
  T base = x;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

namespace detail {

template <typename T>
[[nodiscard]] bool is_integral_value(T a, long long& out) {
  double re;
  if constexpr (is_complex_v<T>) {
    if (a.imag() != 0.0) return false;
    re = a.real();
  } else {
    re = a;
  }
  if (re != std::floor(re) || std::abs(re) > 1e15) return false;
  out = static_cast<long long>(re);
  return true;
}

}  // namespace detail

/// Single generalized Vandermonde entry x^a under the given log branch.
///
/// Integer exponents bypass the logarithm so that zero nodes are legal for
/// non-negative powers.
template <typename T>
[[nodiscard]] T generalized_power(T x, T a, const LogBranch& branch = {}) {
  long long k = 0;
  if (detail::is_integral_value(a, k)) {
    if (k >= 0) return int_pow(x, static_cast<std::size_t>(k));
    if (x == T{0}) throw Error(ErrorCode::ZeroNode, "zero node raised to a negative power");
    return T{1} / int_pow(x, static_cast<std::size_t>(-k));
  }
  if (x == T{0}) {
    throw Error(ErrorCode::ZeroNodeWithNonIntegerExponent, "zero node with non-integer exponent");
  }
  if constexpr (is_complex_v<T>) {
    return std::exp(a * branch.log(x));
  } else {
    if (x < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "negative node with non-integer exponent needs complex scalars");
    }
    return std::exp(a * std::log(x));
  }
}

/// m x n matrix with entry (i, j) = x_j^i (zero-based rows), 0^0 = 1.
template <typename T>
[[nodiscard]] Matrix<T> build_vandermonde(std::span<const T> x, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "row count must be at least 1");
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty node vector");
  Matrix<T> v(m, x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    T p{1};
    for (std::size_t i = 0; i < m; ++i) {
      v(i, j) = p;
      p *= x[j];
    }
  }
  return v;
}

/// m x n matrix with entry (i, j) = x_j^(a_i) = exp(a_i log x_j).
template <typename T>
[[nodiscard]] Matrix<T> build_generalized(std::span<const T> x, std::span<const T> a,
                                          const LogBranch& branch = {}) {
  if (x.empty() || a.empty()) throw Error(ErrorCode::InvalidArgument, "empty node or exponent vector");
  Matrix<T> g(a.size(), x.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) g(i, j) = generalized_power(x[j], a[i], branch);
  return g;
}

/// Vandermonde determinant by the product of pairwise differences.
template <typename T>
[[nodiscard]] T det_vandermonde(std::span<const T> x) {
  T prod{1};
  for (std::size_t j = 1; j < x.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) prod *= (x[j] - x[i]);
  return prod;
}

namespace detail {

template <typename T>
void require_distinct(std::span<const T> x) {
  for (std::size_t j = 1; j < x.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (x[i] == x[j]) throw Error(ErrorCode::RepeatedNodes, "nodes must be pairwise distinct");
}

}  // namespace detail

/// Gradient of log|v_n|: component k is sum over i != k of 1 / (x_k - x_i).
template <typename T>
[[nodiscard]] std::vector<T> grad_log_vn(std::span<const T> x) {
  detail::require_distinct(x);
  const std::size_t n = x.size();
  std::vector<T> g(n, T{0});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) {
      const T r = T{1} / (x[k] - x[i]);
      g[k] += r;
      g[i] -= r;
    }
  return g;
}

/// Analytic gradient of v_n: dv/dx_k = sum over i != k of v_n / (x_k - x_i).
template <typename T>
[[nodiscard]] std::vector<T> grad_vn(std::span<const T> x) {
  auto g = grad_log_vn(x);
  const T v = det_vandermonde(x);
  for (auto& gk : g) gk *= v;
  return g;
}

/// All elementary symmetric polynomials e_0..e_n of x.
template <typename T>
[[nodiscard]] std::vector<T> elementary_symmetric_all(std::span<const T> x) {
  std::vector<T> e(x.size() + 1, T{0});
  e[0] = T{1};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += x[i] * e[k - 1];
  return e;
}

template <typename T>
[[nodiscard]] T elementary_symmetric(std::span<const T> x, std::size_t k) {
  if (k > x.size()) throw Error(ErrorCode::IndexOutOfRange, "e_k requires k <= n");
  return elementary_symmetric_all(x)[k];
}

}  // namespace vdm
