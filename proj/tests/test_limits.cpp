#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "vdm/limits.hpp"

namespace {

using vdm::Complex;
using vdm::IndexCombination;
using vdm::Matrix;

std::vector<Complex> cvec(std::initializer_list<double> v) { return {v.begin(), v.end()}; }

Complex direct_gn(const std::vector<Complex>& x, const std::vector<Complex>& a) {
  return vdm::det_general(vdm::build_generalized(std::span<const Complex>(x), std::span<const Complex>(a)));
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

TEST(FactorialDiagonal, Entries) {
  const vdm::FactorialDiagonal d(6);
  const std::vector<double> want{1.0, 1.0, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(d[i], want[i]);
  const auto m = d.as_matrix<double>();
  EXPECT_EQ(m(2, 2), 0.5);
  EXPECT_EQ(m(2, 3), 0.0);
}

TEST(Combinations, EndingAtK) {
  const auto q = vdm::combinations_ending_at(5, 3);
  ASSERT_EQ(q.size(), 6u);
  const std::vector<std::vector<std::size_t>> want{{1, 2, 5}, {1, 3, 5}, {1, 4, 5}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5}};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(q[i].entries, want[i]);
  EXPECT_EQ(vdm::exponent_sum(q[0]), 0u + 1u + 4u);
  for (std::size_t k = 1; k <= 9; ++k)
    for (std::size_t n = 1; n <= k; ++n) EXPECT_EQ(static_cast<double>(vdm::combinations_ending_at(k, n).size()), binomial(k - 1, n - 1));
  EXPECT_TRUE(vdm::combinations_ending_at(2, 3).empty());
  EXPECT_EQ(vdm::combinations_ending_at(1, 1).size(), 1u);
}

TEST(Combinations, Validation) {
  IndexCombination bad{{1, 3, 3}};
  EXPECT_THROW(bad.validate(5), vdm::Error);
  IndexCombination out_of_range{{0, 2}};
  EXPECT_THROW(out_of_range.validate(5), vdm::Error);
  IndexCombination big{{2, 6}};
  EXPECT_THROW(big.validate(5), vdm::Error);
  IndexCombination{{1, 4, 5}}.validate(5);
}

TEST(Minor, HandComputed) {
  const Matrix<double> m{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}};
  EXPECT_NEAR(vdm::minor(m, IndexCombination{{1, 2}}, IndexCombination{{1, 2}}), -3.0, 1e-14);
  EXPECT_NEAR(vdm::minor(m, IndexCombination{{2, 3}}, IndexCombination{{1, 3}}), 40.0 - 42.0, 1e-14);
  EXPECT_NEAR(vdm::minor(m, IndexCombination{{3}}, IndexCombination{{2}}), 8.0, 0.0);
  EXPECT_THROW((void)vdm::minor(m, IndexCombination{{1}}, IndexCombination{{1, 2}}), vdm::Error);
  EXPECT_THROW((void)vdm::minor(m, IndexCombination{{1, 4}}, IndexCombination{{1, 2}}), vdm::Error);
}

TEST(Minor, CauchyBinetTwoByThree) {
  const Matrix<double> a{{1, 2, -1}, {0, 3, 4}};
  const Matrix<double> b{{2, 1}, {-1, 5}, {3, 0}};
  const double direct = vdm::det_general(a * b);
  const auto rows = IndexCombination::leading(2);
  double sum = 0.0;
  for (const auto& q : std::vector<IndexCombination>{{{1, 2}}, {{1, 3}}, {{2, 3}}})
    sum += vdm::minor(a, rows, q) * vdm::minor(b, q, rows);
  EXPECT_NEAR(sum, direct, 1e-12);
}

TEST(Factorization, ConvergesToGeneralizedMatrix) {
  const auto x = cvec({0.6, 1.4, 2.9});
  const auto a = cvec({-1.2, 0.7, 2.5});
  const auto ref = vdm::build_generalized(std::span<const Complex>(x), std::span<const Complex>(a));
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= 40; ++k) {
    const auto approx = vdm::truncated_factorization(x, a, k);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const double e = std::abs(approx(i, j) - ref(i, j));
        err = std::max(err, e);
        const double z = std::abs(a[i] * std::log(x[j]));
        const double noise = 64 * std::numeric_limits<double>::epsilon() * std::abs(ref(i, j));
        EXPECT_LE(e, vdm::exponential_tail_bound(z, k) * (1 + 1e-12) + noise);
      }
    if (k >= 10 && prev > 1e-13) {
      EXPECT_LT(err, prev) << "k=" << k;
    }
    prev = err;
    if (k == 40) {
      EXPECT_LT(err, 1e-10);
    }
  }
}

TEST(Factorization, EntryIsTaylorPartialSum) {
  const auto x = cvec({2.0});
  const auto a = cvec({1.5});
  const auto f = vdm::truncated_factorization(x, a, 3);
  const double z = 1.5 * std::log(2.0);
  EXPECT_NEAR(f(0, 0).real(), 1 + z + z * z / 2, 1e-15);
}

TEST(Factorization, Errors) {
  EXPECT_THROW((void)vdm::truncated_factorization(cvec({0.0, 1.0}), cvec({1, 2}), 5), vdm::Error);
  EXPECT_THROW((void)vdm::truncated_factorization(cvec({1.0, 2.0}), cvec({1, 2}), 0), vdm::Error);
  EXPECT_THROW((void)vdm::truncated_factorization(cvec({2.0}), cvec({1, 2}), 5), vdm::Error);
}

TEST(TailBound, KnownValues) {
  EXPECT_NEAR(vdm::exponential_tail_bound(1.0, 0), std::numbers::e, 1e-14);
  EXPECT_NEAR(vdm::exponential_tail_bound(1.0, 2), std::numbers::e - 2.0, 1e-14);
  EXPECT_LT(vdm::exponential_tail_bound(3.0, 40), 1e-28);
}

TEST(MinorSeries, PartialSumEqualsTruncatedDeterminant) {
  // summing all q inside [1, K] is Cauchy-Binet for the K-term factorization
  const auto x = cvec({0.7, 1.3, 2.2});
  const auto a = cvec({0.5, 1.0, 2.5});
  const auto partial = vdm::minor_series_gn(x, a, 15);
  for (std::size_t K = 3; K <= 15; ++K) {
    const auto trunc = vdm::det_general(vdm::truncated_factorization(x, a, K));
    EXPECT_LT(std::abs(partial[K - 3] - trunc), 1e-12 * std::max(1.0, std::abs(trunc))) << "K=" << K;
  }
}

TEST(MinorSeries, ConvergesForIntegerExponents) {
  const std::vector<std::pair<std::vector<Complex>, std::vector<Complex>>> cases{
      {cvec({1.0, std::numbers::e}), cvec({1, 2})},
      {cvec({0.5, 2.0}), cvec({0, 3})},
      {cvec({0.8, 1.5, 2.5}), cvec({0, 1, 2})},
      {cvec({0.6, 1.1, 1.9}), cvec({1, 2, 4})},
  };
  for (const auto& [x, a] : cases) {
    const auto partial = vdm::minor_series_gn(x, a, 30);
    ASSERT_EQ(partial.size(), 30 - x.size() + 1);
    EXPECT_LT(std::abs(partial.back() - direct_gn(x, a)), 1e-8);
  }
}

TEST(MinorSeries, LeadingTermIsTheRatioLimit) {
  // the k = n term is v_n(a) * rhs, the first nonvanishing order in t
  const auto x = cvec({0.9, 1.7, 2.6});
  const auto a = cvec({0.3, 1.1, 2.0});
  const auto first = vdm::minor_series_gn(x, a, 3).front();
  const auto rhs = vdm::ratio_limit_rhs(std::span<const Complex>(x));
  EXPECT_LT(std::abs(first - vdm::det_vandermonde(std::span<const Complex>(a)) * rhs), 1e-13);
}

TEST(MinorSeries, Guards) {
  const auto five = cvec({1, 2, 3, 4, 5});
  try {
    (void)vdm::minor_series_gn(five, five, 30);
    FAIL();
  } catch (const vdm::Error& e) {
    EXPECT_EQ(e.code(), vdm::ErrorCode::DimensionGuard);
  }
  EXPECT_THROW((void)vdm::minor_series_gn(cvec({1, 2}), cvec({1}), 30), vdm::Error);
  EXPECT_THROW((void)vdm::minor_series_gn(cvec({1, 2, 3}), cvec({1, 2, 3}), 2), vdm::Error);
}

TEST(Ratio, LimitByHand) {
  // n = 2: (1/0!)(1/1!) (log x2 - log x1)
  const auto x = cvec({1.0, std::numbers::e});
  EXPECT_NEAR(vdm::ratio_limit_rhs(std::span<const Complex>(x)).real(), 1.0, 1e-15);
  const auto y = cvec({2.0, 3.0, 5.0});
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0);
  EXPECT_NEAR(vdm::ratio_limit_rhs(std::span<const Complex>(y)).real(), 0.5 * (l3 - l2) * (l5 - l2) * (l5 - l3),
              1e-15);
}

TEST(Ratio, SeriesAgreesWithEliminationAtModerateT) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> node(0.4, 3.0);
  std::uniform_real_distribution<double> expo(-2.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    std::vector<Complex> x(n), a(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = node(rng);
      a[i] = expo(rng);
    }
    const double t = 0.7;
    const auto series = vdm::generalized_ratio(x, a, t);
    ASSERT_FALSE(series.elimination);
    std::vector<Complex> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = a[i] * t;
    const auto elim = direct_gn(x, s) / vdm::det_vandermonde(std::span<const Complex>(s));
    EXPECT_LT(std::abs(series.ratio - elim), 1e-9 * std::max(1.0, std::abs(elim)));
  }
}

TEST(Ratio, CrossoverToElimination) {
  const auto x = cvec({0.5, 2.0});
  const auto a = cvec({10.0, 30.0});
  const auto p = vdm::generalized_ratio(x, a, 1.0);
  EXPECT_TRUE(p.elimination);
  const auto elim = direct_gn(x, a) / vdm::det_vandermonde(std::span<const Complex>(a));
  EXPECT_LT(std::abs(p.ratio - elim), 1e-12 * std::abs(elim));
}

TEST(Ratio, FirstOrderConvergence) {
  const std::vector<std::pair<std::vector<Complex>, std::vector<Complex>>> cases{
      {cvec({1.0, std::numbers::e}), cvec({1, 2})},
      {cvec({0.5, 2.0, 3.0}), cvec({1, 2, 4})},
      {cvec({1.0, 2.0, 3.0}), cvec({1, 2, 4})},
  };
  const auto schedule = vdm::default_t_schedule();
  for (const auto& [x, a] : cases) {
    const auto r = vdm::ratio_limit(x, a, schedule);
    ASSERT_EQ(r.points.size(), schedule.size());
    for (std::size_t i = 10; i + 1 < r.points.size(); ++i) {
      const double ratio = r.points[i].abs_error / r.points[i + 1].abs_error;
      EXPECT_GE(ratio, 1.5);
      EXPECT_LE(ratio, 2.5);
    }
    EXPECT_LT(r.points.back().abs_error / std::abs(r.rhs), 1e-4);
  }
}

TEST(Ratio, Errors) {
  const auto x = cvec({1.0, 2.0});
  try {
    (void)vdm::generalized_ratio(x, cvec({1, 1}), 0.5);
    FAIL();
  } catch (const vdm::Error& e) {
    EXPECT_EQ(e.code(), vdm::ErrorCode::DegenerateExponents);
  }
  EXPECT_THROW((void)vdm::generalized_ratio(x, cvec({1, 2, 3}), 0.5), vdm::Error);
  EXPECT_THROW((void)vdm::generalized_ratio(x, cvec({1, 2}), 0.0), vdm::Error);
  const std::vector<double> increasing{0.1, 0.2};
  EXPECT_THROW((void)vdm::ratio_limit(x, cvec({1, 2}), increasing), vdm::Error);
}

TEST(Ratio, DefaultSchedule) {
  const auto t = vdm::default_t_schedule();
  ASSERT_EQ(t.size(), 21u);
  EXPECT_EQ(t.front(), 1.0);
  EXPECT_EQ(t.back(), std::ldexp(1.0, -20));
}
