#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "vdm/hermite.hpp"

namespace {

// H_{k+1} = 2x H_k - 2k H_{k-1}, in doubles.
std::vector<double> hermite_by_recurrence(std::size_t n) {
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 2.0};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2.0 * static_cast<double>(k) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double vn(const std::vector<double>& x) { return vdm::det_vandermonde(std::span<const double>(x)); }

}  // namespace

TEST(Hermite, ExactCoefficientsMatchRecurrence) {
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto exact = vdm::hermite_coeffs(n);
    const auto rec = hermite_by_recurrence(n);
    ASSERT_EQ(exact.size(), rec.size());
    for (std::size_t k = 0; k < rec.size(); ++k) EXPECT_DOUBLE_EQ(exact[k], rec[k]) << "n=" << n << " k=" << k;
  }
}

TEST(Hermite, LowOrderByHand) {
  // H_3 = 8x^3 - 12x, H_4 = 16x^4 - 48x^2 + 12
  EXPECT_EQ(vdm::hermite_coeffs(3), (std::vector<double>{0, -12, 0, 8}));
  EXPECT_EQ(vdm::hermite_coeffs(4), (std::vector<double>{12, 0, -48, 0, 16}));
}

TEST(Pn, KnownFractions) {
  using R = vdm::Rational;
  auto check = [](std::size_t n, std::vector<R> want) {
    const auto got = vdm::pn_exact(n);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_EQ(got[k], want[k]) << "n=" << n << " k=" << k;
  };
  check(3, {R(0), R(-1, 2), R(0), R(1)});
  check(4, {R(1, 48), R(0), R(-1, 2), R(0), R(1)});
  check(5, {R(0), R(3, 80), R(0), R(-1, 2), R(0), R(1)});
  check(6, {R(-1, 1800), R(0), R(1, 20), R(0), R(-1, 2), R(0), R(1)});
  check(7, {R(0), R(-5, 3528), R(0), R(5, 84), R(0), R(-1, 2), R(0), R(1)});
}

TEST(Pn, ConstructionsAgreeUpToFifty) {
  for (std::size_t n = 2; n <= 50; ++n) {
    const auto a = vdm::pn_from_hermite(n);
    const auto b = vdm::pn_recursive(n);
    ASSERT_EQ(a.degree(), n);
    ASSERT_EQ(b.degree(), n);
    for (std::size_t k = 0; k <= n; ++k) {
      const double scale = std::max(std::abs(a.coeffs[k]), 1e-300);
      if (a.coeffs[k] == 0.0)
        EXPECT_EQ(b.coeffs[k], 0.0);
      else
        EXPECT_LT(std::abs(a.coeffs[k] - b.coeffs[k]) / scale, 1e-12) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Pn, SubleadingCoefficientIsMinusHalf) {
  for (std::size_t n = 2; n <= 30; ++n) EXPECT_EQ(vdm::pn_exact(n)[n - 2], vdm::Rational(-1, 2));
}

TEST(Pn, RejectsSmallDimension) {
  EXPECT_THROW((void)vdm::pn_exact(1), vdm::Error);
  EXPECT_THROW((void)vdm::pn_recursive(0), vdm::Error);
}

TEST(Roots, HermiteRootsAreSignChangesOfHn) {
  for (std::size_t n = 1; n <= 30; ++n) {
    const auto z = vdm::hermite_roots(n);
    ASSERT_EQ(z.size(), n);
    for (double zi : z) {
      const double h = 1e-9 * std::max(1.0, std::abs(zi));
      const double lo = vdm::detail::orthonormal_hermite(n, zi - h).first;
      const double hi = vdm::detail::orthonormal_hermite(n, zi + h).first;
      EXPECT_LE(lo * hi, 0.0) << "n=" << n << " z=" << zi;
    }
  }
}

TEST(Roots, ZerosOfPn) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto set = vdm::solve_extrema(n);
    const auto p = vdm::pn_from_hermite(n);
    for (double x : set.roots) EXPECT_NEAR(p(x), 0.0, 1e-13);
  }
}

TEST(Extrema, CertificationUpToFifty) {
  for (std::size_t n = 2; n <= 50; ++n) {
    const auto set = vdm::solve_extrema(n);
    ASSERT_EQ(set.roots.size(), n);
    EXPECT_TRUE(std::is_sorted(set.roots.begin(), set.roots.end()));
    EXPECT_LT(set.residuals.at("sum"), 1e-10);
    EXPECT_LT(set.residuals.at("sum_squares"), 1e-10);
    EXPECT_LT(set.residuals.at("symmetry"), 1e-10);
    if (n <= 20) {
      EXPECT_LT(set.residuals.at("stationarity"), 1e-8);
    }
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(set.roots[i], -set.roots[n - 1 - i]);
  }
}

TEST(Extrema, LagrangeConditionByFiniteDifferences) {
  // at an extremum of v on the sphere, grad v = lambda x with lambda = M v
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto set = vdm::solve_extrema(n);
    const auto& x = set.roots;
    const double lambda = static_cast<double>(n * (n - 1) / 2) * vn(x);
    for (std::size_t k = 0; k < n; ++k) {
      const double h = 1e-6;
      auto p = x, m = x;
      p[k] += h;
      m[k] -= h;
      const double fd = (vn(p) - vn(m)) / (2 * h);
      EXPECT_NEAR(fd, lambda * x[k], 1e-7 * std::abs(vn(x)) + 1e-12);
    }
  }
}

TEST(Extrema, KnownValues) {
  const double r2 = 1.0 / std::sqrt(2.0);
  const auto s3 = vdm::solve_extrema(3);
  EXPECT_NEAR(s3.extreme_value, r2, 1e-12);
  EXPECT_NEAR(s3.roots[0], -r2, 1e-12);
  EXPECT_EQ(s3.roots[1], 0.0);
  EXPECT_NEAR(s3.roots[2], r2, 1e-12);

  const auto s4 = vdm::solve_extrema(4);
  const double outer4 = 0.5 * std::sqrt(1 + std::sqrt(2.0 / 3.0));
  const double inner4 = 0.5 * std::sqrt(1 - std::sqrt(2.0 / 3.0));
  EXPECT_NEAR(s4.roots[3], outer4, 1e-10);
  EXPECT_NEAR(s4.roots[2], inner4, 1e-10);

  const auto s5 = vdm::solve_extrema(5);
  EXPECT_EQ(s5.roots[2], 0.0);
  EXPECT_NEAR(s5.roots[4], 0.5 * std::sqrt(1 + std::sqrt(2.0 / 5.0)), 1e-10);
  EXPECT_NEAR(s5.roots[3], 0.5 * std::sqrt(1 - std::sqrt(2.0 / 5.0)), 1e-10);
}

TEST(Extrema, LogValueTracksUnderflow) {
  for (std::size_t n = 3; n <= 20; ++n) {
    const auto set = vdm::solve_extrema(n);
    EXPECT_NEAR(set.log10_extreme_value, std::log10(set.extreme_value), 1e-10);
  }
  const auto big = vdm::solve_extrema(50);
  EXPECT_LT(big.log10_extreme_value, -300.0);
  EXPECT_TRUE(std::isfinite(big.log10_extreme_value));
}

TEST(Extrema, ReciprocalSquareIdentity) {
  const auto s3 = vdm::solve_extrema(3);
  EXPECT_NEAR(vdm::reciprocal_square_sum(std::span<const double>(s3.roots)), 4.5, 1e-10);
  for (std::size_t n = 3; n <= 10; ++n) {
    const auto set = vdm::solve_extrema(n);
    const double target = 0.5 * std::pow(n * (n - 1) / 2.0, 2);
    EXPECT_DOUBLE_EQ(vdm::reciprocal_square_target(n), target);
    EXPECT_NEAR(vdm::reciprocal_square_sum(std::span<const double>(set.roots)), target, 1e-9 * target);
  }
}

TEST(Extrema, DimensionErrors) {
  try {
    (void)vdm::solve_extrema(1);
    FAIL();
  } catch (const vdm::Error& e) {
    EXPECT_EQ(e.code(), vdm::ErrorCode::DimensionTooSmall);
  }
  try {
    (void)vdm::solve_extrema(51);
    FAIL();
  } catch (const vdm::Error& e) {
    EXPECT_EQ(e.code(), vdm::ErrorCode::UnsupportedDimension);
  }
}

TEST(ClosedForms, LowDimensionsAreClean) {
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto rep = vdm::closed_form_roots(n);
    EXPECT_EQ(rep.flagged_count(), 0u) << "n=" << n;
    for (const auto& e : rep.entries) EXPECT_LT(e.deviation, 1e-12) << e.label;
  }
}

TEST(ClosedForms, PrintedMisprintsAreFlagged) {
  std::set<std::string> flagged;
  for (std::size_t n = 6; n <= 7; ++n)
    for (const auto& e : vdm::closed_form_roots(n).entries) {
      if (!e.flagged) {
        EXPECT_LT(e.deviation, 1e-12) << e.label;
        continue;
      }
      flagged.insert(e.label);
      ASSERT_TRUE(e.suggested_value.has_value()) << e.label;
      EXPECT_LT(*e.suggested_deviation, 1e-12) << e.label;
    }
  EXPECT_TRUE(flagged.count("x64"));
  EXPECT_TRUE(flagged.count("x77"));
  // the printed x75 reuses the n = 6 constants and misses every n = 7 root
  EXPECT_TRUE(flagged.count("x75"));
  EXPECT_EQ(flagged.size(), 3u);
}

TEST(ClosedForms, PrintedX77Value) {
  for (const auto& e : vdm::closed_form_roots(7).entries)
    if (e.label == "x77") {
      EXPECT_NEAR(e.value, 0.53599, 1e-5);
      EXPECT_NEAR(*e.suggested_value, 0.57871, 1e-5);
    }
}

TEST(ClosedForms, OutsideRangeRejected) { EXPECT_THROW((void)vdm::closed_form_roots(8), vdm::Error); }

TEST(Enumerator, VisitsAllPermutationsWithParitySigns) {
  const auto set = vdm::solve_extrema(4);
  vdm::ExtremaEnumerator en(set);
  std::size_t count = 0;
  int positive = 0;
  std::set<std::vector<double>> seen;
  while (auto p = en.next()) {
    ++count;
    const double v = vn(p->point);
    EXPECT_EQ(v > 0 ? 1 : -1, p->sign);
    EXPECT_NEAR(std::abs(v), set.extreme_value, 1e-14);
    if (p->sign > 0) ++positive;
    seen.insert(p->point);
  }
  EXPECT_EQ(count, 24u);
  EXPECT_EQ(positive, 12);
  EXPECT_EQ(seen.size(), 24u);
  EXPECT_FALSE(en.next().has_value());
}

TEST(Enumerator, CapIsEnforced) {
  const auto roots = vdm::solve_extrema(12).roots;
  EXPECT_THROW(vdm::ExtremaEnumerator{roots}, vdm::Error);
  vdm::ExtremaEnumerator capped(roots, 3);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(capped.next().has_value());
  try {
    (void)capped.next();
    FAIL();
  } catch (const vdm::Error& e) {
    EXPECT_EQ(e.code(), vdm::ErrorCode::CapExceeded);
  }
}
