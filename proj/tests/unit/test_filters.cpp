#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hhl_lab/filters.hpp"
#include "support.hpp"

using namespace hhl_lab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(FilterF, InversionBranch) {
  EXPECT_DOUBLE_EQ(filter_f(1.0, FilterParams(2.0)), 0.25);
  EXPECT_DOUBLE_EQ(filter_f(0.5, FilterParams(4.0)), 0.25);
}

TEST(FilterF, MiddleBranch) {
  EXPECT_NEAR(filter_f(0.375, FilterParams(2.0)), 0.5 * std::cos(0.25 * kPi), 1e-15);
  EXPECT_NEAR(filter_f(0.375, FilterParams(2.0)), 0.353553, 1e-6);
}

TEST(FilterF, ContinuousAtBreakpoints) {
  for (double kt : {1.0, 2.0, 4.0, 17.5}) {
    const FilterParams p(kt);
    EXPECT_NEAR(filter_f(0.5 / kt, p), 0.0, 1e-15);
    EXPECT_NEAR(filter_f(std::nextafter(0.5 / kt, 0.0), p), 0.0, 1e-12);
    EXPECT_NEAR(filter_f(1.0 / kt, p), 0.5, 1e-15);
    EXPECT_NEAR(filter_f(std::nextafter(1.0 / kt, 0.0), p), 0.5, 1e-12);
  }
}

TEST(FilterG, Branches) {
  const FilterParams p(2.0);
  EXPECT_DOUBLE_EQ(filter_g(0.1, p), 0.5);
  EXPECT_NEAR(filter_g(0.5, p), 0.0, 1e-15);
  EXPECT_NEAR(filter_g(0.375, p), 0.5 * std::sin(0.75 * kPi), 1e-15);
  EXPECT_DOUBLE_EQ(filter_g(0.9, p), 0.0);
  EXPECT_NEAR(filter_g(std::nextafter(0.25, 1.0), p), 0.5, 1e-12);
}

TEST(Filters, RejectOutsideUnitInterval) {
  const FilterParams p(2.0);
  EXPECT_THROW_KIND(filter_f(-0.1, p), DomainError);
  EXPECT_THROW_KIND(filter_g(1.5, p), DomainError);
  EXPECT_THROW_KIND(h_state(std::nan(""), p), DomainError);
}

TEST(Filters, ParamsRejectSmallKappaTilde) {
  EXPECT_THROW_KIND(FilterParams(0.5), BadParameter);
  EXPECT_THROW_KIND(FilterParams(std::numeric_limits<double>::infinity()), BadParameter);
}

TEST(HState, Examples) {
  const FilterParams p(4.0);
  const auto a = h_state(0.25, p);
  EXPECT_NEAR(a.nothing_amp, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(a.well_amp, 0.5, 1e-15);
  EXPECT_NEAR(a.ill_amp, 0.0, 1e-15);
  const auto b = h_state(0.0, p);
  EXPECT_NEAR(b.nothing_amp, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(b.well_amp, 0.0, 1e-15);
  EXPECT_NEAR(b.ill_amp, 0.5, 1e-15);
}

TEST(HState, NormalizedAndFlagWeightBounded) {
  for (double kt : {1.0, 3.0, 16.0, 64.0}) {
    const FilterParams p(kt);
    for (int i = 0; i <= 10000; ++i) {
      const double l = i / 10000.0;
      const double f = filter_f(l, p);
      const double g = filter_g(l, p);
      ASSERT_LE(f * f + g * g, 0.25 + 1e-15) << "kt=" << kt << " l=" << l;
      const auto h = h_state(l, p);
      ASSERT_NEAR(h.dot(h), 1.0, 1e-14);
      ASSERT_GE(h.nothing_amp, std::sqrt(3.0) / 2.0 - 1e-12);
    }
  }
}

TEST(Lipschitz, Constant) {
  EXPECT_NEAR(lipschitz_constant(), 2.240120, 1e-6);
  EXPECT_DOUBLE_EQ(lipschitz_bound(FilterParams(2.0)), 2.0 * lipschitz_constant());
}

TEST(Lipschitz, ScanStaysBelowBound) {
  const auto r4 = verify_lipschitz(FilterParams(4.0), 100000, 1);
  const auto r32 = verify_lipschitz(FilterParams(32.0), 100000, 1);
  EXPECT_TRUE(r4.ok) << r4.max_ratio << " vs " << r4.bound;
  EXPECT_TRUE(r32.ok) << r32.max_ratio << " vs " << r32.bound;
  const double s4 = r4.max_ratio / 4.0;
  const double s32 = r32.max_ratio / 32.0;
  EXPECT_LT(std::abs(s4 - s32) / s4, 0.10);
}

TEST(Lipschitz, MaxRatioMatchesIndependentDerivativeOracle) {
  // Largest |d h / d lambda| occurs in the middle branch, where |f'|^2 + |g'|^2
  // is (pi kt / 2)^2, and the nothing component adds a bounded share. The scan
  // must reach at least the f,g part and never exceed the stated constant.
  const double kt = 8.0;
  const auto rep = verify_lipschitz(FilterParams(kt), 100000, 5);
  EXPECT_GE(rep.max_ratio, 0.99 * kPi * kt / 2.0);
  EXPECT_LE(rep.max_ratio, lipschitz_bound(FilterParams(kt)));
}

TEST(Lipschitz, FlatBranchHasZeroRatio) {
  const FilterParams p(4.0);
  const auto a = h_state(0.01, p);
  const auto b = h_state(0.1, p);
  EXPECT_DOUBLE_EQ(flag_distance(a, b), 0.0);
}

TEST(Lipschitz, RejectsTooFewSamples) { EXPECT_THROW_KIND(verify_lipschitz(FilterParams(2.0), 1, 1), BadParameter); }

TEST(FilterDifference, IdenticalInputsDegenerate) {
  const auto rep = filter_difference_bound_check(0.5, 0.5, FilterParams(4.0), 100.0);
  EXPECT_EQ(rep.lhs, 0.0);
  EXPECT_TRUE(rep.degenerate);
}

TEST(FilterDifference, FiniteRatio) {
  const auto rep = filter_difference_bound_check(0.5, 0.51, FilterParams(4.0), 100.0);
  EXPECT_FALSE(rep.degenerate);
  EXPECT_TRUE(std::isfinite(rep.ratio));
  // Oracle: both points sit in the inversion branch, f = 1/(8 lambda), g = 0.
  const double fj = 1.0 / (8.0 * 0.5);
  const double fk = 1.0 / (8.0 * 0.51);
  const double lhs = (fk - fj) * (fk - fj);
  const double rhs = 16.0 * 0.01 * 0.01 * fj * fj;
  EXPECT_NEAR(rep.ratio, lhs / rhs, 1e-12);
}

TEST(FilterDifference, GridRatioBoundedIndependentOfKappaTilde) {
  double prev = 0.0;
  for (double kt : {2.0, 4.0, 8.0, 16.0}) {
    const double r = filter_difference_grid_max(FilterParams(kt), 120, 100.0);
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_LT(r, 10.0) << "kt=" << kt;
    if (prev > 0.0) {
      EXPECT_LT(r / prev, 2.0);
    }
    prev = r;
  }
}

TEST(FlagRotation, OrthogonalWithFirstColumnH) {
  const FilterParams p(4.0);
  for (double l : {0.0, 0.1, 0.15, 0.2, 0.25, 0.6, 1.0}) {
    const auto h = h_state(l, p);
    const auto r = flag_rotation_matrix(h);
    const auto col0 = h.as_array();
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(r[static_cast<std::size_t>(i)][0], col0[static_cast<std::size_t>(i)], 1e-15);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < 3; ++i) s += r[i][a] * r[i][b];
        EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-13);
      }
    }
  }
}
