#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pgt/chamber.hpp"
#include "pgt/error.hpp"
#include "support.hpp"

using namespace pgt;

TEST(Index, Examples) {
  EXPECT_DOUBLE_EQ(index_of({{1.0}, 2.0, 0.5, ""}), 4.0);
  EXPECT_DOUBLE_EQ(index_of({{1.0}, 1.0, 1.0, ""}), 1.0);
  const std::vector<double> rho{4.0, 1.0, 0.25};
  const double det = det_one_minus_ad(rho);
  EXPECT_NEAR(index_of({{1.0, 1.0}, 1.0, det, ""}), 1.0 / 0.52734375, 1e-15);
  EXPECT_NEAR(index_of({{1.0, 1.0}, 1.0, det, ""}), 1.8962962962962962, 1e-12);
}

TEST(Index, RejectsInvalidClasses) {
  EXPECT_THROW(validate({{}, 1.0, 1.0, ""}), InvalidInput);
  EXPECT_THROW(validate({{0.0}, 1.0, 1.0, ""}), InvalidInput);
  EXPECT_THROW(validate({{-1.0}, 1.0, 1.0, ""}), InvalidInput);
  EXPECT_THROW(validate({{1.0}, 0.0, 1.0, ""}), InvalidInput);
  EXPECT_THROW(validate({{1.0}, 1.0, 0.0, ""}), InvalidInput);
  EXPECT_THROW(validate({{1.0}, 1.0, 1.5, ""}), InvalidInput);
  EXPECT_THROW(validate({{NAN}, 1.0, 0.5, ""}), InvalidInput);
  EXPECT_NO_THROW(validate({{1.0}, 1.0, 1.0, ""}));
}

TEST(Det, Examples) {
  EXPECT_DOUBLE_EQ(det_one_minus_ad(std::vector<double>{2.0, 0.5}), 0.75);
  EXPECT_DOUBLE_EQ(det_one_minus_ad(std::vector<double>{4.0, 1.0, 0.25}), 0.52734375);
  // Order of the input does not matter.
  EXPECT_DOUBLE_EQ(det_one_minus_ad(std::vector<double>{0.25, 4.0, 1.0}), 0.52734375);
  const std::vector<double> unit{1.8019377358048383, -1.2469796037174672, 0.4450418679126288};
  const double d = det_one_minus_ad(unit);
  EXPECT_GT(d, 0.0);
  EXPECT_LT(d, 1.0);
  const double expected = (1 - 1.2469796037174672 / 1.8019377358048383) *
                          (1 - 0.4450418679126288 / 1.8019377358048383) *
                          (1 - 0.4450418679126288 / 1.2469796037174672);
  EXPECT_NEAR(d, expected, 1e-15);
}

TEST(Det, SignedRatiosCanLeaveTheInterval) {
  const std::vector<double> unit{1.8019377358048383, -1.2469796037174672, 0.4450418679126288};
  EXPECT_GT(det_one_minus_ad(unit, AdjointSign::kSigned), 1.0);
  EXPECT_DOUBLE_EQ(det_one_minus_ad(std::vector<double>{2.0, 0.5}, AdjointSign::kSigned), 0.75);
}

TEST(Det, Errors) {
  EXPECT_THROW(det_one_minus_ad(std::vector<double>{2.0}), InvalidInput);
  EXPECT_THROW(det_one_minus_ad(std::vector<double>{2.0, 0.6}), InvalidInput);
  EXPECT_THROW(det_one_minus_ad(std::vector<double>{1.0, -1.0}), InvalidInput);
  EXPECT_THROW(det_one_minus_ad(std::vector<double>{0.0, 2.0, 0.5}), InvalidInput);
  EXPECT_NO_THROW(det_one_minus_ad(std::vector<double>{2.0, 0.5 * (1 + 1e-10)}));
}

TEST(Alpha, Examples) {
  const double e = std::exp(1.0);
  auto a = alpha_coords(std::vector<double>{e, 1.0, 1.0 / e});
  ASSERT_EQ(a.size(), 2u);
  EXPECT_NEAR(a[0], 2.0, 1e-14);
  EXPECT_NEAR(a[1], 2.0, 1e-14);
  a = alpha_coords(std::vector<double>{4.0, 1.0, 0.25});
  EXPECT_NEAR(a[0], 2.772588722239781, 1e-14);
  EXPECT_NEAR(a[1], 2.772588722239781, 1e-14);
  a = alpha_coords(std::vector<double>{1.8019377358048383, -1.2469796037174672, 0.4450418679126288});
  EXPECT_NEAR(a[0], 0.73633, 1e-4);
  EXPECT_NEAR(a[1], 2.06066, 1e-4);
}

TEST(Alpha, FromLogModuliAllowsZeros) {
  const auto a = alpha_from_log_moduli(std::vector<double>{0.0, 1.0, -1.0});
  EXPECT_NEAR(a[0], 2.0, 1e-15);
  EXPECT_NEAR(a[1], 2.0, 1e-15);
  const auto z = alpha_from_log_moduli(std::vector<double>{0.5, 0.5, -1.0});
  EXPECT_EQ(z[0], 0.0);
}

TEST(BoundConvert, Examples) {
  auto m = bound_convert(std::vector<double>{0.0, 0.0}, BoundDirection::kLogToMult);
  EXPECT_EQ(m, (std::vector<double>{1.0, 1.0}));
  auto l = bound_convert(std::vector<double>{1.0, 1.0}, BoundDirection::kMultToLog);
  EXPECT_EQ(l, (std::vector<double>{0.0, 0.0}));
  m = bound_convert(std::vector<double>{std::log(10.0), std::log(100.0)}, BoundDirection::kLogToMult);
  EXPECT_NEAR(m[0], 10.0, 1e-13);
  EXPECT_NEAR(m[1], 100.0, 1e-12);
}

TEST(Basis, RhoCoordinates) {
  const ChamberBasis b(3);
  for (const auto& f : b.rho_alpha_coords()) EXPECT_EQ(f, (Fraction{1, 2}));
  EXPECT_THROW(ChamberBasis(0), InvalidInput);
}

TEST(Spectrum, CanonicalOrderIgnoresInputOrder) {
  testing_support::Gen g(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto classes = g.classes(2, 40);
    const Spectrum a(ChamberBasis(2), classes, Provenance::kSynthetic);
    std::shuffle(classes.begin(), classes.end(), g.engine());
    const Spectrum b(ChamberBasis(2), classes, Provenance::kSynthetic);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_TRUE(std::equal(a.lengths(i).begin(), a.lengths(i).end(), b.lengths(i).begin()));
      EXPECT_EQ(a.flat_volume(i), b.flat_volume(i));
      EXPECT_EQ(a.label(i), b.label(i));
    }
  }
}

TEST(Spectrum, RejectsMixedRanks) {
  std::vector<GeodesicClass> classes{{{1.0}, 1.0, 1.0, ""}, {{1.0, 2.0}, 1.0, 1.0, ""}};
  EXPECT_THROW(Spectrum(ChamberBasis(1), classes, Provenance::kManual), InvalidInput);
}

TEST(ChamberProperties, DetInUnitIntervalAlphaPositive) {
  testing_support::Gen g(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = g.integer(2, 5);
    auto rho = g.eigenvalues(d);
    const double det = det_one_minus_ad(rho);
    EXPECT_GT(det, 0.0);
    EXPECT_LT(det, 1.0);
    EXPECT_GT(index_of({{1.0}, 1.0, det, ""}), 0.0);
    const auto alpha = alpha_coords(rho);
    ASSERT_EQ(alpha.size(), static_cast<std::size_t>(d - 1));
    for (double a : alpha) EXPECT_GT(a, 0.0);
    std::shuffle(rho.begin(), rho.end(), g.engine());
    EXPECT_EQ(alpha_coords(rho), alpha);
    EXPECT_EQ(det_one_minus_ad(rho), det);
  }
}

TEST(ChamberProperties, AlphaSumTelescopesForDegreeThree) {
  testing_support::Gen g(2);
  for (int trial = 0; trial < 1000; ++trial) {
    auto rho = g.eigenvalues(3);
    const auto alpha = alpha_coords(rho);
    std::sort(rho.begin(), rho.end(), [](double x, double y) { return std::fabs(x) > std::fabs(y); });
    double pairs = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) pairs += std::log(std::fabs(rho[i]) / std::fabs(rho[j]));
    }
    EXPECT_NEAR(alpha[0] + alpha[1], pairs, 1e-12 * std::max(1.0, pairs));
  }
}

TEST(ChamberProperties, BoundConvertRoundTrips) {
  testing_support::Gen g(3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(static_cast<std::size_t>(g.integer(1, 4)));
    for (auto& v : x) v = g.uniform(0.0, 50.0);
    const auto back = bound_convert(bound_convert(x, BoundDirection::kLogToMult), BoundDirection::kMultToLog);
    for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(back[k], x[k], 1e-13 * std::max(1.0, x[k]));
  }
}
