#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "oracles.hpp"
#include "pgt/counting.hpp"
#include "pgt/error.hpp"
#include "pgt/io/ingest.hpp"
#include "pgt/nf/units.hpp"
#include "support.hpp"

using namespace pgt;
using namespace pgt::nf;

namespace {

const CubicPoly kSeven{-1, -2, 1};   // x^3 - x^2 - 2x + 1
const CubicPoly kNine{0, -3, -1};    // x^3 - 3x - 1

const std::vector<FieldRecord>& table() {
  static const auto records = [] {
    io::IngestOptions opt;
    opt.allow_small_S = true;
    return io::ingest_field_table(std::string(PGT_DATA_DIR) + "/cubic_fields_disc_lt_1957.csv", opt).accepted;
  }();
  return records;
}

FieldRecord with_units(const CubicPoly& poly, long long H) {
  auto r = make_field_record(poly);
  const auto fu = find_fundamental_units(r, H);
  r.fundamental_units = {fu.units[0], fu.units[1]};
  r.R = fu.regulator;
  r.unit_status = fu.status;
  r.h = 1;
  return r;
}

double value(const CubicPoly& f, double x) { return ((x + f.a) * x + f.b) * x + f.c; }

}  // namespace

TEST(Cubic, Discriminant) {
  EXPECT_EQ(discriminant(kSeven), 49);
  EXPECT_EQ(discriminant(kNine), 81);
  EXPECT_EQ(discriminant({0, 0, -2}), -108);
}

TEST(Cubic, TotalReality) {
  EXPECT_TRUE(is_totally_real(kSeven));
  EXPECT_FALSE(is_totally_real({0, 0, -2}));
  EXPECT_THROW(is_totally_real({0, -1, 0}), InvalidInput);  // x^3 - x
  EXPECT_THROW(is_totally_real({0, 0, 0}), InvalidInput);
  EXPECT_THROW(make_field_record({0, 0, -2}), InvalidInput);
}

TEST(Cubic, Embeddings) {
  const auto e = real_embeddings(kSeven);
  const double expected7[] = {1.8019377358048383, 0.4450418679126288, -1.2469796037174672};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(e[i].value, expected7[i], 1e-12);
    EXPECT_LE(e[i].hi - e[i].lo, 1e-12);
    EXPECT_LE(e[i].lo, e[i].value);
    EXPECT_LE(e[i].value, e[i].hi);
    EXPECT_LT(std::fabs(value(kSeven, e[i].value)), 1e-10);
  }
  const auto n = real_embeddings(kNine);
  const double expected9[] = {1.8793852415718169, -0.3472963553338607, -1.5320888862379562};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(n[i].value, expected9[i], 1e-12);
}

TEST(Cubic, Dedekind) {
  EXPECT_TRUE(dedekind_maximal_at_p(kSeven, 2));
  EXPECT_EQ(dedekind_maximal_at_p(kSeven, 7), oracle::maximal_at({-1, -2, 1}, 7));
  EXPECT_TRUE(dedekind_maximal_at_p(kSeven, 7));
  EXPECT_THROW(dedekind_maximal_at_p({0, 0, 0}, 2), InvalidInput);
}

TEST(Cubic, Splitting) {
  for (const auto& f : {kSeven, kNine}) {
    const auto st = splitting_type(f, 2);
    ASSERT_EQ(st.factors.size(), 1u);
    EXPECT_EQ(st.factors[0], (PrimeFactor{1, 3}));
    EXPECT_TRUE(st.non_decomposed);
    EXPECT_EQ(st.f_p, 3);
  }
  // 13 = 1 mod 7 is a cube there: splits completely in the cyclic field of conductor 7.
  const auto split = splitting_type(kSeven, 13);
  EXPECT_EQ(split.factors.size(), 3u);
  EXPECT_FALSE(split.non_decomposed);
  const auto ram = splitting_type(kNine, 3);
  EXPECT_EQ(ram.factors, (std::vector<PrimeFactor>{{3, 1}}));
  EXPECT_TRUE(ram.non_decomposed);
  EXPECT_EQ(ram.f_p, 1);
}

TEST(Cubic, SplittingRefusesNonMaximal) {
  // First non-maximal example found by the integrality oracle.
  bool found = false;
  for (long long a = -3; a <= 3 && !found; ++a) {
    for (long long b = -12; b <= 0 && !found; ++b) {
      for (long long c = -12; c <= 12 && !found; ++c) {
        const CubicPoly f{a, b, c};
        if (!is_irreducible(f)) continue;
        for (long long p : {2LL, 3LL}) {
          const auto d = discriminant(f);
          if (d % (p * p) != 0) continue;
          if (!oracle::maximal_at({a, b, c}, p)) {
            EXPECT_FALSE(dedekind_maximal_at_p(f, p));
            EXPECT_THROW(splitting_type(f, p), NotCertified);
            found = true;
            break;
          }
        }
      }
    }
  }
  EXPECT_TRUE(found);
}

TEST(Field, LambdaS) {
  EXPECT_EQ(lambda_S(kNine, {2, 3}), 3);   // f_2 = 3, f_3 = 1
  EXPECT_EQ(lambda_S(kSeven, {2, 3}), 9);  // f_2 = 3, f_3 = 3
  EXPECT_THROW(lambda_S(kSeven, {}), InvalidInput);
  EXPECT_EQ(lambda_S(kSeven, {}, true), 1);
  EXPECT_THROW(lambda_S(kSeven, {2, 13}), InvalidInput);
  EXPECT_TRUE(satisfies_S(kSeven, {2, 3}));
  EXPECT_FALSE(satisfies_S(kSeven, {2, 13}));
}

TEST(Field, CConstant) {
  EXPECT_NEAR(c_constant(3), 8.0, 1e-14);
  EXPECT_NEAR(c_constant(5), 2304.0, 1e-10);
  EXPECT_THROW(c_constant(2), InvalidInput);
  EXPECT_THROW(c_constant(9), InvalidInput);
}

TEST(Field, Minkowski) {
  EXPECT_NEAR(minkowski_bound(49), 1.5555555555555556, 1e-12);
  EXPECT_NEAR(minkowski_bound(81), 2.0, 1e-15);
  EXPECT_EQ(minkowski_h1_certificate(make_field_record(kSeven)), MinkowskiVerdict::kHIsOne);
  EXPECT_EQ(minkowski_h1_certificate(make_field_record(kNine)), MinkowskiVerdict::kHIsOne);
  EXPECT_NEAR(minkowski_bound(1957), 9.83, 0.01);
  EXPECT_EQ(minkowski_h1_certificate(make_field_record({-1, -9, 10})), MinkowskiVerdict::kInconclusive);
}

TEST(Field, Isomorphism) {
  EXPECT_TRUE(are_isomorphic(kSeven, {0, -7, 7}));
  EXPECT_TRUE(are_isomorphic(kSeven, {0, -7, -7}));
  EXPECT_TRUE(are_isomorphic(kNine, {0, -3, 1}));
  EXPECT_FALSE(are_isomorphic(kSeven, kNine));
  EXPECT_FALSE(are_isomorphic({0, -4, -1}, {0, -4, -2}));
}

TEST(Field, EnumerationSmallBounds) {
  EnumerationOptions opt;
  opt.allow_small_S = true;
  const auto fields = enumerate_fields(100, {}, opt);
  ASSERT_EQ(fields.size(), 2u);
  EXPECT_EQ(fields[0].disc_field, 49);
  EXPECT_EQ(fields[1].disc_field, 81);
  EXPECT_TRUE(are_isomorphic(fields[0].poly, kSeven));
  EXPECT_TRUE(are_isomorphic(fields[1].poly, kNine));
  EXPECT_EQ(oracle::field_discriminants(100, 12), (std::set<long long>{49, 81}));
  EXPECT_TRUE(enumerate_fields(40, {}, opt).empty());
  EXPECT_TRUE(oracle::field_discriminants(40, 12).empty());
  EXPECT_THROW(enumerate_fields(100, {}), InvalidInput);
  EXPECT_THROW(enumerate_fields(100, {2, 4}), InvalidInput);
}

TEST(Field, EnumerationMatchesExhaustiveSearch) {
  EnumerationOptions opt;
  opt.allow_small_S = true;
  opt.a_bound = opt.b_bound = opt.c_bound = 15;
  opt.threads = 2;
  std::set<long long> discs;
  for (const auto& r : enumerate_fields(1500, {}, opt)) discs.insert(r.disc_field);
  EXPECT_EQ(discs, oracle::field_discriminants(1500, 15));
}

TEST(Field, EnumerationWithS) {
  EnumerationOptions opt;
  for (const auto& r : enumerate_fields(2000, {2, 3}, opt)) {
    for (long long p : {2LL, 3LL}) {
      EXPECT_TRUE(r.splitting.at(p).non_decomposed);
      int sum = 0;
      for (const auto& f : r.splitting.at(p).factors) sum += f.e * f.f;
      EXPECT_EQ(sum, 3);
    }
  }
}

TEST(Units, FundamentalUnitsOfSevenField) {
  const auto r = make_field_record(kSeven);
  for (long long H : {1LL, 2LL, 10LL}) {
    const auto fu = find_fundamental_units(r, H);
    EXPECT_NEAR(fu.regulator, 0.5254546821225, 1e-10);
    EXPECT_EQ(fu.status, UnitStatus::kCandidate);
  }
}

TEST(Units, InsufficientSearchHeight) {
  const auto r = make_field_record({0, -14, -19});
  EXPECT_THROW(find_fundamental_units(r, 8), InvalidInput);
  EXPECT_NO_THROW(find_fundamental_units(r, 32));
  EXPECT_THROW(find_fundamental_units(r, 0), InvalidInput);
}

TEST(Units, TableConfirmation) {
  const auto& t = table();
  const auto it = std::find_if(t.begin(), t.end(), [](const FieldRecord& r) { return r.disc_field == 49; });
  ASSERT_NE(it, t.end());
  const auto fu = find_fundamental_units(*it, 3);
  EXPECT_EQ(fu.status, UnitStatus::kTableConfirmed);
  EXPECT_NEAR(fu.regulator, it->R, 1e-9 * it->R);
  EXPECT_NEAR(regulator(it->fundamental_units), it->R, 1e-9 * it->R);
}

TEST(Units, RegulatorRejectsDependentUnits) {
  const auto r = make_field_record(kSeven);
  const auto u = make_unit(r, OrderElement::from(0, 1, 0));
  const auto u2 = make_unit(r, power(kSeven, OrderElement::from(0, 1, 0), -3));
  const std::vector<UnitElement> same{u, u};
  EXPECT_THROW(regulator(same), InvalidInput);
  const std::vector<UnitElement> dep{u, u2};
  EXPECT_THROW(regulator(dep), InvalidInput);
  EXPECT_THROW(make_unit(r, OrderElement::from(2, 0, 0)), InvalidInput);
}

TEST(Units, ThetaIsAUnitWithKnownAlpha) {
  const auto r = with_units(kSeven, 2);
  const auto u = make_unit(r, OrderElement::from(0, 1, 0));
  EXPECT_NEAR(u.alpha[0], 0.7363, 1e-4);
  EXPECT_NEAR(u.alpha[1], 2.0607, 1e-4);
  const auto box = enumerate_units_in_box(r, {10.0, 10.0});
  EXPECT_TRUE(std::find(box.units.begin(), box.units.end(), u) != box.units.end());
}

TEST(Units, BoxEdgeCases) {
  auto r = with_units(kSeven, 2);
  EXPECT_TRUE(enumerate_units_in_box(r, {0.0, 0.0}).units.empty());
  EXPECT_THROW(enumerate_units_in_box(r, {10.0, 10.0}, true), NotCertified);
  EXPECT_THROW(enumerate_units_in_box(r, {-1.0, 10.0}), InvalidInput);
  r.unit_status = UnitStatus::kTableConfirmed;
  EXPECT_NO_THROW(enumerate_units_in_box(r, {3.0, 3.0}, true));
  r.fundamental_units.clear();
  EXPECT_THROW(enumerate_units_in_box(r, {3.0, 3.0}), InvalidInput);
}

TEST(Units, BoxContainsUnitsBeyondFiftyFromTheSevenField) {
  // Documented behaviour: the box (10, 10) holds units whose power-basis
  // coordinates exceed 50, so a |coords| <= 50 search cannot be complete.
  const auto r = with_units(kSeven, 2);
  const auto box = enumerate_units_in_box(r, {10.0, 10.0});
  const auto bf = oracle::units_in_box({-1, -2, 1}, 50, {10.0, 10.0});
  long long max_coord = 0;
  std::size_t small = 0;
  for (const auto& u : box.units) {
    long long m = 0;
    for (auto c : u.coords) m = std::max(m, std::llabs(c));
    max_coord = std::max(max_coord, m);
    if (m <= 50) ++small;
  }
  EXPECT_GT(max_coord, 50);
  EXPECT_EQ(small, bf.size());
}

// ---------------------------------------------------------------- properties

TEST(NumberFieldProperties, NormAgreesWithMatrixOracle) {
  testing_support::Gen g(51);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::array<long long, 3> f{g.integer(-5, 5), g.integer(-30, 30), g.integer(-30, 30)};
    const std::array<long long, 3> x{g.integer(-200, 200), g.integer(-200, 200), g.integer(-200, 200)};
    const auto lib = norm({f[0], f[1], f[2]}, OrderElement::from(x[0], x[1], x[2]));
    const auto ora = oracle::norm(f, x);
    EXPECT_EQ(lib, BigInt(static_cast<long long>(ora)));  // |N| < 2^63 here
  }
}

TEST(NumberFieldProperties, TotalRealityIsPositiveDiscriminant) {
  testing_support::Gen g(52);
  for (int trial = 0; trial < 2000; ++trial) {
    const CubicPoly f{g.integer(-6, 6), g.integer(-40, 40), g.integer(-40, 40)};
    if (!is_irreducible(f)) continue;
    EXPECT_EQ(is_totally_real(f), oracle::totally_real({f.a, f.b, f.c}));
    EXPECT_EQ(real_root_count(f) == 3, discriminant(f) > 0);
  }
}

TEST(NumberFieldProperties, DedekindAgreesWithIntegralityOracle) {
  testing_support::Gen g(53);
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 400; ++trial) {
    const CubicPoly f{g.integer(-6, 6), g.integer(-30, 30), g.integer(-30, 30)};
    if (!is_irreducible(f)) continue;
    auto d = discriminant(f);
    if (d < 0) d = -d;
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
      if (d % (p * p) != 0) continue;
      EXPECT_EQ(dedekind_maximal_at_p(f, p), oracle::maximal_at({f.a, f.b, f.c}, p))
          << f.to_string() << " p=" << p;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(NumberFieldProperties, SplittingDegreesSumToThree) {
  for (const auto& r : table()) {
    for (long long p : primes_up_to(60)) {
      if (!dedekind_maximal_at_p(r.poly, p)) continue;
      const auto st = splitting_type(r.poly, p);
      int sum = 0;
      for (const auto& f : st.factors) sum += f.e * f.f;
      EXPECT_EQ(sum, 3);
      EXPECT_EQ(st.non_decomposed, st.factors.size() == 1);
    }
  }
}

TEST(NumberFieldProperties, BoxMatchesBruteForceOnSmallFields) {
  testing_support::Gen g(54);
  const long long H = 60;
  for (const auto& r : table()) {
    if (r.disc_field > 200) continue;
    const auto all = oracle::units_in_box({r.poly.a, r.poly.b, r.poly.c}, H, {10.0, 10.0});
    for (int trial = 0; trial < 12; ++trial) {
      const std::array<double, 2> T{trial == 0 ? 10.0 : g.uniform(0.0, 10.0),
                                    trial == 0 ? 10.0 : g.uniform(0.0, 10.0)};
      const auto box = enumerate_units_in_box(r, T, true);
      std::set<std::array<long long, 3>> lib, ora;
      for (const auto& u : box.units) {
        const auto n = oracle::norm({r.poly.a, r.poly.b, r.poly.c}, u.coords);
        EXPECT_TRUE(n == 1 || n == -1);
        long long m = 0;
        for (auto c : u.coords) m = std::max(m, std::llabs(c));
        if (m <= H) lib.insert(u.coords);
      }
      for (const auto& u : all) {
        if (u.alpha[0] <= T[0] && u.alpha[1] <= T[1]) ora.insert(u.coords);
      }
      EXPECT_EQ(lib, ora) << r.poly.to_string() << " T=(" << T[0] << "," << T[1] << ")";
    }
  }
}

TEST(NumberFieldProperties, InverseSwapsAlpha) {
  for (const auto& r : table()) {
    if (r.disc_field > 500) continue;
    for (const auto& u : brute_force_units(r, 6)) {
      const auto inv = make_unit(r, unit_inverse(r.poly, OrderElement::from(u.coords[0], u.coords[1], u.coords[2])));
      EXPECT_NEAR(inv.alpha[0], u.alpha[1], 1e-9);
      EXPECT_NEAR(inv.alpha[1], u.alpha[0], 1e-9);
    }
  }
}

TEST(NumberFieldProperties, IngestedRowsRevalidate) {
  ASSERT_EQ(table().size(), 58u);
  for (const auto& r : table()) {
    EXPECT_EQ(static_cast<long long>(discriminant(r.poly)), r.disc_field);
    for (const auto& u : r.fundamental_units) {
      const auto n = norm(r.poly, OrderElement::from(u.coords[0], u.coords[1], u.coords[2]));
      EXPECT_TRUE(n == 1 || n == -1);
    }
    EXPECT_NEAR(regulator(r.fundamental_units), r.R, 1e-9 * r.R);
    if (minkowski_h1_certificate(r) == MinkowskiVerdict::kHIsOne) {
      EXPECT_EQ(r.h, 1);
    }
    EXPECT_TRUE(oracle::maximal({r.poly.a, r.poly.b, r.poly.c}));
  }
}

TEST(Bridge, SpectrumAgreesWithTheta) {
  std::vector<FieldRecord> records;
  std::vector<UnitBox> boxes;
  std::vector<long> lambdas;
  std::vector<FieldUnitSet> sets;
  for (const auto& r : table()) {
    if (r.disc_field > 400) continue;
    records.push_back(r);
    boxes.push_back(enumerate_units_in_box(r, {6.0, 6.0}));
    lambdas.push_back(static_cast<long>(records.size()));
    sets.push_back(unit_set(r, boxes.back(), lambdas.back()));
  }
  const auto s = field_to_spectrum(records, boxes, lambdas);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_GT(s.det_factor(i), 0.0);
    EXPECT_LT(s.det_factor(i), 1.0);
    EXPECT_EQ(s.label(i).find(','), std::string::npos);
  }
  testing_support::Gen g(55);
  for (int trial = 0; trial < 50; ++trial) {
    CountQuery q{{g.uniform(0, 6), g.uniform(0, 6)}, BoundScale::kLog, 0, {}};
    EXPECT_NEAR(psi(s, q), theta_S(sets, q), 1e-12 * (1 + psi(s, q)));
  }
}

TEST(Bridge, ToyField) {
  auto r = with_units(kSeven, 2);
  r.R = 0.5;
  auto box = enumerate_units_in_box(r, {10.0, 10.0});
  box.units.resize(2);
  const std::vector<FieldRecord> records{r};
  const std::vector<UnitBox> boxes{box};
  const std::vector<long> lambdas{3};
  const auto s = field_to_spectrum(records, boxes, lambdas);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.flat_volume(0), 1.5);
  EXPECT_EQ(s.flat_volume(1), 1.5);
  EXPECT_EQ(unit_set(r, box, 3).weight(), 1.5);
}
