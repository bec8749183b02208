#pragma once

// Monic integer cubics x^3 + a x^2 + b x + c: discriminant, Sturm-certified
// real roots, factorisation mod p, the Dedekind criterion and splitting.

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>
#include <vector>

namespace pgt::nf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct CubicPoly {
  long long a = 0;
  long long b = 0;
  long long c = 0;

  friend bool operator==(const CubicPoly&, const CubicPoly&) = default;

  // "x^3 - x^2 - 2x + 1"
  [[nodiscard]] std::string to_string() const;
  // "a,b,c" - the cache key.
  [[nodiscard]] std::string key() const;
};

// Ordering used to pick a canonical polynomial: (|a|, |b|, |c|, a, b, c).
bool canonical_less(const CubicPoly& x, const CubicPoly& y);

BigInt discriminant(const CubicPoly& poly);

// Irreducible over Q iff no integer root (rational root theorem).
bool is_irreducible(const CubicPoly& poly);

// Number of distinct real roots by a Sturm sequence.
int real_root_count(const CubicPoly& poly);

// Throws InvalidInput for reducible input.
bool is_totally_real(const CubicPoly& poly);

// A real root inside [lo, hi]; f changes sign on the interval.
struct RootInterval {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;  // Newton-polished point inside the interval
};

// Three disjoint certified intervals of width <= precision, ordered by
// decreasing root. Requires an irreducible, totally real cubic.
std::array<RootInterval, 3> real_embeddings(const CubicPoly& poly, double precision = 1e-12);

// Uncertified roots (trigonometric formula, Newton polished), decreasing.
std::array<double, 3> approximate_roots(const CubicPoly& poly);

// ------------------------------------------------------------- mod p

bool is_prime(long long n);
std::vector<long long> primes_up_to(long long n);
// Prime factorisation of |n|, n != 0.
std::vector<std::pair<long long, int>> factorize(long long n);

inline constexpr long long kMaxPrime = 10'000'000;

struct PrimeFactor {
  int e = 1;  // ramification index = multiplicity mod p
  int f = 1;  // residue degree = degree of the factor
  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

// Factorisation pattern of the poly mod p, as (multiplicity, degree) pairs
// sorted by (f, e). Valid as a splitting type only where Z[theta] is p-maximal.
std::vector<PrimeFactor> factor_pattern_mod_p(const CubicPoly& poly, long long p);

// Dedekind's criterion: Z[theta] is maximal at p.
bool dedekind_maximal_at_p(const CubicPoly& poly, long long p);

struct SplittingType {
  long long p = 0;
  std::vector<PrimeFactor> factors;
  bool non_decomposed = false;
  int f_p = 0;  // residue degree of the unique prime when non-decomposed, else 0
};

// Throws NotCertified when Z[theta] is not p-maximal.
SplittingType splitting_type(const CubicPoly& poly, long long p);

}  // namespace pgt::nf
