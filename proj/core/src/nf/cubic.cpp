#include "pgt/nf/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "pgt/error.hpp"

namespace pgt::nf {

__extension__ using int128 = __int128;

std::string CubicPoly::to_string() const {
  std::ostringstream out;
  out << "x^3";
  auto term = [&](long long k, const char* mono) {
    if (k == 0) return;
    out << (k < 0 ? " - " : " + ");
    const long long m = k < 0 ? -k : k;
    if (m != 1 || mono[0] == '\0') out << m;
    out << mono;
  };
  term(a, "x^2");
  term(b, "x");
  term(c, "");
  return out.str();
}

std::string CubicPoly::key() const {
  return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
}

bool canonical_less(const CubicPoly& x, const CubicPoly& y) {
  auto k = [](const CubicPoly& p) {
    return std::make_tuple(std::llabs(p.a), std::llabs(p.b), std::llabs(p.c), p.a, p.b, p.c);
  };
  return k(x) < k(y);
}

BigInt discriminant(const CubicPoly& poly) {
  const BigInt a = poly.a, b = poly.b, c = poly.c;
  return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

namespace {

BigInt eval(const CubicPoly& p, const BigInt& x) { return ((x + p.a) * x + p.b) * x + p.c; }

}  // namespace

bool is_irreducible(const CubicPoly& poly) {
  if (poly.c == 0) return false;
  const long long c = std::llabs(poly.c);
  for (long long d = 1; d * d <= c; ++d) {
    if (c % d != 0) continue;
    for (long long r : {d, -d, c / d, -(c / d)}) {
      if (eval(poly, BigInt(r)) == 0) return false;
    }
  }
  return true;
}

namespace {

// Dense polynomial with rational coefficients, lowest degree first.
using RPoly = std::vector<Rational>;

void trim(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly remainder(RPoly num, const RPoly& den) {
  trim(num);
  while (num.size() >= den.size() && !num.empty()) {
    const Rational factor = num.back() / den.back();
    const std::size_t shift = num.size() - den.size();
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= factor * den[i];
    num.pop_back();
    trim(num);
  }
  return num;
}

Rational eval(const RPoly& p, const Rational& x) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

std::vector<RPoly> sturm_chain(const CubicPoly& poly) {
  RPoly f{Rational(poly.c), Rational(poly.b), Rational(poly.a), Rational(1)};
  RPoly df{Rational(poly.b), Rational(2 * poly.a), Rational(3)};
  std::vector<RPoly> chain{f, df};
  while (true) {
    RPoly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& v : r) v = -v;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int changes_at(const std::vector<RPoly>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(sign(eval(p, x)));
  return sign_changes(s);
}

int changes_at_infinity(const std::vector<RPoly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& p : chain) {
    int v = sign(p.back());
    if (!positive && (p.size() - 1) % 2 == 1) v = -v;
    s.push_back(v);
  }
  return sign_changes(s);
}

void require_irreducible(const CubicPoly& poly) {
  if (!is_irreducible(poly)) {
    throw InvalidInput("polynomial " + poly.to_string() + " is reducible over Q");
  }
}

double round_down(const Rational& r) {
  double d = static_cast<double>(r);
  if (Rational(d) > r) d = std::nextafter(d, -INFINITY);
  return d;
}

double round_up(const Rational& r) {
  double d = static_cast<double>(r);
  if (Rational(d) < r) d = std::nextafter(d, INFINITY);
  return d;
}

}  // namespace

int real_root_count(const CubicPoly& poly) {
  const auto chain = sturm_chain(poly);
  return changes_at_infinity(chain, false) - changes_at_infinity(chain, true);
}

bool is_totally_real(const CubicPoly& poly) {
  require_irreducible(poly);
  return real_root_count(poly) == 3;
}

std::array<RootInterval, 3> real_embeddings(const CubicPoly& poly, double precision) {
  require_irreducible(poly);
  if (!(precision > 0.0)) throw InvalidInput("precision must be positive");
  const auto chain = sturm_chain(poly);
  if (changes_at_infinity(chain, false) - changes_at_infinity(chain, true) != 3) {
    throw InvalidInput("polynomial " + poly.to_string() + " is not totally real");
  }
  // Cauchy bound; roots are irrational so no bisection point is ever a root.
  const long long m = 1 + std::max({std::llabs(poly.a), std::llabs(poly.b), std::llabs(poly.c)});
  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<std::pair<Rational, Rational>> stack{{Rational(-m), Rational(m)}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = changes_at(chain, lo) - changes_at(chain, hi);
    if (n == 0) continue;
    if (n == 1) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    const Rational mid = (lo + hi) / 2;
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  if (isolated.size() != 3) throw NumericalFailure("root isolation did not find 3 roots");

  const RPoly f = chain.front();
  const Rational target(precision / 2);
  std::array<RootInterval, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    auto [lo, hi] = isolated[i];
    int s_lo = sign(eval(f, lo));
    while (hi - lo > target) {
      const Rational mid = (lo + hi) / 2;
      const int s = sign(eval(f, mid));
      if (s == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    RootInterval r{round_down(lo), round_up(hi), 0.0};
    long double x = 0.5L * (static_cast<long double>(r.lo) + r.hi);
    for (int it = 0; it < 4; ++it) {
      const long double fx = ((x + poly.a) * x + poly.b) * x + poly.c;
      const long double dfx = (3 * x + 2 * poly.a) * x + poly.b;
      if (dfx == 0) break;
      x -= fx / dfx;
    }
    r.value = std::clamp(static_cast<double>(x), r.lo, r.hi);
    out[i] = r;
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.value > y.value; });
  return out;
}

std::array<double, 3> approximate_roots(const CubicPoly& poly) {
  const double a = static_cast<double>(poly.a);
  const double b = static_cast<double>(poly.b);
  const double c = static_cast<double>(poly.c);
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  if (!(p < 0.0)) throw InvalidInput("cubic does not have three real roots");
  const double m = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  std::array<double, 3> roots{};
  for (int k = 0; k < 3; ++k) {
    long double x = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0;
    for (int it = 0; it < 3; ++it) {
      const long double fx = ((x + poly.a) * x + poly.b) * x + poly.c;
      const long double dfx = (3 * x + 2 * poly.a) * x + poly.b;
      if (dfx == 0) break;
      x -= fx / dfx;
    }
    roots[k] = static_cast<double>(x);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

// ------------------------------------------------------------- mod p

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<long long> primes_up_to(long long n) {
  std::vector<long long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (long long p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (long long m = p * p; m <= n; m += p) composite[m] = true;
  }
  return out;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n == 0) throw InvalidInput("cannot factor 0");
  n = std::llabs(n);
  std::vector<std::pair<long long, int>> out;
  for (long long d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

long long mod(long long x, long long p) {
  x %= p;
  return x < 0 ? x + p : x;
}

// Polynomials over F_p, lowest degree first, trimmed.
using PPoly = std::vector<long long>;

void trim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long long inverse_mod(long long x, long long p) {
  long long result = 1;
  long long base = mod(x, p);
  long long e = p - 2;
  while (e > 0) {
    if (e & 1) result = static_cast<long long>((int128)result * base % p);
    base = static_cast<long long>((int128)base * base % p);
    e >>= 1;
  }
  return result;
}

PPoly poly_mod(PPoly num, const PPoly& den, long long p) {
  trim(num);
  const long long inv = inverse_mod(den.back(), p);
  while (num.size() >= den.size() && !num.empty()) {
    const long long factor = static_cast<long long>((int128)num.back() * inv % p);
    const std::size_t shift = num.size() - den.size();
    for (std::size_t i = 0; i < den.size(); ++i) {
      num[shift + i] = mod(num[shift + i] - static_cast<long long>((int128)factor * den[i] % p), p);
    }
    trim(num);
  }
  return num;
}

PPoly poly_gcd(PPoly x, PPoly y, long long p) {
  trim(x);
  trim(y);
  while (!y.empty()) {
    PPoly r = poly_mod(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

struct ModPFactorisation {
  std::vector<std::pair<long long, int>> roots;  // distinct roots with multiplicity
  PPoly rest;  // monic irreducible factor of degree 2 or 3, or {1}
};

ModPFactorisation factor_mod_p(const CubicPoly& poly, long long p) {
  if (p < 2 || p > kMaxPrime || !is_prime(p)) {
    throw InvalidInput("p = " + std::to_string(p) + " is not a supported prime");
  }
  PPoly f{mod(poly.c, p), mod(poly.b, p), mod(poly.a, p), 1};
  ModPFactorisation out;
  for (long long r = 0; r < p && f.size() > 1; ++r) {
    int mult = 0;
    while (f.size() > 1) {
      // Synthetic division by (x - r).
      PPoly q(f.size() - 1);
      long long carry = 0;
      for (std::size_t i = f.size(); i-- > 1;) {
        carry = mod(f[i] + static_cast<long long>((int128)carry * r % p), p);
        q[i - 1] = carry;
      }
      const long long remainder = mod(f[0] + static_cast<long long>((int128)carry * r % p), p);
      if (remainder != 0) break;
      f = std::move(q);
      ++mult;
    }
    if (mult > 0) out.roots.emplace_back(r, mult);
  }
  out.rest = f;
  return out;
}

using IPoly = std::vector<int128>;

IPoly mul(const IPoly& x, const IPoly& y) {
  IPoly out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

PPoly reduce(const IPoly& x, long long p) {
  PPoly out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int128 v = x[i] % p;
    if (v < 0) v += p;
    out[i] = static_cast<long long>(v);
  }
  trim(out);
  return out;
}

}  // namespace

std::vector<PrimeFactor> factor_pattern_mod_p(const CubicPoly& poly, long long p) {
  const auto fac = factor_mod_p(poly, p);
  std::vector<PrimeFactor> out;
  for (const auto& [r, e] : fac.roots) out.push_back({e, 1});
  if (fac.rest.size() > 1) out.push_back({1, static_cast<int>(fac.rest.size() - 1)});
  std::sort(out.begin(), out.end(),
            [](const PrimeFactor& x, const PrimeFactor& y) { return std::tie(x.f, x.e) < std::tie(y.f, y.e); });
  return out;
}

bool dedekind_maximal_at_p(const CubicPoly& poly, long long p) {
  if (!is_irreducible(poly)) {
    throw InvalidInput("polynomial " + poly.to_string() + " is reducible over Q");
  }
  const auto fac = factor_mod_p(poly, p);
  // f = prod g_i^{e_i} mod p; g = prod g_i, h = prod g_i^{e_i - 1} (lifts with
  // coefficients in [0, p)); F = (f - g h) / p.
  IPoly g{1};
  IPoly h{1};
  for (const auto& [r, e] : fac.roots) {
    const IPoly linear{static_cast<int128>(mod(-r, p)), 1};
    g = mul(g, linear);
    for (int k = 1; k < e; ++k) h = mul(h, linear);
  }
  if (fac.rest.size() > 1) {
    g = mul(g, IPoly(fac.rest.begin(), fac.rest.end()));
  }
  const IPoly gh = mul(g, h);
  IPoly big_f{poly.c, poly.b, poly.a, 1};
  big_f.resize(std::max(big_f.size(), gh.size()), 0);
  for (std::size_t i = 0; i < gh.size(); ++i) big_f[i] -= gh[i];
  for (auto& v : big_f) {
    if (v % p != 0) throw NumericalFailure("Dedekind lift is not congruent to f mod p");
    v /= p;
  }
  PPoly d = poly_gcd(reduce(big_f, p), reduce(g, p), p);
  d = poly_gcd(d, reduce(h, p), p);
  // Empty means F = 0 and h = 0 mod p, impossible since h is monic.
  return d.size() == 1;
}

SplittingType splitting_type(const CubicPoly& poly, long long p) {
  if (!dedekind_maximal_at_p(poly, p)) {
    throw NotCertified("Z[theta] is not maximal at p = " + std::to_string(p) +
                       "; splitting would need a finer analysis");
  }
  SplittingType out;
  out.p = p;
  out.factors = factor_pattern_mod_p(poly, p);
  out.non_decomposed = out.factors.size() == 1;
  out.f_p = out.non_decomposed ? out.factors.front().f : 0;
  return out;
}

}  // namespace pgt::nf
