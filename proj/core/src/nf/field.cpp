#include "pgt/nf/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pgt/chamber.hpp"
#include "pgt/error.hpp"
#include "pgt/parallel.hpp"

namespace pgt::nf {

__extension__ using int128 = __int128;

const char* to_string(RecordSource s) noexcept {
  return s == RecordSource::kComputed ? "computed" : "ingested";
}

const char* to_string(UnitStatus s) noexcept {
  switch (s) {
    case UnitStatus::kNone: return "none";
    case UnitStatus::kCandidate: return "candidate";
    case UnitStatus::kTableConfirmed: return "table_confirmed";
    case UnitStatus::kIngested: return "ingested";
  }
  return "?";
}

const char* to_string(MinkowskiVerdict v) noexcept {
  return v == MinkowskiVerdict::kHIsOne ? "h_is_1" : "inconclusive";
}

namespace {

long long checked_ll(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
    throw InvalidInput("value exceeds 64 bits");
  }
  return static_cast<long long>(v);
}

bool maximal_at_square_divisors(const CubicPoly& poly, long long disc) {
  for (const auto& [p, e] : factorize(disc)) {
    if (e >= 2 && !dedekind_maximal_at_p(poly, p)) return false;
  }
  return true;
}

}  // namespace

FieldRecord make_field_record(const CubicPoly& poly) {
  if (!is_totally_real(poly)) {
    throw InvalidInput("polynomial " + poly.to_string() + " is not totally real");
  }
  FieldRecord r;
  r.poly = poly;
  r.disc_poly = checked_ll(discriminant(poly));
  r.embeddings = real_embeddings(poly, 1e-12);
  r.cert.maximal = maximal_at_square_divisors(poly, r.disc_poly);
  r.disc_field = r.cert.maximal ? r.disc_poly : 0;
  return r;
}

UnitElement make_unit(const FieldRecord& record, const OrderElement& u_in) {
  const BigInt n = norm(record.poly, u_in);
  if (n != 1 && n != -1) {
    throw InvalidInput("element " + u_in.to_string() + " has norm " + n.str() + " != +-1");
  }
  const OrderElement u = u_in.canonical_sign();
  UnitElement out;
  out.coords = u.to_ll();
  std::array<long double, 3> e{};
  for (std::size_t i = 0; i < 3; ++i) e[i] = embed_long(u, record.embeddings[i].value);
  // The smallest embedding suffers cancellation; recover it from the norm.
  std::size_t small = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::fabs(e[i]) < std::fabs(e[small])) small = i;
  }
  const long double others = e[(small + 1) % 3] * e[(small + 2) % 3];
  e[small] = static_cast<long double>(n == 1 ? 1 : -1) / others;
  std::array<double, 3> logs{};
  for (std::size_t i = 0; i < 3; ++i) {
    out.embeddings[i] = static_cast<double>(e[i]);
    logs[i] = static_cast<double>(std::log(std::fabs(e[i])));
  }
  const auto alpha = alpha_from_log_moduli(logs);
  out.alpha = {alpha[0], alpha[1]};
  out.regular = alpha[0] > 0.0 && alpha[1] > 0.0;
  return out;
}

bool satisfies_S(const CubicPoly& poly, const std::set<long long>& S) {
  for (long long p : S) {
    if (!dedekind_maximal_at_p(poly, p)) return false;
    if (factor_pattern_mod_p(poly, p).size() != 1) return false;
  }
  return true;
}

long lambda_S(const CubicPoly& poly, const std::set<long long>& S, bool allow_small_S) {
  if (S.size() < 2 && !allow_small_S) {
    throw InvalidInput("S must contain at least two primes (override for toy runs)");
  }
  long product = 1;
  for (long long p : S) {
    const auto st = splitting_type(poly, p);
    if (!st.non_decomposed) {
      throw InvalidInput("p = " + std::to_string(p) + " decomposes in the field of " +
                         poly.to_string());
    }
    product *= st.f_p;
  }
  return product;
}

double c_constant(int d) {
  if (d < 3 || !is_prime(d)) throw InvalidInput("d must be a prime >= 3");
  double product = 1.0;
  for (int k = 1; k < d; ++k) product *= 2.0 * k * (d - k);
  return std::pow(std::numbers::sqrt2, 1 - d) * product;
}

double minkowski_bound(long long disc_field) {
  if (disc_field <= 0) throw InvalidInput("field discriminant must be positive");
  return 2.0 / 9.0 * std::sqrt(static_cast<double>(disc_field));
}

MinkowskiVerdict minkowski_h1_certificate(const FieldRecord& record) {
  if (!record.cert.maximal) throw NotCertified("record is not certified maximal");
  const double bound = minkowski_bound(record.disc_field);
  for (long long p : primes_up_to(static_cast<long long>(std::floor(bound)))) {
    for (const auto& factor : splitting_type(record.poly, p).factors) {
      if (std::pow(static_cast<double>(p), factor.f) <= bound) return MinkowskiVerdict::kInconclusive;
    }
  }
  return MinkowskiVerdict::kHIsOne;
}

std::optional<OrderElement> root_in_order(const CubicPoly& f, const CubicPoly& g) {
  const auto r = approximate_roots(f);
  const auto s = approximate_roots(g);
  // Vandermonde rows (1, r_i, r_i^2); solve by Cramer's rule.
  using LD = long double;
  auto det3 = [](const std::array<std::array<LD, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  std::array<std::array<LD, 3>, 3> v{};
  for (int i = 0; i < 3; ++i) v[i] = {1.0L, static_cast<LD>(r[i]), static_cast<LD>(r[i]) * r[i]};
  const LD dv = det3(v);
  std::array<int, 3> perm{0, 1, 2};
  do {
    std::array<long long, 3> u{};
    bool sane = true;
    for (int col = 0; col < 3; ++col) {
      auto m = v;
      for (int i = 0; i < 3; ++i) m[i][col] = s[perm[i]];
      const LD x = det3(m) / dv;
      if (!(std::fabs(x) < 1e15L)) {
        sane = false;
        break;
      }
      u[col] = std::llround(static_cast<double>(x));
    }
    if (!sane) continue;
    const OrderElement x = OrderElement::from(u[0], u[1], u[2]);
    const OrderElement x2 = multiply(f, x, x);
    const OrderElement x3 = multiply(f, x2, x);
    OrderElement value;
    for (int i = 0; i < 3; ++i) {
      value.c[i] = x3.c[i] + g.a * x2.c[i] + g.b * x.c[i] + (i == 0 ? BigInt(g.c) : BigInt(0));
    }
    if (value.is_zero()) return x;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

bool are_isomorphic(const CubicPoly& f, const CubicPoly& g) {
  if (discriminant(f) != discriminant(g)) return false;
  return root_in_order(f, g).has_value();
}

std::vector<FieldRecord> enumerate_fields(long long disc_bound, const std::set<long long>& S,
                                          const EnumerationOptions& options) {
  if (disc_bound <= 0) throw InvalidInput("discriminant bound must be positive");
  if (S.size() < 2 && !options.allow_small_S) {
    throw InvalidInput("S must contain at least two primes (override for toy runs)");
  }
  if (options.a_bound < 0 || options.b_bound < 0 || options.c_bound < 0) {
    throw InvalidInput("coefficient bounds must be nonnegative");
  }
  for (long long p : S) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " in S is not prime");
  }
  struct Candidate {
    CubicPoly poly;
    long long disc;
  };
  const auto a_count = static_cast<std::size_t>(2 * options.a_bound + 1);
  std::vector<std::vector<Candidate>> per_a(a_count);
  parallel_for(a_count, options.threads, [&](std::size_t ia) {
    const long long a = static_cast<long long>(ia) - options.a_bound;
    for (long long b = -options.b_bound; b <= options.b_bound; ++b) {
      for (long long c = -options.c_bound; c <= options.c_bound; ++c) {
        if (c == 0) continue;
        const int128 A = a, B = b, C = c;
        const int128 disc = 18 * A * B * C - 4 * A * A * A * C + A * A * B * B - 4 * B * B * B - 27 * C * C;
        if (disc <= 0 || disc > disc_bound) continue;
        const CubicPoly poly{a, b, c};
        if (!is_irreducible(poly)) continue;
        const auto d = static_cast<long long>(disc);
        if (!maximal_at_square_divisors(poly, d)) continue;
        if (!satisfies_S(poly, S)) continue;
        per_a[ia].push_back({poly, d});
      }
    }
  });
  std::vector<Candidate> all;
  for (auto& v : per_a) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(), [](const Candidate& x, const Candidate& y) {
    if (x.disc != y.disc) return x.disc < y.disc;
    return canonical_less(x.poly, y.poly);
  });

  std::vector<Candidate> reps;
  std::size_t group_start = 0;
  for (const auto& cand : all) {
    if (!reps.empty() && reps.back().disc != cand.disc) group_start = reps.size();
    bool seen = false;
    for (std::size_t i = group_start; i < reps.size() && !seen; ++i) {
      seen = reps[i].disc == cand.disc && root_in_order(reps[i].poly, cand.poly).has_value();
    }
    if (!seen) reps.push_back(cand);
  }

  std::vector<FieldRecord> out(reps.size());
  parallel_for(reps.size(), options.threads, [&](std::size_t i) {
    FieldRecord r = make_field_record(reps[i].poly);
    for (long long p : S) r.splitting[p] = splitting_type(r.poly, p);
    if (minkowski_h1_certificate(r) == MinkowskiVerdict::kHIsOne) {
      r.h = 1;
      r.cert.h_certified_minkowski = true;
    }
    out[i] = std::move(r);
  });
  return out;
}

}  // namespace pgt::nf
