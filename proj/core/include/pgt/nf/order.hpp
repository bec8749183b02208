#pragma once

// Exact arithmetic in Z[theta] = Z[x]/(f) for a monic cubic f, in the power
// basis 1, theta, theta^2.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pgt/nf/cubic.hpp"

namespace pgt::nf {

struct OrderElement {
  std::array<BigInt, 3> c{0, 0, 0};

  static OrderElement one() { return {{1, 0, 0}}; }
  static OrderElement from(long long c0, long long c1, long long c2) { return {{c0, c1, c2}}; }

  [[nodiscard]] bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
  [[nodiscard]] OrderElement negated() const { return {{-c[0], -c[1], -c[2]}}; }
  // Sign representative mod +-1: first nonzero coordinate positive.
  [[nodiscard]] OrderElement canonical_sign() const;
  [[nodiscard]] std::array<long long, 3> to_ll() const;  // throws if out of range
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const OrderElement&, const OrderElement&) = default;
};

OrderElement multiply(const CubicPoly& f, const OrderElement& x, const OrderElement& y);
// Negative exponents require a unit.
OrderElement power(const CubicPoly& f, const OrderElement& x, long long e);
// Throws InvalidInput unless x is a unit.
OrderElement unit_inverse(const CubicPoly& f, const OrderElement& x);

// Matrix of multiplication by x in the power basis (columns are x, x theta, x theta^2).
std::array<std::array<BigInt, 3>, 3> multiplication_matrix(const CubicPoly& f,
                                                           const OrderElement& x);

// Sylvester resultant of two integer polynomials (lowest degree first), by
// fraction-free elimination.
BigInt resultant(std::span<const BigInt> f, std::span<const BigInt> g);

// N(x) = prod_i x(rho_i) = Res(f, c0 + c1 t + c2 t^2).
BigInt norm(const CubicPoly& f, const OrderElement& x);

// Value at a real root.
double embed(const OrderElement& x, double root);
long double embed_long(const OrderElement& x, long double root);

}  // namespace pgt::nf
