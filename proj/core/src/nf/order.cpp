#include "pgt/nf/order.hpp"

#include <limits>

#include "pgt/error.hpp"

namespace pgt::nf {

OrderElement OrderElement::canonical_sign() const {
  for (const auto& v : c) {
    if (v != 0) return v > 0 ? *this : negated();
  }
  return *this;
}

std::array<long long, 3> OrderElement::to_ll() const {
  std::array<long long, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (c[i] > std::numeric_limits<long long>::max() || c[i] < std::numeric_limits<long long>::min()) {
      throw NumericalFailure("order element coordinate exceeds 64 bits");
    }
    out[i] = static_cast<long long>(c[i]);
  }
  return out;
}

std::string OrderElement::to_string() const {
  return "(" + c[0].str() + "," + c[1].str() + "," + c[2].str() + ")";
}

OrderElement multiply(const CubicPoly& f, const OrderElement& x, const OrderElement& y) {
  std::array<BigInt, 5> e{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) e[i + j] += x.c[i] * y.c[j];
  }
  // theta^3 = -a theta^2 - b theta - c, applied from the top degree down.
  for (int d = 4; d >= 3; --d) {
    const BigInt t = e[d];
    e[d] = 0;
    e[d - 1] -= f.a * t;
    e[d - 2] -= f.b * t;
    e[d - 3] -= f.c * t;
  }
  return {{e[0], e[1], e[2]}};
}

OrderElement power(const CubicPoly& f, const OrderElement& x, long long e) {
  OrderElement base = e < 0 ? unit_inverse(f, x) : x;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  OrderElement result = OrderElement::one();
  while (n > 0) {
    if (n & 1) result = multiply(f, result, base);
    n >>= 1;
    if (n > 0) base = multiply(f, base, base);
  }
  return result;
}

std::array<std::array<BigInt, 3>, 3> multiplication_matrix(const CubicPoly& f,
                                                           const OrderElement& x) {
  std::array<std::array<BigInt, 3>, 3> m{};
  OrderElement col = x;
  const OrderElement theta = OrderElement::from(0, 1, 0);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m[i][j] = col.c[i];
    col = multiply(f, col, theta);
  }
  return m;
}

OrderElement unit_inverse(const CubicPoly& f, const OrderElement& x) {
  const auto m = multiplication_matrix(f, x);
  const BigInt det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det != 1 && det != -1) throw InvalidInput("element " + x.to_string() + " is not a unit");
  // x^{-1} = M^{-1} e_1 = adj(M) e_1 / det: the first column of the adjugate.
  OrderElement inv{{m[1][1] * m[2][2] - m[1][2] * m[2][1],
                    -(m[1][0] * m[2][2] - m[1][2] * m[2][0]),
                    m[1][0] * m[2][1] - m[1][1] * m[2][0]}};
  for (auto& v : inv.c) v *= det;  // det = +-1, so dividing equals multiplying
  return inv;
}

BigInt resultant(std::span<const BigInt> f_in, std::span<const BigInt> g_in) {
  std::vector<BigInt> f(f_in.begin(), f_in.end());
  std::vector<BigInt> g(g_in.begin(), g_in.end());
  while (!f.empty() && f.back() == 0) f.pop_back();
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (f.empty() || g.empty()) return 0;
  const std::size_t m = f.size() - 1;
  const std::size_t n = g.size() - 1;
  if (m == 0 && n == 0) return 1;
  const std::size_t size = m + n;
  if (size == 0) return 1;
  if (n == 0) {
    BigInt r = 1;
    for (std::size_t i = 0; i < m; ++i) r *= g[0];
    return r;
  }
  if (m == 0) {
    BigInt r = 1;
    for (std::size_t i = 0; i < n; ++i) r *= f[0];
    return r;
  }
  // Rows 0..n-1 hold shifted f, rows n..n+m-1 shifted g; highest degree first.
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[n - k];
  }
  // Bareiss fraction-free elimination.
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (s[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < size && s[swap][k] == 0) ++swap;
      if (swap == size) return 0;
      std::swap(s[k], s[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        s[i][j] = (s[i][j] * s[k][k] - s[i][k] * s[k][j]) / prev;
      }
    }
    prev = s[k][k];
  }
  return sign * s[size - 1][size - 1];
}

BigInt norm(const CubicPoly& f, const OrderElement& x) {
  const std::array<BigInt, 4> fp{f.c, f.b, f.a, 1};
  return resultant(fp, x.c);
}

double embed(const OrderElement& x, double root) {
  return static_cast<double>(embed_long(x, root));
}

long double embed_long(const OrderElement& x, long double root) {
  return (x.c[2].convert_to<long double>() * root + x.c[1].convert_to<long double>()) * root +
         x.c[0].convert_to<long double>();
}

}  // namespace pgt::nf
