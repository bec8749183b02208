#include "pgt/dirichlet.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "pgt/error.hpp"
#include "pgt/summation.hpp"

namespace pgt {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

void require_rank(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw InvalidInput(std::string(what) + " has " + std::to_string(got) +
                       " coordinates, expected " + std::to_string(expected));
  }
}

class ComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  [[nodiscard]] Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

}  // namespace

Complex L_sum(const Spectrum& spectrum, std::span<const Complex> s, int j) {
  require_rank(spectrum.rank(), s.size(), "s");
  if (j < 0) throw InvalidInput("j must be nonnegative");
  ComplexSum total;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    auto l = spectrum.lengths(i);
    // Log-space so that huge indices and tiny exponentials cancel safely.
    Complex exponent = std::log(spectrum.index(i));
    for (std::size_t k = 0; k < l.size(); ++k) {
      exponent += static_cast<double>(j + 1) * std::log(l[k]) - s[k] * l[k];
    }
    total.add(std::exp(exponent));
  }
  return total.value();
}

Complex L_integral(const Spectrum& spectrum, std::span<const Complex> s, int j) {
  require_rank(spectrum.rank(), s.size(), "s");
  Complex prod{1.0, 0.0};
  for (const auto& sk : s) {
    if (!(sk.real() > 0.0)) {
      throw InvalidInput("Laplace transform of A needs Re(s_k) > 0");
    }
    prod *= sk;
  }
  return L_sum(spectrum, s, j) / prod;
}

Complex pole_term_value(std::span<const Complex> theta, std::span<const Complex> s, int j) {
  require_rank(theta.size(), s.size(), "s");
  if (j < 0) throw InvalidInput("j must be nonnegative");
  const double fact = factorial(j + 1);
  Complex value{1.0, 0.0};
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Complex shift = s[k] - theta[k];
    if (shift == Complex{0.0, 0.0}) {
      throw PoleHit("s lies on the pole divisor s_" + std::to_string(k + 1) + " = theta_" +
                    std::to_string(k + 1));
    }
    value *= fact / std::pow(shift, j + 2);
  }
  return value;
}

PoleModel::PoleModel(std::size_t rank, int j, std::vector<PoleTerm> terms,
                     bool enforce_constraints)
    : rank_(rank), j_(j), terms_(std::move(terms)) {
  if (rank == 0) throw InvalidInput("pole model rank must be positive");
  if (j < 0) throw InvalidInput("j must be nonnegative");
  for (const auto& t : terms_) {
    require_rank(rank, t.theta.size(), "pole term");
    if (!enforce_constraints) continue;
    bool some_below = false;
    for (const auto& th : t.theta) {
      if (th.real() > 1.0) throw InvalidInput("pole term has Re(theta_k) > 1");
      some_below = some_below || th.real() < 1.0;
    }
    if (!some_below) throw InvalidInput("pole term needs Re(theta_k) < 1 for some k");
  }
  auto key = [](const PoleTerm& t) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& th : t.theta) m = std::min(m, th.real());
    return m;
  };
  std::stable_sort(terms_.begin(), terms_.end(),
                   [&](const PoleTerm& a, const PoleTerm& b) { return key(a) > key(b); });
}

Region Region::box(std::span<const Complex> center, double half_width) {
  Region r;
  for (const auto& c : center) {
    r.re_lo.push_back(c.real() - half_width);
    r.re_hi.push_back(c.real() + half_width);
    r.im_lo.push_back(c.imag() - half_width);
    r.im_hi.push_back(c.imag() + half_width);
  }
  return r;
}

bool Region::contains(std::span<const Complex> s) const {
  if (s.size() != rank()) return false;
  for (std::size_t k = 0; k < rank(); ++k) {
    if (!(s[k].real() > re_lo[k] && s[k].real() < re_hi[k] && s[k].imag() > im_lo[k] &&
          s[k].imag() < im_hi[k])) {
      return false;
    }
  }
  return true;
}

bool Region::meets_divisor(std::span<const Complex> theta) const {
  // The divisor is a union of coordinate hyperplanes and the region a product,
  // so it meets the region iff some theta_k lies in the k-th factor.
  for (std::size_t k = 0; k < rank(); ++k) {
    const auto& t = theta[k];
    if (t.real() > re_lo[k] && t.real() < re_hi[k] && t.imag() > im_lo[k] &&
        t.imag() < im_hi[k]) {
      return true;
    }
  }
  return false;
}

MittagLefflerResult mittag_leffler_eval(const PoleModel& model, std::span<const Complex> s,
                                        const Region& region, double tail_tolerance) {
  require_rank(model.rank(), s.size(), "s");
  require_rank(model.rank(), region.rank(), "region");
  if (!(tail_tolerance > 0.0)) throw InvalidInput("tail tolerance must be positive");
  if (!region.contains(s)) throw InvalidInput("evaluation point lies outside the region");

  const auto leading = model.leading_theta();
  if (region.meets_divisor(leading)) {
    throw PoleHit("the leading pole at (1,...,1) meets the evaluation region");
  }

  const int j = model.j();
  const double r = static_cast<double>(model.rank());
  const double scale = std::pow(factorial(j + 1), r);

  MittagLefflerResult result;
  ComplexSum total;
  total.add(pole_term_value(leading, s, j));
  for (const auto& term : model.terms()) {
    if (region.meets_divisor(term.theta)) {
      ++result.terms_excluded;
      continue;
    }
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.size(); ++k) dist = std::min(dist, std::abs(s[k] - term.theta[k]));
    const double bound =
        scale * std::fabs(static_cast<double>(term.coeff)) / std::pow(dist, r * (j + 2));
    if (bound < tail_tolerance) {
      result.truncated = true;
      break;
    }
    total.add(static_cast<double>(term.coeff) * pole_term_value(term.theta, s, j));
    ++result.terms_used;
  }
  result.value = total.value();
  return result;
}

namespace {

// int_0^inf t^m e^{-z t} dt by composite Gauss-Legendre, Re z > 0.
Complex laplace_power(Complex z, int m, std::size_t panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const double a = z.real();
  // Beyond this point t^m e^{-a t} is below 1e-17 of the integral's scale.
  const double upper = (2.0 * m + 45.0) / a;
  const double width = upper / static_cast<double>(panels);
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  ComplexSum total;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * width;
    const double half = 0.5 * width;
    auto f = [&](double t) { return std::pow(t, m) * std::exp(-z * t); };
    // boost stores the nonnegative half of a symmetric rule.
    Complex panel = x[0] == 0.0 ? w[0] * f(mid) : Complex{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) continue;
      panel += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
    }
    total.add(half * panel);
  }
  return total.value();
}

}  // namespace

ChamberIntegralCheck chamber_integral_check(std::span<const Complex> s,
                                            std::span<const Complex> theta, int j,
                                            std::size_t panels) {
  require_rank(theta.size(), s.size(), "s");
  if (j < 0) throw InvalidInput("j must be nonnegative");
  if (panels == 0) throw InvalidInput("quadrature needs at least one panel");
  Complex numeric{1.0, 0.0};
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Complex shift = s[k] - theta[k];
    if (!(shift.real() > 0.0)) {
      throw InvalidInput("chamber integral diverges unless Re(s_k - theta_k) > 0");
    }
    numeric *= laplace_power(shift, j + 1, panels);
  }
  ChamberIntegralCheck out;
  out.numeric = numeric;
  out.closed_form = pole_term_value(theta, s, j);
  out.abs_difference = std::abs(out.numeric - out.closed_form);
  out.rel_difference = out.abs_difference / std::abs(out.closed_form);
  return out;
}

std::vector<double> fit_leading_coefficient(const Spectrum& spectrum, int j,
                                            std::span<const double> sigmas) {
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 1.0)) throw InvalidInput("sigma values must exceed 1");
    if (i > 0 && !(sigmas[i] < sigmas[i - 1])) {
      throw InvalidInput("sigma sequence must be strictly decreasing");
    }
  }
  const std::size_t r = spectrum.rank();
  const double scale = std::pow(factorial(j + 1), static_cast<double>(r));
  std::vector<double> out;
  out.reserve(sigmas.size());
  for (double sigma : sigmas) {
    const std::vector<Complex> s(r, Complex{sigma, 0.0});
    const double value = L_sum(spectrum, s, j).real();
    out.push_back(std::pow(sigma - 1.0, static_cast<double>(r) * (j + 2)) * value / scale);
  }
  return out;
}

}  // namespace pgt
