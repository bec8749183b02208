#include "pgt/tauberian.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pgt/counting.hpp"
#include "pgt/error.hpp"
#include "pgt/parallel.hpp"
#include "pgt/summation.hpp"

namespace pgt {

namespace {

void require_positive(std::span<const double> x, const char* what) {
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInput(std::string(what) + " entries must be positive and finite");
    }
  }
}

// delta * (a_0 + 2 sum_{n>=1} a_n cos(xi n delta)) for an even sample sequence.
// The phase is advanced by complex rotation and re-anchored every 64 steps.
double cosine_transform(std::span<const double> a, double delta, double xi) {
  CompensatedSum sum;
  sum.add(a[0]);
  const std::complex<double> rot{std::cos(xi * delta), std::sin(xi * delta)};
  std::complex<double> z{1.0, 0.0};
  for (std::size_t n = 1; n < a.size(); ++n) {
    if (n % 64 == 0) {
      const double phase = xi * delta * static_cast<double>(n);
      z = {std::cos(phase), std::sin(phase)};
    } else {
      z *= rot;
    }
    if (a[n] != 0.0) sum.add(2.0 * a[n] * z.real());
  }
  return delta * sum.value();
}

// Gauss-Kronrod 31 on [a, b], bisecting while the error estimate exceeds an
// absolute budget (relative tolerances are meaningless where fhat is tiny).
template <typename F>
double integrate_panel(const F& f, double a, double b, double budget, int depth) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double error = 0.0;
  const double v = GK::integrate(f, a, b, 0, 0.0, &error);
  if (!std::isfinite(v)) throw NumericalFailure("non-finite quadrature value");
  if (error <= budget) return v;
  if (depth == 0) {
    throw NumericalFailure("quadrature failed to converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
  }
  const double m = 0.5 * (a + b);
  return integrate_panel(f, a, m, 0.5 * budget, depth - 1) +
         integrate_panel(f, m, b, 0.5 * budget, depth - 1);
}

template <typename F>
double integrate_range(const F& f, double a, double b, double panel_width, double budget) {
  if (!(b > a)) return 0.0;
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel_width));
  CompensatedSum total;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + (b - a) * static_cast<double>(p) / static_cast<double>(panels);
    const double hi = a + (b - a) * static_cast<double>(p + 1) / static_cast<double>(panels);
    total.add(integrate_panel(f, lo, hi, budget, 8));
  }
  return total.value();
}

double mollifier(double u) {
  if (std::fabs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

}  // namespace

double b_ratio(double A_value, std::span<const double> x, int j) {
  if (j < 0) throw InvalidInput("j must be nonnegative");
  if (!(A_value >= 0.0)) throw InvalidInput("A must be nonnegative");
  require_positive(x, "x");
  if (A_value == 0.0) return 0.0;
  double log_b = std::log(A_value);
  for (double v : x) log_b -= static_cast<double>(j + 1) * std::log(v) + v;
  return std::exp(log_b);
}

// ---------------------------------------------------------------- kernel

Kernel make_kernel(KernelShape shape, double s1, std::size_t resolution) {
  if (shape != KernelShape::kMollifierSquare) throw InvalidInput("unknown kernel shape");
  if (!(s1 > 0.0) || !std::isfinite(s1)) throw InvalidInput("S1 must be positive");
  if (resolution < 32) {
    throw InvalidInput("kernel resolution below 32 samples per half-width cannot certify "
                       "evenness and support");
  }
  Kernel k;
  k.s1_ = s1;
  k.delta_ = s1 / static_cast<double>(resolution);
  k.f1_.resize(resolution + 1);
  for (std::size_t n = 0; n <= resolution; ++n) {
    k.f1_[n] = mollifier(static_cast<double>(n) / static_cast<double>(resolution));
  }
  k.derive();
  return k;
}

Kernel Kernel::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidInput("scale must be positive");
  Kernel k = *this;
  for (double& v : k.f1_) v *= factor;
  k.derive();
  return k;
}

void Kernel::derive() {
  const std::size_t n_half = f1_.size() - 1;
  if (f1_.back() != 0.0) throw InvalidInput("f1 does not vanish at the edge of its support");
  auto f1_at = [&](long n) {
    const auto a = static_cast<std::size_t>(std::labs(n));
    return a <= n_half ? f1_[a] : 0.0;
  };
  const long N = static_cast<long>(n_half);
  f_.assign(2 * n_half + 1, 0.0);
  for (long m = 0; m <= 2 * N; ++m) {
    CompensatedSum sum;
    for (long n = std::max(-N, m - N); n <= std::min(N, m + N); ++n) {
      sum.add(f1_at(n) * f1_at(m - n));
    }
    f_[static_cast<std::size_t>(m)] = delta_ * sum.value();
  }
  f0_ = f_[0];
  if (!(f0_ > 0.0)) throw NumericalFailure("kernel has f(0) <= 0");

  // Truncation point: scan until fhat has stayed below threshold for a
  // stretch of 64 / S1, or the Nyquist limit is reached.
  grid_step_ = std::numbers::pi / (16.0 * s1_);
  cutoff_ = std::numeric_limits<double>::infinity();  // fhat() untruncated while scanning
  const double peak = fhat(0.0);
  const double threshold = kFhatTruncation * peak;
  const double nyquist = std::numbers::pi / delta_;
  double last_above = 0.0;
  for (double xi = grid_step_; xi < nyquist; xi += grid_step_) {
    if (fhat(xi) >= threshold) last_above = xi;
    if (xi > last_above + 64.0 / s1_) break;
  }
  cutoff_ = std::min(last_above + grid_step_, nyquist);

  // Independent tabulation from the samples of f.
  table_.clear();
  min_raw_ = std::numeric_limits<double>::infinity();
  const double table_end = std::min(1.25 * cutoff_, nyquist);
  for (std::size_t i = 0;; ++i) {
    const double xi = static_cast<double>(i) * grid_step_;
    if (xi > table_end) break;
    const double raw = cosine_transform(f_, delta_, xi);
    min_raw_ = std::min(min_raw_, raw);
    table_.push_back(std::max(raw, 0.0));
  }
  if (min_raw_ < -kFhatNegativeTolerance) {
    throw NumericalFailure("tabulated fhat dips to " + std::to_string(min_raw_));
  }
}

double Kernel::f(double x) const {
  const double pos = std::fabs(x) / delta_;
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= f_.size()) return 0.0;
  const double t = pos - static_cast<double>(i);
  return (1.0 - t) * f_[i] + t * f_[i + 1];
}

double Kernel::fhat(double xi) const {
  if (std::fabs(xi) > cutoff_) return 0.0;
  const double g = cosine_transform(f1_, delta_, std::fabs(xi));
  return g * g;
}

double moment_check(const Kernel& kernel, int k, double y) {
  if (k < 0) throw InvalidInput("k must be nonnegative");
  if (!(y > 0.0) || !std::isfinite(y)) throw InvalidInput("y must be positive");
  const double cut = kernel.fhat_cutoff();
  // Substituting u = y - x: int_{-cut}^{min(y, cut)} ((y - u)/y)^k fhat(u) du.
  const double lo = -cut;
  const double hi = std::min(y, cut);
  if (!(hi > lo)) return 0.0;
  const double width = 0.5 / kernel.support_half_width();
  auto integrand = [&](double u) { return std::pow((y - u) / y, k) * kernel.fhat(u); };
  return integrate_range(integrand, lo, hi, width, 1e-14 * kernel.fhat_at_zero());
}

// ---------------------------------------------------------------- counting functions

CountingFunction CountingFunction::of(std::shared_ptr<const Spectrum> spectrum) {
  if (!spectrum) throw InvalidInput("null spectrum");
  CountingFunction c;
  c.rank_ = spectrum->rank();
  c.spectrum_ = std::move(spectrum);
  return c;
}

CountingFunction CountingFunction::exact_continuum(std::size_t rank, double scale) {
  if (rank == 0) throw InvalidInput("rank must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInput("scale must be positive");
  CountingFunction c;
  c.rank_ = rank;
  c.scale_ = scale;
  return c;
}

double CountingFunction::A(std::span<const double> x, int j, unsigned threads) const {
  if (x.size() != rank_) throw InvalidInput("x has the wrong rank");
  if (spectrum_) return big_A(*spectrum_, x, j, threads);
  if (j < 0) throw InvalidInput("j must be nonnegative");
  double value = scale_;
  for (double v : x) {
    if (!(v >= 0.0)) throw InvalidInput("x entries must be nonnegative");
    value *= std::pow(v, j + 1) * std::exp(v);
  }
  return value;
}

double CountingFunction::B(std::span<const double> x, int j, unsigned threads) const {
  if (x.size() != rank_) throw InvalidInput("x has the wrong rank");
  if (spectrum_) return b_ratio(big_A(*spectrum_, x, j, threads), x, j);
  require_positive(x, "x");
  if (j < 0) throw InvalidInput("j must be nonnegative");
  double log_a = std::log(scale_);
  for (double v : x) log_a += static_cast<double>(j + 1) * std::log(v) + v;
  double log_b = log_a;
  for (double v : x) log_b -= static_cast<double>(j + 1) * std::log(v) + v;
  return std::exp(log_b);
}

Complex laplace_transform(const CountingFunction& source, std::span<const Complex> s, int j) {
  if (s.size() != source.rank()) throw InvalidInput("s has the wrong rank");
  if (!source.is_continuum()) return L_integral(*source.spectrum(), s, j);
  if (j < 0) throw InvalidInput("j must be nonnegative");
  boost::math::quadrature::exp_sinh<double> integrator;
  const double inf = std::numeric_limits<double>::infinity();
  Complex value{source.scale(), 0.0};
  for (const auto& sk : s) {
    const double a = sk.real() - 1.0;
    const double b = sk.imag();
    if (!(a > 0.0)) throw InvalidInput("Laplace transform of the continuum needs Re(s_k) > 1");
    // A's factor x^{j+1} e^x against e^{-s x}.
    auto part = [&](auto trig) {
      auto f = [&](double x) {
        if (x == 0.0) return 0.0;
        return std::exp(static_cast<double>(j + 1) * std::log(x) - a * x) * trig(b * x);
      };
      double error = 0.0;
      const double v = integrator.integrate(f, 0.0, inf, 1e-14, &error);
      return v;
    };
    const double re = part([](double t) { return std::cos(t); });
    const double im = -part([](double t) { return std::sin(t); });
    value *= Complex{re, im};
  }
  return value;
}

// ---------------------------------------------------------------- smoothed integrals

namespace {

// H(a) = int_a^inf e^{-(x - a)} fhat(y - x) dx on a uniform grid, with cubic
// Hermite interpolation using H'(a) = H(a) - fhat(y - a).
class TailTransform {
 public:
  TailTransform(const Kernel& kernel, double y, double a_max) : kernel_(kernel), y_(y) {
    const double cut = kernel.fhat_cutoff();
    lo_ = std::max(0.0, y - cut);
    hi_ = std::max(lo_, std::min(a_max, y + cut));
    eta_ = 0.01 / kernel.support_half_width();
    const auto cells = static_cast<std::size_t>(std::ceil((hi_ - lo_) / eta_)) + 1;
    hi_ = lo_ + static_cast<double>(cells) * eta_;
    h_.assign(cells + 1, 0.0);
    d_.assign(cells + 1, 0.0);
    using GL = boost::math::quadrature::gauss<double, 7>;
    const double top = y + cut;
    double tail = 0.0;
    if (hi_ < top) {
      auto f = [&](double x) { return std::exp(-(x - hi_)) * kernel_.fhat(y_ - x); };
      tail = integrate_range(f, hi_, top, 0.5 / kernel.support_half_width(),
                             1e-14 * kernel.fhat_at_zero());
    }
    h_[cells] = tail;
    const double decay = std::exp(-eta_);
    for (std::size_t i = cells; i-- > 0;) {
      const double a = node(i);
      const double b = node(i + 1);
      double piece = 0.0;
      if (a < top) {
        auto f = [&](double x) { return std::exp(-(x - a)) * kernel_.fhat(y_ - x); };
        piece = GL::integrate(f, a, b);
      }
      h_[i] = decay * h_[i + 1] + piece;
    }
    for (std::size_t i = 0; i <= cells; ++i) d_[i] = h_[i] - kernel_.fhat(y_ - node(i));
  }

  [[nodiscard]] double operator()(double a) const {
    if (a >= hi_) {
      if (a >= y_ + kernel_.fhat_cutoff()) return 0.0;
      // Beyond the table (only when a_max was smaller): integrate directly.
      auto f = [&](double x) { return std::exp(-(x - a)) * kernel_.fhat(y_ - x); };
      return integrate_range(f, a, y_ + kernel_.fhat_cutoff(),
                             0.5 / kernel_.support_half_width(),
                             1e-14 * kernel_.fhat_at_zero());
    }
    if (a <= lo_) return std::exp(-(lo_ - a)) * h_[0];
    const double pos = (a - lo_) / eta_;
    const auto i = std::min(static_cast<std::size_t>(pos), h_.size() - 2);
    const double t = pos - static_cast<double>(i);
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * h_[i] + (t3 - 2 * t2 + t) * eta_ * d_[i] +
           (-2 * t3 + 3 * t2) * h_[i + 1] + (t3 - t2) * eta_ * d_[i + 1];
  }

 private:
  [[nodiscard]] double node(std::size_t i) const { return lo_ + static_cast<double>(i) * eta_; }

  const Kernel& kernel_;
  double y_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double eta_ = 0.0;
  std::vector<double> h_;
  std::vector<double> d_;
};

double smoothed_spectrum(const Spectrum& spectrum, const Kernel& kernel,
                         std::span<const double> y, int j, unsigned threads) {
  const std::size_t r = spectrum.rank();
  if (spectrum.empty()) return 0.0;
  std::vector<TailTransform> tails;
  tails.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    double a_max = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i) a_max = std::max(a_max, spectrum.lengths(i)[k]);
    tails.emplace_back(kernel, y[k], a_max);
  }
  auto terms = evaluate_terms(spectrum.size(), threads, [&](std::size_t i) {
    auto l = spectrum.lengths(i);
    double log_w = std::log(spectrum.index(i));
    double product = 1.0;
    for (std::size_t k = 0; k < r; ++k) {
      log_w += static_cast<double>(j + 1) * std::log(l[k] / y[k]) - l[k];
      product *= tails[k](l[k]);
    }
    return product == 0.0 ? 0.0 : std::exp(log_w) * product;
  });
  return compensated_sum(terms);
}

double smoothed_continuum(const CountingFunction& source, const Kernel& kernel,
                          std::span<const double> y, int j, unsigned threads) {
  using GL = boost::math::quadrature::gauss<double, 8>;
  const auto& abscissa = GL::abscissa();
  const auto& gl_weights = GL::weights();
  const std::size_t r = source.rank();
  const double cut = kernel.fhat_cutoff();
  const double width = 0.5 / kernel.support_half_width();
  std::vector<std::vector<double>> nodes(r), weights(r);
  for (std::size_t k = 0; k < r; ++k) {
    const double lo = std::max(0.0, y[k] - cut);
    const double hi = y[k] + cut;
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    const double w = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = lo + (static_cast<double>(p) + 0.5) * w;
      auto push = [&](double x, double gw) {
        const double weight = 0.5 * w * gw * std::pow(x / y[k], j + 1) * kernel.fhat(y[k] - x);
        if (weight != 0.0) {
          nodes[k].push_back(x);
          weights[k].push_back(weight);
        }
      };
      for (std::size_t i = 0; i < abscissa.size(); ++i) {
        if (abscissa[i] == 0.0) {
          push(mid, gl_weights[i]);
        } else {
          push(mid - 0.5 * w * abscissa[i], gl_weights[i]);
          push(mid + 0.5 * w * abscissa[i], gl_weights[i]);
        }
      }
    }
    if (nodes[k].empty()) return 0.0;
  }
  // Rows over the first axis; within a row an odometer over the others.
  auto rows = evaluate_terms(nodes[0].size(), threads, [&](std::size_t i0) {
    std::vector<std::size_t> idx(r, 0);
    idx[0] = i0;
    std::vector<double> x(r);
    CompensatedSum row;
    while (true) {
      double w = 1.0;
      for (std::size_t k = 0; k < r; ++k) {
        x[k] = nodes[k][idx[k]];
        w *= weights[k][idx[k]];
      }
      row.add(source.B(x, j) * w);
      std::size_t k = r;
      while (k-- > 1) {
        if (++idx[k] < nodes[k].size()) break;
        idx[k] = 0;
      }
      if (k == 0 || r == 1) break;
    }
    return row.value();
  });
  return compensated_sum(rows);
}

}  // namespace

double smoothed_test(const CountingFunction& source, const Kernel& kernel,
                     std::span<const double> y, int j, unsigned threads) {
  if (y.size() != source.rank()) throw InvalidInput("y has the wrong rank");
  require_positive(y, "y");
  if (j < 0) throw InvalidInput("j must be nonnegative");
  if (source.is_continuum()) return smoothed_continuum(source, kernel, y, j, threads);
  return smoothed_spectrum(*source.spectrum(), kernel, y, j, threads);
}

// ---------------------------------------------------------------- generators

const char* to_string(Generator g) noexcept {
  switch (g) {
    case Generator::kProductLattice: return "product_lattice";
    case Generator::kChebyshev: return "chebyshev";
    case Generator::kExactContinuum: return "exact_continuum";
    case Generator::kPoleModel: return "pole_model";
  }
  return "?";
}

Generator generator_from_string(const std::string& name) {
  for (auto g : {Generator::kProductLattice, Generator::kChebyshev, Generator::kExactContinuum,
                 Generator::kPoleModel}) {
    if (name == to_string(g)) return g;
  }
  throw InvalidInput("unknown generator '" + name + "'");
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_powers(std::uint64_t limit) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    for (std::uint64_t q = p;; q *= p) {
      out.emplace_back(q, p);
      if (q > limit / p) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr std::size_t kMaxSynthClasses = 50'000'000;
constexpr double kMaxLogWeight = 700.0;

// n h for n = 1..floor(X/h), tolerant of X being an exact multiple of h.
std::size_t lattice_count(double h, double cutoff) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("lattice step must be positive");
  const double steps = std::floor(cutoff / h * (1.0 + 1e-12));
  if (steps < 1.0) throw InvalidInput("cutoff too small: no lattice point in (0, X]");
  return static_cast<std::size_t>(steps);
}

// Increment of theta-weighted F over ((n-1)h, nh], F(x) = x^{j+1} e^{theta x}.
Complex increment(Complex theta, std::size_t n, double h, int j) {
  const double x = static_cast<double>(n) * h;
  const Complex upper = std::pow(x, j + 1) * std::exp(theta * x);
  if (n == 1) return upper;
  const double prev = static_cast<double>(n - 1) * h;
  return upper - std::pow(prev, j + 1) * std::exp(theta * prev);
}

// log of ind-factor for the leading continuum on one axis:
// log([F(nh) - F((n-1)h)] / (nh)^{j+1}) = nh + log(1 - ((n-1)/n)^{j+1} e^{-h}).
double leading_log_factor(std::size_t n, double h, int j) {
  const double nn = static_cast<double>(n);
  const double ratio = std::pow((nn - 1.0) / nn, j + 1) * std::exp(-h);
  return nn * h + std::log1p(-ratio);
}

Spectrum lattice_spectrum(const SynthSpec& spec) {
  const std::size_t r = spec.rank;
  const double h = spec.step;
  const std::size_t n_max = lattice_count(h, spec.cutoff);
  double total = 1.0;
  for (std::size_t k = 0; k < r; ++k) total *= static_cast<double>(n_max);
  if (total > static_cast<double>(kMaxSynthClasses)) {
    throw InvalidInput("lattice too large: " + std::to_string(total) + " classes");
  }
  if (static_cast<double>(r) * (spec.cutoff + 1.0) > kMaxLogWeight) {
    throw InvalidInput("cutoff too large for double-precision weights");
  }
  const auto count = static_cast<std::size_t>(total);
  std::vector<double> lengths;
  std::vector<double> weight;
  lengths.reserve(count * r);
  weight.reserve(count);
  std::vector<std::size_t> n(r, 1);
  const bool pole = spec.generator == Generator::kPoleModel;
  for (std::size_t c = 0; c < count; ++c) {
    double log_w = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
      lengths.push_back(static_cast<double>(n[k]) * h);
      log_w += leading_log_factor(n[k], h, spec.j);
    }
    double w = std::exp(log_w);
    if (pole) {
      double denom = 1.0;
      for (std::size_t k = 0; k < r; ++k) denom *= std::pow(static_cast<double>(n[k]) * h, spec.j + 1);
      CompensatedSum sum;
      sum.add(w);
      for (const auto& term : spec.model->terms()) {
        Complex prod{1.0, 0.0};
        for (std::size_t k = 0; k < r; ++k) prod *= increment(term.theta[k], n[k], h, spec.j);
        sum.add(static_cast<double>(term.coeff) * prod.real() / denom);
      }
      w = sum.value();
      if (!(w > 0.0)) {
        throw InvalidInput("pole model gives a non-positive lattice weight; A would not be "
                           "monotone");
      }
    }
    weight.push_back(w);
    // Lexicographic odometer, last axis fastest.
    for (std::size_t k = r; k-- > 0;) {
      if (++n[k] <= n_max) break;
      n[k] = 1;
    }
  }
  std::vector<double> det(count, 1.0);
  return Spectrum::from_columns(r, std::move(lengths), std::move(weight), std::move(det), {},
                                Provenance::kSynthetic);
}

Spectrum chebyshev_spectrum(const SynthSpec& spec) {
  if (spec.cutoff > 21.0) throw InvalidInput("chebyshev cutoff above 21 is not supported");
  auto limit = static_cast<std::uint64_t>(std::floor(std::exp(spec.cutoff)));
  while (limit >= 2 && std::log(static_cast<double>(limit)) > spec.cutoff) --limit;
  while (std::log(static_cast<double>(limit + 1)) <= spec.cutoff) ++limit;
  if (limit < 2) throw InvalidInput("cutoff too small: no prime power up to e^X");
  const auto pp = prime_powers(limit);
  const std::size_t r = spec.rank;
  double total = 1.0;
  for (std::size_t k = 0; k < r; ++k) total *= static_cast<double>(pp.size());
  if (total > static_cast<double>(kMaxSynthClasses)) {
    throw InvalidInput("chebyshev product too large: " + std::to_string(total) + " classes");
  }
  const auto count = static_cast<std::size_t>(total);
  std::vector<double> log_n(pp.size()), lambda(pp.size());
  for (std::size_t i = 0; i < pp.size(); ++i) {
    log_n[i] = std::log(static_cast<double>(pp[i].first));
    lambda[i] = std::log(static_cast<double>(pp[i].second));
  }
  std::vector<double> lengths;
  std::vector<double> flat;
  lengths.reserve(count * r);
  flat.reserve(count);
  std::vector<std::size_t> idx(r, 0);
  for (std::size_t c = 0; c < count; ++c) {
    double w = 1.0;
    for (std::size_t k = 0; k < r; ++k) {
      lengths.push_back(log_n[idx[k]]);
      w *= lambda[idx[k]];
    }
    flat.push_back(w);
    for (std::size_t k = r; k-- > 0;) {
      if (++idx[k] < pp.size()) break;
      idx[k] = 0;
    }
  }
  std::vector<double> det(count, 1.0);
  return Spectrum::from_columns(r, std::move(lengths), std::move(flat), std::move(det), {},
                                Provenance::kChebyshev);
}

void check_spec(const SynthSpec& spec) {
  if (spec.rank == 0) throw InvalidInput("rank must be positive");
  if (spec.j < 0) throw InvalidInput("j must be nonnegative");
  if (!(spec.cutoff > 0.0) || !std::isfinite(spec.cutoff)) {
    throw InvalidInput("cutoff too small: X must be positive");
  }
  if (spec.generator == Generator::kPoleModel) {
    if (!spec.model) throw InvalidInput("pole_model generator needs a pole model");
    if (spec.model->rank() != spec.rank || spec.model->j() != spec.j) {
      throw InvalidInput("pole model rank/j differ from the synth spec");
    }
  }
}

}  // namespace

Spectrum synth_spectrum(const SynthSpec& spec) {
  check_spec(spec);
  switch (spec.generator) {
    case Generator::kProductLattice:
    case Generator::kPoleModel: return lattice_spectrum(spec);
    case Generator::kChebyshev: return chebyshev_spectrum(spec);
    case Generator::kExactContinuum:
      throw InvalidInput("exact_continuum is not a spectrum; use a counting function");
  }
  throw InvalidInput("unknown generator");
}

CountingFunction counting_function(const SynthSpec& spec) {
  if (spec.generator == Generator::kExactContinuum) {
    if (spec.j < 0) throw InvalidInput("j must be nonnegative");
    return CountingFunction::exact_continuum(spec.rank, spec.scale);
  }
  return CountingFunction::of(std::make_shared<const Spectrum>(synth_spectrum(spec)));
}

// ---------------------------------------------------------------- verdicts

std::vector<VerdictRow> wiener_ikehara_verdict(const CountingFunction& source, int j,
                                               std::span<const double> ray,
                                               std::span<const double> radii,
                                               unsigned threads) {
  if (ray.size() != source.rank()) throw InvalidInput("ray has the wrong rank");
  require_positive(ray, "ray");
  require_positive(radii, "radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw InvalidInput("radii must be strictly increasing");
  }
  std::vector<VerdictRow> rows(radii.size());
  std::vector<double> x(ray.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (std::size_t k = 0; k < ray.size(); ++k) x[k] = radii[i] * ray[k];
    rows[i].radius = radii[i];
    rows[i].B = source.B(x, j, threads);
  }
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = rows.size(); i-- > 0;) {
    sup = std::max(sup, rows[i].B);
    inf = std::min(inf, rows[i].B);
    rows[i].tail_sup = sup;
    rows[i].tail_inf = inf;
  }
  return rows;
}

}  // namespace pgt
