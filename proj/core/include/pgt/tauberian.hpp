#pragma once

// Tauberian side: the ratio B(x), kernels f = f1 * f1 with nonnegative
// transform, smoothed integrals of B against them, synthetic spectra and
// convergence reports along rays.
//
// Fourier convention throughout: fhat(xi) = int f(x) e^{-i xi x} dx, so that
// int fhat = 2 pi f(0).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgt/chamber.hpp"
#include "pgt/dirichlet.hpp"

namespace pgt {

// A * prod x_k^{-(j+1)} * exp(-sum x_k); computed in log space.
double b_ratio(double A_value, std::span<const double> x, int j);

enum class KernelShape { kMollifierSquare };

// f1(t) = exp(-1 / (1 - (t/S1)^2)) on (-S1, S1), sampled at step S1/N.
// All derived quantities belong to the sampled kernel: f is the trapezoid
// convolution of the samples and fhat is its exact discrete-time transform,
// (delta * sum_n f1_n cos(xi t_n))^2, so Parseval holds to rounding.
class Kernel {
 public:
  [[nodiscard]] double support_half_width() const noexcept { return s1_; }  // of f1
  [[nodiscard]] std::size_t resolution() const noexcept { return f1_.size() - 1; }
  [[nodiscard]] double step() const noexcept { return delta_; }

  // f on its sample grid (linear interpolation between samples).
  [[nodiscard]] double f(double x) const;
  [[nodiscard]] double f_at_zero() const noexcept { return f0_; }
  [[nodiscard]] double fhat(double xi) const;
  [[nodiscard]] double fhat_at_zero() const noexcept { return fhat(0.0); }

  // |fhat| < 1e-14 * fhat(0) beyond this point.
  [[nodiscard]] double fhat_cutoff() const noexcept { return cutoff_; }

  // Tabulation of fhat computed from the samples of f (not from f1).
  [[nodiscard]] double fhat_grid_step() const noexcept { return grid_step_; }
  [[nodiscard]] std::span<const double> fhat_table() const noexcept { return table_; }
  [[nodiscard]] double fhat_min_raw() const noexcept { return min_raw_; }

  // Kernel for c * f1, so f and fhat scale by c^2.
  [[nodiscard]] Kernel scaled(double factor) const;

  friend Kernel make_kernel(KernelShape, double, std::size_t);

 private:
  Kernel() = default;
  void derive();

  double s1_ = 1.0;
  double delta_ = 0.0;
  std::vector<double> f1_;  // f1(n delta), n = 0..N (even function)
  std::vector<double> f_;   // f(m delta), m = 0..2N
  double f0_ = 0.0;
  double cutoff_ = 0.0;
  double grid_step_ = 0.0;
  std::vector<double> table_;
  double min_raw_ = 0.0;
};

inline constexpr double kFhatNegativeTolerance = 1e-10;
inline constexpr double kFhatTruncation = 1e-14;

// Throws InvalidInput for S1 <= 0 or fewer than 32 samples per half-width,
// NumericalFailure if the tabulated transform dips below -1e-10 (after which
// negative table values are clamped to zero).
Kernel make_kernel(KernelShape shape, double s1, std::size_t resolution = 1024);

// (1/y^k) int_0^inf x^k fhat(y - x) dx by adaptive Gauss-Kronrod panels over
// the support of the truncated fhat. Tends to 2 pi f(0) as y grows.
double moment_check(const Kernel& kernel, int k, double y);

// A counting function A(x): either the step function of a spectrum or the
// exact continuum scale * (prod x_k)^{j+1} e^{sum x_k}.
class CountingFunction {
 public:
  static CountingFunction of(std::shared_ptr<const Spectrum> spectrum);
  static CountingFunction exact_continuum(std::size_t rank, double scale = 1.0);

  [[nodiscard]] bool is_continuum() const noexcept { return spectrum_ == nullptr; }
  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }
  [[nodiscard]] const Spectrum* spectrum() const noexcept { return spectrum_.get(); }

  [[nodiscard]] double A(std::span<const double> x, int j, unsigned threads = 1) const;
  // B(x); for the continuum this is evaluated without forming A.
  [[nodiscard]] double B(std::span<const double> x, int j, unsigned threads = 1) const;

 private:
  std::shared_ptr<const Spectrum> spectrum_;
  std::size_t rank_ = 1;
  double scale_ = 1.0;
};

// int A(x) e^{-s.x} dx. Spectra use L_integral; the continuum is integrated
// numerically (double-exponential quadrature per axis).
Complex laplace_transform(const CountingFunction& source, std::span<const Complex> s, int j);

// int_{R_+^r} B(x) (x_1...x_r / y_1...y_r)^{j+1} prod fhat(y_k - x_k) dx.
// Spectra are summed class by class against per-axis tail transforms;
// the continuum is integrated on a tensor Gauss-Legendre grid.
double smoothed_test(const CountingFunction& source, const Kernel& kernel,
                     std::span<const double> y, int j, unsigned threads = 1);

enum class Generator { kProductLattice, kChebyshev, kExactContinuum, kPoleModel };

const char* to_string(Generator g) noexcept;
Generator generator_from_string(const std::string& name);

struct SynthSpec {
  Generator generator = Generator::kProductLattice;
  std::size_t rank = 1;
  int j = 0;
  double step = 0.5;    // lattice step h
  double cutoff = 1.0;  // X on the log scale: classes with every l_k <= X
  double scale = 1.0;   // exact_continuum only
  std::optional<PoleModel> model;  // kPoleModel only
};

// product_lattice: classes at n h, n in N^r, n_k h <= X, with
//   ind = prod_k [F(n_k h) - F((n_k - 1) h)] / (n_k h)^{j+1},  F(x) = x^{j+1} e^x,
// so that big_A equals prod F(x_k) exactly on the lattice.
// pole_model: the same construction for F = prod F_1 + sum_i c_i prod Re F_{theta_i},
// F_theta(x) = x^{j+1} e^{theta x}; rejected if some weight is not positive.
// chebyshev: classes at log p^m with flat_volume = Lambda(p^m), det = 1, and
// products of these for r > 1.
// exact_continuum is not a spectrum; use counting_function().
Spectrum synth_spectrum(const SynthSpec& spec);
CountingFunction counting_function(const SynthSpec& spec);

// Prime powers n <= limit as (n, p), increasing in n.
std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_powers(std::uint64_t limit);

struct VerdictRow {
  double radius = 0.0;
  double B = 0.0;
  double tail_sup = 0.0;
  double tail_inf = 0.0;
};

// B at x = radius * ray for increasing radii, with sup and inf of B over the
// samples at or beyond each radius.
std::vector<VerdictRow> wiener_ikehara_verdict(const CountingFunction& source, int j,
                                               std::span<const double> ray,
                                               std::span<const double> radii,
                                               unsigned threads = 1);

}  // namespace pgt
