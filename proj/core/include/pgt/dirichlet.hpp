#pragma once

// The generalised Dirichlet series L^j(s) over a spectrum, its closed-form
// pole terms D^{j+1} prod 1/(s_k - theta_k), and the Mittag-Leffler pole model.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pgt/chamber.hpp"

namespace pgt {

using Complex = std::complex<double>;

// sum_gamma ind(gamma) (prod_k l_k)^{j+1} exp(-sum_k s_k l_k).
Complex L_sum(const Spectrum& spectrum, std::span<const Complex> s, int j);

// Laplace transform of the step function A(x): L_sum / (s_1 ... s_r).
// Requires Re(s_k) > 0.
Complex L_integral(const Spectrum& spectrum, std::span<const Complex> s, int j);

// ((j+1)!)^r / prod_k (s_k - theta_k)^{j+2}. Throws PoleHit on the divisor.
Complex pole_term_value(std::span<const Complex> theta, std::span<const Complex> s, int j);

struct PoleTerm {
  std::vector<Complex> theta;
  long coeff = 0;
};

// Leading term at theta = (1,...,1) with coefficient 1, plus further terms
// kept in descending order of min_k Re(theta_k).
class PoleModel {
 public:
  // With `enforce_constraints`, every term must satisfy Re(theta_k) <= 1 for
  // all k and Re(theta_k) < 1 for at least one k.
  PoleModel(std::size_t rank, int j, std::vector<PoleTerm> terms,
            bool enforce_constraints = true);

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] int j() const noexcept { return j_; }
  [[nodiscard]] const std::vector<PoleTerm>& terms() const noexcept { return terms_; }
  [[nodiscard]] std::vector<Complex> leading_theta() const {
    return std::vector<Complex>(rank_, Complex{1.0, 0.0});
  }

 private:
  std::size_t rank_;
  int j_;
  std::vector<PoleTerm> terms_;
};

// An open box in C^r: re_lo < Re s_k < re_hi and im_lo < Im s_k < im_hi.
struct Region {
  std::vector<double> re_lo, re_hi, im_lo, im_hi;

  static Region box(std::span<const Complex> center, double half_width);

  [[nodiscard]] std::size_t rank() const noexcept { return re_lo.size(); }
  [[nodiscard]] bool contains(std::span<const Complex> s) const;
  // Whether some hyperplane s_k = theta_k meets the box.
  [[nodiscard]] bool meets_divisor(std::span<const Complex> theta) const;
};

struct MittagLefflerResult {
  Complex value;
  std::size_t terms_used = 0;
  std::size_t terms_excluded = 0;  // pole divisor meets the region
  bool truncated = false;          // tail bound dropped below tolerance
};

// Leading term plus every term whose pole divisor misses `region`, consumed in
// model order until the bound ((j+1)!)^r |coeff| / dist^{r(j+2)} falls below
// `tail_tolerance`, with dist = min_k |s_k - theta_k|.
MittagLefflerResult mittag_leffler_eval(const PoleModel& model, std::span<const Complex> s,
                                        const Region& region, double tail_tolerance = 1e-10);

struct ChamberIntegralCheck {
  Complex numeric;
  Complex closed_form;
  double abs_difference = 0.0;
  double rel_difference = 0.0;
};

// Iterated integral over the chamber, int (t_1...t_r)^{j+1} e^{-sum (s_k - theta_k) t_k} dt,
// by product Gauss-Legendre quadrature on a truncated domain with
// `panels` panels per axis, against the closed form.
ChamberIntegralCheck chamber_integral_check(std::span<const Complex> s,
                                            std::span<const Complex> theta, int j,
                                            std::size_t panels = 64);

// (sigma - 1)^{r(j+2)} L_sum(sigma,...,sigma) / ((j+1)!)^r for each sigma.
std::vector<double> fit_leading_coefficient(const Spectrum& spectrum, int j,
                                            std::span<const double> sigmas);

double factorial(int n);

}  // namespace pgt
