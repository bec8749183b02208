#pragma once

// Counting functions over a spectrum (psi, phi, phi_j, A, the epsilon
// restrictions, pi) and over unit lattices of number fields (theta_S), plus
// ratio tables against the predicted main terms.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgt/chamber.hpp"

namespace pgt {

// kLog: bounds are on the lengths l_k directly (additive convention).
// kMultiplicative: bounds T_k on a^{-alpha_k} = exp(l_k).
enum class BoundScale { kLog, kMultiplicative };

const char* to_string(BoundScale scale) noexcept;

struct CountQuery {
  std::vector<double> bounds;
  BoundScale scale = BoundScale::kLog;
  int j = 0;
  std::optional<double> epsilon;
};

// Bounds of q expressed on the log scale, validated against `rank`.
std::vector<double> log_bounds(const CountQuery& q, std::size_t rank);

// All box conditions are closed on the upper end: l_k <= bound_k for every k.
// `threads` only affects how per-class terms are evaluated; the reduction is
// always a compensated sum in canonical order.
double psi(const Spectrum& spectrum, const CountQuery& q, unsigned threads = 1);
double phi(const Spectrum& spectrum, const CountQuery& q, unsigned threads = 1);
double phi_j(const Spectrum& spectrum, const CountQuery& q, unsigned threads = 1);
double big_A(const Spectrum& spectrum, std::span<const double> x, int j,
             unsigned threads = 1);

// Restricted to classes with 1 - epsilon < det_factor < 1 (both strict).
double psi_eps(const Spectrum& spectrum, const CountQuery& q, unsigned threads = 1);
double phi_eps(const Spectrum& spectrum, const CountQuery& q, unsigned threads = 1);

// Number of classes in the same box as psi.
std::uint64_t pi_count(const Spectrum& spectrum, const CountQuery& q);

// Units (mod +-1) of one order, as alpha-coordinates, with the bookkeeping
// weight R h lambda_S. `certified_box` is the box inside which the unit list
// is known to be complete.
struct FieldUnitSet {
  std::string key;
  double regulator = 0.0;
  long class_number = 1;
  long lambda_s = 1;
  std::size_t rank = 2;
  std::vector<double> alphas;  // row-major, `rank` entries per unit
  std::vector<double> certified_box;

  [[nodiscard]] double weight() const noexcept {
    return regulator * static_cast<double>(class_number) * static_cast<double>(lambda_s);
  }
  [[nodiscard]] std::size_t unit_count() const noexcept {
    return rank == 0 ? 0 : alphas.size() / rank;
  }
};

// Sum of R h lambda_S over (order, unit) pairs with 0 < alpha_k <= T_k.
// Throws NotCertified when a field's enumeration does not cover the box.
double theta_S(std::span<const FieldUnitSet> fields, const CountQuery& q);

enum class Normalizer {
  kProductT,         // constant * prod T_k, bounds taken in the report's scale
  kProductTOverLogs, // prod T_k / log T_k with multiplicative T_k
  kPntProfile,       // prod x_k^{j+1} e^{x_k} with log-scale x_k
};

const char* to_string(Normalizer n) noexcept;
Normalizer normalizer_from_string(const std::string& name);

struct CountPoint {
  std::vector<double> bounds;
  double count = 0.0;
};

struct RatioRow {
  std::vector<double> bounds;
  double count = 0.0;
  double normalizer = 0.0;
  double ratio = 0.0;
};

struct RatioReport {
  Normalizer normalizer = Normalizer::kProductT;
  BoundScale scale = BoundScale::kMultiplicative;
  double constant = 1.0;
  int j = 0;
  std::string label;
  std::vector<RatioRow> rows;
};

double normalizer_value(Normalizer normalizer, std::span<const double> bounds,
                        BoundScale scale, double constant = 1.0, int j = 0);

// One row per point with ratio = count / normalizer, no smoothing.
RatioReport ratio_report(std::span<const CountPoint> points, BoundScale scale,
                         Normalizer normalizer, double constant = 1.0, int j = 0,
                         std::string label = {});

}  // namespace pgt
