#pragma once

// Weyl-chamber spectral data: chamber coordinates of regular classes, the
// index weight, and the SL_d eigenvalue specialisation used for units.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pgt {

struct Fraction {
  int numerator = 0;
  int denominator = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Simple-root basis of a^* of rank r. With 2 rho = alpha_1 + ... + alpha_r the
// coordinates of rho are all 1/2, and Haar measure is normalised so that the
// unit alpha-box has volume one (Lebesgue measure in alpha coordinates).
class ChamberBasis {
 public:
  explicit ChamberBasis(std::size_t rank);

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] std::vector<Fraction> rho_alpha_coords() const;

  friend bool operator==(const ChamberBasis&, const ChamberBasis&) = default;

 private:
  std::size_t rank_;
};

// One regular conjugacy class, stored through its alpha-length coordinates
// l_k = |alpha_k(log a)|, its flat volume and det(1 - a m | n).
struct GeodesicClass {
  std::vector<double> lengths;
  double flat_volume = 1.0;
  double det_factor = 1.0;
  std::string label;
};

// Throws InvalidInput unless every length is positive and finite,
// flat_volume > 0 and det_factor lies in (0, 1].
void validate(const GeodesicClass& cls);

// ind = flat_volume / det_factor.
double index_of(const GeodesicClass& cls);

enum class Provenance { kSynthetic, kChebyshev, kNumberField, kManual };

const char* to_string(Provenance p) noexcept;
Provenance provenance_from_string(const std::string& name);

// An immutable, canonically ordered collection of classes of one rank.
// Storage is columnar; classes are ordered lexicographically by lengths and
// then by label so that every reduction over a spectrum is reproducible.
class Spectrum {
 public:
  Spectrum(ChamberBasis basis, std::vector<GeodesicClass> classes,
           Provenance provenance);

  // Bulk constructor for large generated spectra; lengths is row-major with
  // `rank` entries per class. Labels may be empty.
  static Spectrum from_columns(std::size_t rank, std::vector<double> lengths,
                               std::vector<double> flat_volume,
                               std::vector<double> det_factor,
                               std::vector<std::string> labels,
                               Provenance provenance);

  [[nodiscard]] const ChamberBasis& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t rank() const noexcept { return basis_.rank(); }
  [[nodiscard]] std::size_t size() const noexcept { return flat_volume_.size(); }
  [[nodiscard]] bool empty() const noexcept { return flat_volume_.empty(); }
  [[nodiscard]] Provenance provenance() const noexcept { return provenance_; }

  [[nodiscard]] std::span<const double> lengths(std::size_t i) const noexcept {
    return {lengths_.data() + i * rank(), rank()};
  }
  [[nodiscard]] double flat_volume(std::size_t i) const noexcept { return flat_volume_[i]; }
  [[nodiscard]] double det_factor(std::size_t i) const noexcept { return det_factor_[i]; }
  [[nodiscard]] double index(std::size_t i) const noexcept {
    return flat_volume_[i] / det_factor_[i];
  }
  [[nodiscard]] const std::string& label(std::size_t i) const noexcept { return labels_[i]; }

  [[nodiscard]] GeodesicClass at(std::size_t i) const;

 private:
  Spectrum(ChamberBasis basis, Provenance provenance);
  void canonicalize();

  ChamberBasis basis_;
  Provenance provenance_;
  std::vector<double> lengths_;
  std::vector<double> flat_volume_;
  std::vector<double> det_factor_;
  std::vector<std::string> labels_;
};

// How the adjoint eigenvalues rho_j / rho_i on n are formed.
//   kModulus: ratios of absolute values; the value for the split part a of a m.
//   kSigned:  signed ratios; the value for a m itself, positive but it can
//             exceed 1 when the eigenvalues carry mixed signs.
enum class AdjointSign { kModulus, kSigned };

// Tolerance on | |prod rho_i| - 1 | for SL_d eigenvalue tuples.
inline constexpr double kDeterminantTolerance = 1e-9;

// prod_{i<j} (1 - rho_j / rho_i) after sorting by descending |rho|.
// Rejects repeated absolute values, zeros and |prod| != 1.
double det_one_minus_ad(std::span<const double> eigenvalues,
                        AdjointSign sign = AdjointSign::kModulus);

// alpha_k = k (d - k) log(|rho_k| / |rho_{k+1}|), k = 1..d-1, after sorting
// by descending absolute value. Every entry is positive.
std::vector<double> alpha_coords(std::span<const double> eigenvalues);

// Same weights applied to log|rho_i| values directly (no SL_d check); the
// input need not be sorted. Entries may be zero for non-regular elements.
std::vector<double> alpha_from_log_moduli(std::span<const double> log_moduli);

enum class BoundDirection { kLogToMult, kMultToLog };

// Componentwise exp (log -> multiplicative) or log (multiplicative -> log).
std::vector<double> bound_convert(std::span<const double> bounds,
                                  BoundDirection direction);

}  // namespace pgt
