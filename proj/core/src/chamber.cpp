#include "pgt/chamber.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "pgt/error.hpp"

namespace pgt {

ChamberBasis::ChamberBasis(std::size_t rank) : rank_(rank) {
  if (rank == 0) throw InvalidInput("chamber rank must be at least 1");
}

std::vector<Fraction> ChamberBasis::rho_alpha_coords() const {
  return std::vector<Fraction>(rank_, Fraction{1, 2});
}

void validate(const GeodesicClass& cls) {
  if (cls.lengths.empty()) throw InvalidInput("geodesic class has no length coordinates");
  for (double l : cls.lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw InvalidInput("length coordinate must be positive (regular class): " +
                         std::to_string(l));
    }
  }
  if (!(cls.flat_volume > 0.0) || !std::isfinite(cls.flat_volume)) {
    throw InvalidInput("flat volume must be positive");
  }
  if (!(cls.det_factor > 0.0) || cls.det_factor > 1.0) {
    throw InvalidInput("det(1 - a m | n) must lie in (0, 1], got " +
                       std::to_string(cls.det_factor));
  }
}

double index_of(const GeodesicClass& cls) {
  validate(cls);
  return cls.flat_volume / cls.det_factor;
}

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::kSynthetic: return "synthetic";
    case Provenance::kChebyshev: return "chebyshev";
    case Provenance::kNumberField: return "numberfield";
    case Provenance::kManual: return "manual";
  }
  return "manual";
}

Provenance provenance_from_string(const std::string& name) {
  if (name == "synthetic") return Provenance::kSynthetic;
  if (name == "chebyshev") return Provenance::kChebyshev;
  if (name == "numberfield") return Provenance::kNumberField;
  if (name == "manual") return Provenance::kManual;
  throw InvalidInput("unknown spectrum provenance '" + name + "'");
}

Spectrum::Spectrum(ChamberBasis basis, Provenance provenance)
    : basis_(basis), provenance_(provenance) {}

Spectrum::Spectrum(ChamberBasis basis, std::vector<GeodesicClass> classes,
                   Provenance provenance)
    : Spectrum(basis, provenance) {
  const std::size_t r = basis_.rank();
  lengths_.reserve(classes.size() * r);
  flat_volume_.reserve(classes.size());
  det_factor_.reserve(classes.size());
  labels_.reserve(classes.size());
  for (auto& cls : classes) {
    if (cls.lengths.size() != r) {
      throw InvalidInput("class rank " + std::to_string(cls.lengths.size()) +
                         " does not match spectrum rank " + std::to_string(r));
    }
    validate(cls);
    lengths_.insert(lengths_.end(), cls.lengths.begin(), cls.lengths.end());
    flat_volume_.push_back(cls.flat_volume);
    det_factor_.push_back(cls.det_factor);
    labels_.push_back(std::move(cls.label));
  }
  canonicalize();
}

Spectrum Spectrum::from_columns(std::size_t rank, std::vector<double> lengths,
                                std::vector<double> flat_volume,
                                std::vector<double> det_factor,
                                std::vector<std::string> labels,
                                Provenance provenance) {
  Spectrum s(ChamberBasis(rank), provenance);
  const std::size_t n = flat_volume.size();
  if (lengths.size() != n * rank || det_factor.size() != n) {
    throw InvalidInput("spectrum columns have inconsistent sizes");
  }
  if (labels.empty()) labels.resize(n);
  if (labels.size() != n) throw InvalidInput("spectrum label column has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < rank; ++k) {
      const double l = lengths[i * rank + k];
      if (!(l > 0.0) || !std::isfinite(l)) {
        throw InvalidInput("length coordinate must be positive (regular class)");
      }
    }
    if (!(flat_volume[i] > 0.0) || !std::isfinite(flat_volume[i])) {
      throw InvalidInput("flat volume must be positive");
    }
    if (!(det_factor[i] > 0.0) || det_factor[i] > 1.0) {
      throw InvalidInput("det(1 - a m | n) must lie in (0, 1]");
    }
  }
  s.lengths_ = std::move(lengths);
  s.flat_volume_ = std::move(flat_volume);
  s.det_factor_ = std::move(det_factor);
  s.labels_ = std::move(labels);
  s.canonicalize();
  return s;
}

GeodesicClass Spectrum::at(std::size_t i) const {
  auto l = lengths(i);
  return GeodesicClass{{l.begin(), l.end()}, flat_volume_[i], det_factor_[i], labels_[i]};
}

void Spectrum::canonicalize() {
  const std::size_t n = size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Total order, so any permutation of the input yields the same layout.
  auto less = [&](std::size_t a, std::size_t b) {
    auto la = lengths(a);
    auto lb = lengths(b);
    if (!std::equal(la.begin(), la.end(), lb.begin())) {
      return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
    }
    return std::tie(labels_[a], flat_volume_[a], det_factor_[a]) <
           std::tie(labels_[b], flat_volume_[b], det_factor_[b]);
  };
  if (std::is_sorted(order.begin(), order.end(), less)) return;
  std::sort(order.begin(), order.end(), less);

  const std::size_t r = rank();
  std::vector<double> lengths(n * r);
  std::vector<double> flat(n);
  std::vector<double> det(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = order[i];
    std::copy_n(lengths_.begin() + static_cast<std::ptrdiff_t>(src * r), r,
                lengths.begin() + static_cast<std::ptrdiff_t>(i * r));
    flat[i] = flat_volume_[src];
    det[i] = det_factor_[src];
    labels[i] = std::move(labels_[src]);
  }
  lengths_ = std::move(lengths);
  flat_volume_ = std::move(flat);
  det_factor_ = std::move(det);
  labels_ = std::move(labels);
}

namespace {

// Sorted by descending absolute value, validated as a regular SL_d tuple.
std::vector<double> sorted_regular_eigenvalues(std::span<const double> eigenvalues) {
  if (eigenvalues.size() < 2) throw InvalidInput("need at least two eigenvalues");
  std::vector<double> rho(eigenvalues.begin(), eigenvalues.end());
  double log_abs_product = 0.0;
  for (double x : rho) {
    if (x == 0.0 || !std::isfinite(x)) throw InvalidInput("eigenvalues must be finite and nonzero");
    log_abs_product += std::log(std::fabs(x));
  }
  if (std::fabs(std::expm1(log_abs_product)) > kDeterminantTolerance) {
    throw InvalidInput("eigenvalue product has modulus != 1");
  }
  std::sort(rho.begin(), rho.end(),
            [](double a, double b) { return std::fabs(a) > std::fabs(b); });
  for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
    if (!(std::fabs(rho[k]) > std::fabs(rho[k + 1]))) {
      throw InvalidInput("repeated eigenvalue modulus: element is not regular");
    }
  }
  return rho;
}

}  // namespace

double det_one_minus_ad(std::span<const double> eigenvalues, AdjointSign sign) {
  const auto rho = sorted_regular_eigenvalues(eigenvalues);
  double det = 1.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = i + 1; j < rho.size(); ++j) {
      const double ratio = sign == AdjointSign::kSigned ? rho[j] / rho[i]
                                                         : std::fabs(rho[j] / rho[i]);
      det *= 1.0 - ratio;
    }
  }
  // Every ratio has modulus < 1, so each factor is positive.
  if (!(det > 0.0)) throw NumericalFailure("det(1 - Ad) lost positivity");
  return det;
}

std::vector<double> alpha_coords(std::span<const double> eigenvalues) {
  const auto rho = sorted_regular_eigenvalues(eigenvalues);
  const std::size_t d = rho.size();
  std::vector<double> alpha(d - 1);
  for (std::size_t k = 1; k < d; ++k) {
    alpha[k - 1] = static_cast<double>(k * (d - k)) *
                   std::log(std::fabs(rho[k - 1]) / std::fabs(rho[k]));
  }
  return alpha;
}

std::vector<double> alpha_from_log_moduli(std::span<const double> log_moduli) {
  std::vector<double> l(log_moduli.begin(), log_moduli.end());
  std::sort(l.begin(), l.end(), std::greater<>());
  const std::size_t d = l.size();
  std::vector<double> alpha(d > 0 ? d - 1 : 0);
  for (std::size_t k = 1; k < d; ++k) {
    alpha[k - 1] = static_cast<double>(k * (d - k)) * (l[k - 1] - l[k]);
  }
  return alpha;
}

std::vector<double> bound_convert(std::span<const double> bounds, BoundDirection direction) {
  std::vector<double> out(bounds.size());
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    if (direction == BoundDirection::kLogToMult) {
      out[k] = std::exp(bounds[k]);
    } else {
      if (!(bounds[k] > 0.0)) {
        throw InvalidInput("multiplicative bound must be positive to take its logarithm");
      }
      out[k] = std::log(bounds[k]);
    }
  }
  return out;
}

}  // namespace pgt
