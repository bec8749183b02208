#include "pgt/counting.hpp"

#include <cmath>

#include "pgt/error.hpp"
#include "pgt/parallel.hpp"
#include "pgt/summation.hpp"

namespace pgt {

const char* to_string(BoundScale scale) noexcept {
  return scale == BoundScale::kLog ? "log" : "multiplicative";
}

std::vector<double> log_bounds(const CountQuery& q, std::size_t rank) {
  if (q.bounds.size() != rank) {
    throw InvalidInput("query has " + std::to_string(q.bounds.size()) +
                       " bounds for a rank " + std::to_string(rank) + " spectrum");
  }
  if (q.j < 0) throw InvalidInput("weight exponent j must be nonnegative");
  if (q.epsilon && !(*q.epsilon > 0.0 && *q.epsilon < 1.0)) {
    throw InvalidInput("epsilon must lie in (0, 1)");
  }
  for (double b : q.bounds) {
    if (std::isnan(b)) throw InvalidInput("bound is NaN");
    if (q.scale == BoundScale::kLog && b < 0.0) {
      throw InvalidInput("log-scale bounds must be nonnegative");
    }
  }
  if (q.scale == BoundScale::kLog) return q.bounds;
  return bound_convert(q.bounds, BoundDirection::kMultToLog);
}

namespace {

bool in_box(std::span<const double> lengths, std::span<const double> box) noexcept {
  for (std::size_t k = 0; k < box.size(); ++k) {
    if (!(lengths[k] <= box[k])) return false;
  }
  return true;
}

bool in_eps_band(double det_factor, double epsilon) noexcept {
  return det_factor > 1.0 - epsilon && det_factor < 1.0;
}

double length_power(std::span<const double> lengths, int j) {
  double prod = 1.0;
  for (double l : lengths) prod *= l;
  return std::pow(prod, j + 1);
}

template <typename Term>
double reduce(const Spectrum& s, unsigned threads, Term&& term) {
  const auto values = evaluate_terms(s.size(), threads, term);
  return compensated_sum(values);
}

double require_epsilon(const CountQuery& q) {
  if (!q.epsilon) throw InvalidInput("query needs an epsilon for the restricted sums");
  return *q.epsilon;
}

}  // namespace

double psi(const Spectrum& s, const CountQuery& q, unsigned threads) {
  const auto box = log_bounds(q, s.rank());
  return reduce(s, threads, [&](std::size_t i) {
    return in_box(s.lengths(i), box) ? s.flat_volume(i) : 0.0;
  });
}

double phi(const Spectrum& s, const CountQuery& q, unsigned threads) {
  const auto box = log_bounds(q, s.rank());
  return reduce(s, threads, [&](std::size_t i) {
    return in_box(s.lengths(i), box) ? s.index(i) : 0.0;
  });
}

double phi_j(const Spectrum& s, const CountQuery& q, unsigned threads) {
  const auto box = log_bounds(q, s.rank());
  return reduce(s, threads, [&](std::size_t i) {
    return in_box(s.lengths(i), box) ? s.index(i) * length_power(s.lengths(i), q.j) : 0.0;
  });
}

double big_A(const Spectrum& s, std::span<const double> x, int j, unsigned threads) {
  for (double xk : x) {
    if (!(xk > 0.0)) throw InvalidInput("A(x) needs positive x");
  }
  CountQuery q{{x.begin(), x.end()}, BoundScale::kLog, j, std::nullopt};
  return phi_j(s, q, threads);
}

double psi_eps(const Spectrum& s, const CountQuery& q, unsigned threads) {
  const auto box = log_bounds(q, s.rank());
  const double eps = require_epsilon(q);
  return reduce(s, threads, [&](std::size_t i) {
    return in_box(s.lengths(i), box) && in_eps_band(s.det_factor(i), eps) ? s.flat_volume(i)
                                                                          : 0.0;
  });
}

double phi_eps(const Spectrum& s, const CountQuery& q, unsigned threads) {
  const auto box = log_bounds(q, s.rank());
  const double eps = require_epsilon(q);
  return reduce(s, threads, [&](std::size_t i) {
    return in_box(s.lengths(i), box) && in_eps_band(s.det_factor(i), eps) ? s.index(i) : 0.0;
  });
}

std::uint64_t pi_count(const Spectrum& s, const CountQuery& q) {
  const auto box = log_bounds(q, s.rank());
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_box(s.lengths(i), box)) ++n;
  }
  return n;
}

double theta_S(std::span<const FieldUnitSet> fields, const CountQuery& q) {
  CompensatedSum total;
  for (const auto& field : fields) {
    const auto box = log_bounds(q, field.rank);
    if (field.certified_box.size() != field.rank) {
      throw NotCertified("field " + field.key + " carries no completeness certificate");
    }
    for (std::size_t k = 0; k < field.rank; ++k) {
      if (box[k] > field.certified_box[k]) {
        throw NotCertified("unit enumeration of field " + field.key +
                           " is not certified for the requested box");
      }
    }
    std::size_t count = 0;
    for (std::size_t u = 0; u < field.unit_count(); ++u) {
      std::span<const double> alpha(field.alphas.data() + u * field.rank, field.rank);
      bool inside = true;
      for (std::size_t k = 0; k < field.rank && inside; ++k) {
        inside = alpha[k] > 0.0 && alpha[k] <= box[k];
      }
      if (inside) ++count;
    }
    total.add(static_cast<double>(count) * field.weight());
  }
  return total.value();
}

const char* to_string(Normalizer n) noexcept {
  switch (n) {
    case Normalizer::kProductT: return "product_T";
    case Normalizer::kProductTOverLogs: return "product_T_over_logs";
    case Normalizer::kPntProfile: return "pnt_profile";
  }
  return "product_T";
}

Normalizer normalizer_from_string(const std::string& name) {
  if (name == "product_T") return Normalizer::kProductT;
  if (name == "product_T_over_logs") return Normalizer::kProductTOverLogs;
  if (name == "pnt_profile") return Normalizer::kPntProfile;
  throw InvalidInput("unknown normalizer '" + name + "'");
}

double normalizer_value(Normalizer normalizer, std::span<const double> bounds,
                        BoundScale scale, double constant, int j) {
  double value = 1.0;
  switch (normalizer) {
    case Normalizer::kProductT:
      value = constant;
      for (double b : bounds) value *= b;
      return value;
    case Normalizer::kProductTOverLogs:
      for (double b : bounds) {
        const double t = scale == BoundScale::kMultiplicative ? b : std::exp(b);
        const double log_t = scale == BoundScale::kMultiplicative ? std::log(b) : b;
        if (!(log_t > 0.0)) throw InvalidInput("T / log T needs T > 1");
        value *= t / log_t;
      }
      return constant * value;
    case Normalizer::kPntProfile:
      for (double b : bounds) {
        const double x = scale == BoundScale::kLog ? b : std::log(b);
        value *= std::pow(x, j + 1) * std::exp(x);
      }
      return constant * value;
  }
  return value;
}

RatioReport ratio_report(std::span<const CountPoint> points, BoundScale scale,
                         Normalizer normalizer, double constant, int j, std::string label) {
  RatioReport report{normalizer, scale, constant, j, std::move(label), {}};
  report.rows.reserve(points.size());
  for (const auto& p : points) {
    const double norm = normalizer_value(normalizer, p.bounds, scale, constant, j);
    report.rows.push_back(RatioRow{p.bounds, p.count, norm, p.count / norm});
  }
  return report;
}

}  // namespace pgt
