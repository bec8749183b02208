#include "pgt/nf/units.hpp"

#include <algorithm>
#include <cmath>

#include "pgt/error.hpp"

namespace pgt::nf {

std::vector<UnitElement> brute_force_units(const FieldRecord& record, long long H) {
  if (H < 1) throw InvalidInput("height bound must be at least 1");
  const auto roots = record.roots();
  std::vector<UnitElement> out;
  for (long long c0 = -H; c0 <= H; ++c0) {
    for (long long c1 = -H; c1 <= H; ++c1) {
      for (long long c2 = -H; c2 <= H; ++c2) {
        // One representative per sign class: first nonzero coordinate positive.
        const long long lead = c0 != 0 ? c0 : (c1 != 0 ? c1 : c2);
        if (lead <= 0) continue;
        if (c0 == 1 && c1 == 0 && c2 == 0) continue;
        // |N| is a positive integer, so a floating product below 1.5 singles
        // out the norm +-1 candidates; the exact norm decides.
        long double p = 1.0L;
        for (double r : roots) {
          const long double x = r;
          p *= std::fabs((c2 * x + c1) * x + c0);
        }
        if (!(p < 1.5L)) continue;
        const auto u = OrderElement::from(c0, c1, c2);
        const BigInt n = norm(record.poly, u);
        if (n == 1 || n == -1) out.push_back(make_unit(record, u));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double regulator(std::span<const UnitElement> units) {
  if (units.size() != 2) throw InvalidInput("regulator needs exactly two units");
  const double m11 = std::log(std::fabs(units[0].embeddings[0]));
  const double m21 = std::log(std::fabs(units[0].embeddings[1]));
  const double m12 = std::log(std::fabs(units[1].embeddings[0]));
  const double m22 = std::log(std::fabs(units[1].embeddings[1]));
  const double r = std::fabs(m11 * m22 - m12 * m21);
  if (!(r > 1e-9)) throw InvalidInput("units are multiplicatively dependent (regulator 0)");
  return r;
}

namespace {

// A unit together with its log vector, tracked additively.
struct LogUnit {
  OrderElement u;
  std::array<long double, 2> v{};
};

long double dot(const std::array<long double, 2>& x, const std::array<long double, 2>& y) {
  return x[0] * y[0] + x[1] * y[1];
}

long double cross(const std::array<long double, 2>& x, const std::array<long double, 2>& y) {
  return x[0] * y[1] - x[1] * y[0];
}

class LatticeBuilder {
 public:
  explicit LatticeBuilder(const CubicPoly& f) : f_(f) {}

  void insert(LogUnit w) {
    if (basis_.empty()) {
      basis_.push_back(std::move(w));
      return;
    }
    if (basis_.size() == 1) {
      const long double scale = std::sqrt(dot(basis_[0].v, basis_[0].v) * dot(w.v, w.v));
      if (std::fabs(cross(basis_[0].v, w.v)) > 1e-9L * scale) {
        basis_.push_back(std::move(w));
        lagrange();
        return;
      }
      // Collinear: one-dimensional Euclid.
      LogUnit& b = basis_[0];
      while (norm2(w) > kZero) {
        const auto q = std::llround(static_cast<double>(dot(w.v, b.v) / dot(b.v, b.v)));
        w = combine(w, b, -q);
        if (norm2(w) <= kZero) break;
        std::swap(w, b);
      }
      require_torsion(w);
      return;
    }
    while (true) {
      lagrange();
      auto [x, y] = coordinates(w);
      w = combine(combine(w, basis_[0], -std::llround(static_cast<double>(x))), basis_[1],
                  -std::llround(static_cast<double>(y)));
      if (norm2(w) <= kZero) {
        require_torsion(w);
        return;
      }
      // w is now a short vector off the lattice; swapping it in shrinks the
      // covolume by at least a half, so the loop terminates.
      std::tie(x, y) = coordinates(w);
      if (std::fabs(y) >= std::fabs(x) && std::fabs(y) > 1e-12L) {
        std::swap(w, basis_[1]);
      } else {
        std::swap(w, basis_[0]);
      }
    }
  }

  [[nodiscard]] std::size_t rank() const { return basis_.size(); }
  std::vector<LogUnit>& basis() {
    if (basis_.size() == 2) lagrange();
    return basis_;
  }

 private:
  static constexpr long double kZero = 1e-14L;

  static long double norm2(const LogUnit& x) { return dot(x.v, x.v); }

  LogUnit combine(const LogUnit& x, const LogUnit& y, long long m) const {
    if (m == 0) return x;
    LogUnit out;
    out.u = multiply(f_, x.u, power(f_, y.u, m));
    out.v = {x.v[0] + m * y.v[0], x.v[1] + m * y.v[1]};
    return out;
  }

  std::pair<long double, long double> coordinates(const LogUnit& w) const {
    const auto& b1 = basis_[0].v;
    const auto& b2 = basis_[1].v;
    const long double det = cross(b1, b2);
    return {cross(w.v, b2) / det, cross(b1, w.v) / det};
  }

  void lagrange() {
    auto& b1 = basis_[0];
    auto& b2 = basis_[1];
    if (norm2(b1) > norm2(b2)) std::swap(b1, b2);
    while (true) {
      const auto mu = std::llround(static_cast<double>(dot(b1.v, b2.v) / dot(b1.v, b1.v)));
      b2 = combine(b2, b1, -mu);
      if (norm2(b2) < norm2(b1)) {
        std::swap(b1, b2);
      } else {
        break;
      }
    }
  }

  static void require_torsion(const LogUnit& w) {
    const auto& c = w.u.c;
    if (!((c[0] == 1 || c[0] == -1) && c[1] == 0 && c[2] == 0)) {
      throw NumericalFailure("log-lattice reduction produced a non-torsion unit " +
                             w.u.to_string() + " with vanishing log vector");
    }
  }

  const CubicPoly& f_;
  std::vector<LogUnit> basis_;
};

}  // namespace

FundamentalUnits find_fundamental_units(const FieldRecord& record, long long H) {
  auto found = brute_force_units(record, H);
  // Short vectors first keeps the reduction well conditioned.
  auto log_norm = [](const UnitElement& u) {
    return std::fabs(std::log(std::fabs(u.embeddings[0]))) +
           std::fabs(std::log(std::fabs(u.embeddings[1])));
  };
  std::stable_sort(found.begin(), found.end(), [&](const UnitElement& x, const UnitElement& y) {
    return log_norm(x) < log_norm(y);
  });
  LatticeBuilder builder(record.poly);
  for (const auto& unit : found) {
    LogUnit lu;
    lu.u = OrderElement::from(unit.coords[0], unit.coords[1], unit.coords[2]);
    lu.v = {std::log(std::fabs(static_cast<long double>(unit.embeddings[0]))),
            std::log(std::fabs(static_cast<long double>(unit.embeddings[1])))};
    builder.insert(std::move(lu));
  }
  if (builder.rank() < 2) {
    throw InvalidInput("height bound H = " + std::to_string(H) +
                       " yields fewer than two independent units");
  }
  FundamentalUnits out;
  auto& basis = builder.basis();
  for (std::size_t i = 0; i < 2; ++i) out.units[i] = make_unit(record, basis[i].u);
  out.regulator = regulator(out.units);
  out.searched = found.size();
  out.status = UnitStatus::kCandidate;
  if (record.unit_status == UnitStatus::kIngested && record.R > 0.0 &&
      std::fabs(out.regulator - record.R) <= 1e-9 * record.R) {
    out.status = UnitStatus::kTableConfirmed;
  }
  return out;
}

UnitBox enumerate_units_in_box(const FieldRecord& record, std::array<double, 2> T, bool strict) {
  if (record.fundamental_units.size() != 2) {
    throw InvalidInput("record has no fundamental units");
  }
  if (strict && (record.unit_status == UnitStatus::kCandidate ||
                 record.unit_status == UnitStatus::kNone)) {
    throw NotCertified("fundamental units are search candidates; completeness is not certified");
  }
  for (double t : T) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("T entries must be nonnegative");
  }
  UnitBox out;
  out.box = T;
  const auto& e1 = record.fundamental_units[0];
  const auto& e2 = record.fundamental_units[1];
  const double m11 = std::log(std::fabs(e1.embeddings[0]));
  const double m21 = std::log(std::fabs(e1.embeddings[1]));
  const double m12 = std::log(std::fabs(e2.embeddings[0]));
  const double m22 = std::log(std::fabs(e2.embeddings[1]));
  const double det = m11 * m22 - m12 * m21;
  if (!(std::fabs(det) > 1e-9)) throw InvalidInput("fundamental units are dependent");
  // alpha_1 + alpha_2 = 2 (max log|rho| - min log|rho|) and the logs sum to 0,
  // so every log|rho_i| lies in [-rho, rho] with rho = (T_1 + T_2) / 2.
  const double rho = 0.5 * (T[0] + T[1]);
  const double inv[2][2] = {{m22 / det, -m12 / det}, {-m21 / det, m11 / det}};
  for (int i = 0; i < 2; ++i) {
    out.radii[i] = static_cast<long long>(std::floor((std::fabs(inv[i][0]) + std::fabs(inv[i][1])) * rho)) + 1;
  }
  std::vector<std::pair<long long, long long>> hits;
  for (long long a = -out.radii[0]; a <= out.radii[0]; ++a) {
    for (long long b = -out.radii[1]; b <= out.radii[1]; ++b) {
      if (a == 0 && b == 0) continue;
      const double l1 = a * m11 + b * m12;
      const double l2 = a * m21 + b * m22;
      const std::array<double, 3> logs{l1, l2, -l1 - l2};
      const auto alpha = alpha_from_log_moduli(logs);
      if (alpha[0] > 0.0 && alpha[0] <= T[0] && alpha[1] > 0.0 && alpha[1] <= T[1]) {
        hits.emplace_back(a, b);
      }
    }
  }
  const auto u1 = OrderElement::from(e1.coords[0], e1.coords[1], e1.coords[2]);
  const auto u2 = OrderElement::from(e2.coords[0], e2.coords[1], e2.coords[2]);
  for (const auto& [a, b] : hits) {
    const auto u = multiply(record.poly, power(record.poly, u1, a), power(record.poly, u2, b));
    out.units.push_back(make_unit(record, u));
  }
  std::sort(out.units.begin(), out.units.end());
  return out;
}

FieldUnitSet unit_set(const FieldRecord& record, const UnitBox& box, long lambda_s) {
  if (record.h <= 0) throw InvalidInput("class number of " + record.poly.to_string() + " is unknown");
  if (!(record.R > 0.0)) throw InvalidInput("regulator of " + record.poly.to_string() + " is unknown");
  FieldUnitSet s;
  s.key = record.poly.key();
  s.regulator = record.R;
  s.class_number = record.h;
  s.lambda_s = lambda_s;
  s.rank = 2;
  for (const auto& u : box.units) {
    s.alphas.push_back(u.alpha[0]);
    s.alphas.push_back(u.alpha[1]);
  }
  s.certified_box = {box.box[0], box.box[1]};
  return s;
}

Spectrum field_to_spectrum(std::span<const FieldRecord> records, std::span<const UnitBox> boxes,
                           std::span<const long> lambdas) {
  if (records.size() != boxes.size() || records.size() != lambdas.size()) {
    throw InvalidInput("records, unit boxes and lambda values differ in length");
  }
  std::vector<GeodesicClass> classes;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto set = unit_set(records[i], boxes[i], lambdas[i]);
    for (const auto& u : boxes[i].units) {
      GeodesicClass cls;
      cls.lengths = {u.alpha[0], u.alpha[1]};
      cls.flat_volume = set.weight();
      cls.det_factor = det_one_minus_ad(u.embeddings);
      // No commas: labels go into comma-separated files.
      cls.label = "[" + std::to_string(records[i].poly.a) + " " + std::to_string(records[i].poly.b) +
                  " " + std::to_string(records[i].poly.c) + "] (" + std::to_string(u.coords[0]) +
                  " " + std::to_string(u.coords[1]) + " " + std::to_string(u.coords[2]) + ")";
      classes.push_back(std::move(cls));
    }
  }
  return Spectrum(ChamberBasis(2), std::move(classes), Provenance::kNumberField);
}

}  // namespace pgt::nf
