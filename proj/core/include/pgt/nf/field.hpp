#pragma once

// Totally real cubic fields given by a monogenic maximal order Z[theta]:
// records, units, enumeration by discriminant, isomorphism testing,
// lambda_S, the Minkowski class-number certificate and the constant c.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgt/nf/cubic.hpp"
#include "pgt/nf/order.hpp"

namespace pgt::nf {

// A unit modulo +-1 (canonical sign), with its embeddings in the record's
// root order and alpha computed from the moduli.
struct UnitElement {
  std::array<long long, 3> coords{};
  std::array<double, 3> embeddings{};
  std::array<double, 2> alpha{};
  bool regular = false;  // both alpha entries positive

  friend bool operator==(const UnitElement& x, const UnitElement& y) { return x.coords == y.coords; }
  friend bool operator<(const UnitElement& x, const UnitElement& y) { return x.coords < y.coords; }
};

enum class RecordSource { kComputed, kIngested };
enum class UnitStatus { kNone, kCandidate, kTableConfirmed, kIngested };

const char* to_string(RecordSource s) noexcept;
const char* to_string(UnitStatus s) noexcept;

struct Certifications {
  bool maximal = false;               // Dedekind at every p with p^2 | disc_poly
  bool h_certified_minkowski = false;
  bool units_verified = false;        // exact norms +-1
  bool R_recomputed = false;          // R matches the units to 1e-9
};

struct FieldRecord {
  CubicPoly poly;
  long long disc_poly = 0;
  long long disc_field = 0;
  std::array<RootInterval, 3> embeddings{};
  std::vector<UnitElement> fundamental_units;  // empty or two
  UnitStatus unit_status = UnitStatus::kNone;
  long h = 0;  // 0: unknown
  double R = 0.0;
  std::map<long long, SplittingType> splitting;
  RecordSource source = RecordSource::kComputed;
  Certifications cert;

  [[nodiscard]] std::array<double, 3> roots() const {
    return {embeddings[0].value, embeddings[1].value, embeddings[2].value};
  }
};

// Poly, discriminants, certified embeddings and maximality. Requires an
// irreducible totally real cubic; disc_field is set to disc_poly only when
// Z[theta] is certified maximal (else 0 and cert.maximal = false).
FieldRecord make_field_record(const CubicPoly& poly);

// Builds the unit from exact coordinates against the record's roots. Throws
// InvalidInput unless the norm is exactly +-1.
UnitElement make_unit(const FieldRecord& record, const OrderElement& u);

// prod_{p in S} f_p. Every p must be maximal and non-decomposed. Unless
// allow_small_S, |S| >= 2 is required.
long lambda_S(const CubicPoly& poly, const std::set<long long>& S, bool allow_small_S = false);

// Whether every p in S is maximal and non-decomposed.
bool satisfies_S(const CubicPoly& poly, const std::set<long long>& S);

// (sqrt 2)^{1-d} prod_{k=1}^{d-1} 2 k (d - k) for a prime d >= 3.
double c_constant(int d);

enum class MinkowskiVerdict { kHIsOne, kInconclusive };
const char* to_string(MinkowskiVerdict v) noexcept;

// Bound (2/9) sqrt(disc_field); h = 1 when no prime ideal has norm <= bound.
double minkowski_bound(long long disc_field);
MinkowskiVerdict minkowski_h1_certificate(const FieldRecord& record);

// Exact test that g has a root in Z[theta_f] (numeric solve, exact check).
// For maximal monogenic orders of equal discriminant this decides isomorphism.
std::optional<OrderElement> root_in_order(const CubicPoly& f, const CubicPoly& g);
bool are_isomorphic(const CubicPoly& f, const CubicPoly& g);

struct EnumerationOptions {
  long long a_bound = 15;
  long long b_bound = 60;
  long long c_bound = 60;
  bool allow_small_S = false;
  unsigned threads = 1;
};

// One record per field with a monogenic maximal order in the coefficient box,
// 0 < disc <= disc_bound, every p in S maximal and non-decomposed. Canonical
// polynomial per field; ordered by (disc, canonical poly). Fields are tagged
// with the Minkowski certificate (h = 1 when certified, else unknown).
std::vector<FieldRecord> enumerate_fields(long long disc_bound, const std::set<long long>& S,
                                          const EnumerationOptions& options = {});

}  // namespace pgt::nf
