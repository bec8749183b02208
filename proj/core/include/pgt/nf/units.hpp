#pragma once

// Unit groups of totally real cubic orders: a fundamental-unit search, the
// regulator, enumeration of units in an alpha-box and the bridge to spectra.

#include <array>
#include <set>
#include <span>
#include <vector>

#include "pgt/chamber.hpp"
#include "pgt/counting.hpp"
#include "pgt/nf/field.hpp"

namespace pgt::nf {

// Units +-u with |coords| <= H (excluding +-1), one per sign class.
std::vector<UnitElement> brute_force_units(const FieldRecord& record, long long H);

struct FundamentalUnits {
  std::array<UnitElement, 2> units;
  UnitStatus status = UnitStatus::kCandidate;
  double regulator = 0.0;
  std::size_t searched = 0;  // units found by the search
};

// Exhaustive search with |coords| <= H, then a basis of the lattice spanned
// by the log vectors (log|rho_1(u)|, log|rho_2(u)|). The candidate regulator
// is an integer multiple of the true one. Throws InvalidInput when fewer than
// two independent units are found. The status is table_confirmed when the
// record carries ingested units with the same regulator (1e-9 relative).
FundamentalUnits find_fundamental_units(const FieldRecord& record, long long H);

// |det (log|rho_i(eps_j)|)_{i,j=1,2}|. Throws InvalidInput for dependent units.
double regulator(std::span<const UnitElement> units);

struct UnitBox {
  std::vector<UnitElement> units;  // canonical order (by coords)
  std::array<double, 2> box{};     // T
  std::array<long long, 2> radii{};  // |m_i| searched: the completeness certificate
};

// Units mod +-1 with 0 < alpha_k <= T_k, as eps_1^m1 eps_2^m2. With
// strict = true the record's units must not be mere candidates.
UnitBox enumerate_units_in_box(const FieldRecord& record, std::array<double, 2> T,
                               bool strict = false);

// Counting-engine view of one field: alphas of the box units and weight R h lambda_S.
FieldUnitSet unit_set(const FieldRecord& record, const UnitBox& box, long lambda_s);

// One class per (field, unit): lengths alpha, flat_volume R h lambda_S,
// det_factor from det(1 - Ad) on the embeddings.
Spectrum field_to_spectrum(std::span<const FieldRecord> records, std::span<const UnitBox> boxes,
                           std::span<const long> lambdas);

}  // namespace pgt::nf
