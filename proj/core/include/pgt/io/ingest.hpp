#pragma once

// Validation of externally supplied field tables. Nothing in a row is trusted:
// the discriminant, units, regulator and class number are all re-checked.

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "pgt/nf/field.hpp"

namespace pgt::io {

inline constexpr double kRegulatorTolerance = 1e-9;  // relative

struct Rejection {
  std::size_t line = 0;  // 1-based line in the source
  std::string poly;      // "a,b,c" when parseable
  std::string reason;
};

struct IngestReport {
  std::vector<nf::FieldRecord> accepted;  // canonical (disc, poly) order
  std::vector<Rejection> rejected;        // source order
};

struct IngestOptions {
  std::set<long long> S;       // checked when non-empty
  bool allow_small_S = false;
};

// Rows failing validation are reported with one of the reasons
//   "malformed row", "not a totally real cubic", "order not maximal",
//   "discriminant mismatch", "class number must be positive", "norm ≠ ±1",
//   "dependent units", "regulator mismatch",
//   "class number contradicts Minkowski certificate", "S-condition fails",
//   "duplicate field".
// A missing or wrong header throws InvalidInput instead.
IngestReport ingest_field_table(std::istream& in, const IngestOptions& options = {});
IngestReport ingest_field_table(const std::string& path, const IngestOptions& options = {});

// "line,poly,reason" rows.
void write_rejections(std::ostream& out, const std::vector<Rejection>& rejected);

}  // namespace pgt::io
