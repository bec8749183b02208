#include "pgt/io/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "pgt/error.hpp"
#include "pgt/io/formats.hpp"
#include "pgt/nf/units.hpp"

namespace pgt::io {

namespace {

struct RowError {
  std::string reason;
};

nf::FieldRecord validate_row(const std::vector<std::string>& cells, const IngestOptions& options) {
  long long v[12]{};
  try {
    for (std::size_t i = 0; i < 12; ++i) {
      if (i == 5) continue;
      v[i] = parse_integer(cells[i]);
    }
  } catch (const InvalidInput&) {
    throw RowError{"malformed row"};
  }
  double R = 0.0;
  try {
    R = parse_double(cells[5]);
  } catch (const InvalidInput&) {
    throw RowError{"malformed row"};
  }
  if (!std::isfinite(R) || R <= 0.0) throw RowError{"malformed row"};

  const nf::CubicPoly poly{v[0], v[1], v[2]};
  if (!nf::is_irreducible(poly) || !nf::is_totally_real(poly)) {
    throw RowError{"not a totally real cubic"};
  }
  nf::FieldRecord r = nf::make_field_record(poly);
  if (!r.cert.maximal) throw RowError{"order not maximal"};
  if (r.disc_field != v[3]) throw RowError{"discriminant mismatch"};
  if (v[4] <= 0) throw RowError{"class number must be positive"};

  for (std::size_t u = 0; u < 2; ++u) {
    nf::OrderElement e;
    for (std::size_t i = 0; i < 3; ++i) e.c[i] = v[6 + 3 * u + i];
    try {
      r.fundamental_units.push_back(nf::make_unit(r, e));
    } catch (const InvalidInput&) {
      throw RowError{"norm ≠ ±1"};
    }
  }
  r.cert.units_verified = true;
  double R_check = 0.0;
  try {
    R_check = nf::regulator(r.fundamental_units);
  } catch (const InvalidInput&) {
    throw RowError{"dependent units"};
  }
  if (std::fabs(R_check - R) > kRegulatorTolerance * R) throw RowError{"regulator mismatch"};
  r.R = R;
  r.cert.R_recomputed = true;
  r.h = static_cast<long>(v[4]);

  if (nf::minkowski_h1_certificate(r) == nf::MinkowskiVerdict::kHIsOne) {
    if (r.h != 1) throw RowError{"class number contradicts Minkowski certificate"};
    r.cert.h_certified_minkowski = true;
  }
  if (!options.S.empty()) {
    if (!nf::satisfies_S(poly, options.S)) throw RowError{"S-condition fails"};
    for (long long p : options.S) r.splitting[p] = nf::splitting_type(poly, p);
  }
  r.source = nf::RecordSource::kIngested;
  r.unit_status = nf::UnitStatus::kIngested;
  return r;
}

}  // namespace

IngestReport ingest_field_table(std::istream& in, const IngestOptions& options) {
  if (!options.S.empty() && options.S.size() < 2 && !options.allow_small_S) {
    throw InvalidInput("S must contain at least two primes (override for toy runs)");
  }
  for (long long p : options.S) {
    if (!nf::is_prime(p)) throw InvalidInput("S contains non-prime " + std::to_string(p));
  }
  IngestReport report;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  const auto expected = split(kFieldTableHeader);
  std::vector<std::pair<std::size_t, nf::FieldRecord>> accepted;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      if (s.rfind("# pgt-fields", 0) == 0) {
        const auto version = parse_integer(trim(std::string_view(s).substr(12)));
        if (version != kFormatVersion) {
          throw InvalidInput("unsupported field table version " + std::to_string(version));
        }
      }
      continue;
    }
    auto cells = split(s);
    for (auto& c : cells) c = trim(c);
    if (!have_header) {
      if (cells != expected) {
        throw InvalidInput("field table header must be " + std::string(kFieldTableHeader));
      }
      have_header = true;
      continue;
    }
    Rejection rej;
    rej.line = lineno;
    if (cells.size() != expected.size()) {
      rej.reason = "malformed row";
      report.rejected.push_back(rej);
      continue;
    }
    rej.poly = cells[0] + "," + cells[1] + "," + cells[2];
    try {
      nf::FieldRecord r = validate_row(cells, options);
      // Same field under another polynomial counts as a duplicate too.
      bool duplicate = false;
      for (const auto& [_, other] : accepted) {
        if (other.disc_field == r.disc_field && nf::are_isomorphic(other.poly, r.poly)) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) {
        rej.reason = "duplicate field";
        report.rejected.push_back(rej);
        continue;
      }
      accepted.emplace_back(lineno, std::move(r));
    } catch (const RowError& e) {
      rej.reason = e.reason;
      report.rejected.push_back(rej);
    } catch (const InvalidInput&) {
      rej.reason = "malformed row";
      report.rejected.push_back(rej);
    }
  }
  if (!have_header) throw InvalidInput("field table has no header row");
  std::stable_sort(accepted.begin(), accepted.end(), [](const auto& x, const auto& y) {
    if (x.second.disc_field != y.second.disc_field) return x.second.disc_field < y.second.disc_field;
    return nf::canonical_less(x.second.poly, y.second.poly);
  });
  for (auto& [_, r] : accepted) report.accepted.push_back(std::move(r));
  return report;
}

IngestReport ingest_field_table(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return ingest_field_table(in, options);
}

void write_rejections(std::ostream& out, const std::vector<Rejection>& rejected) {
  out << "line,poly,reason\n";
  for (const auto& r : rejected) {
    out << r.line << ",\"" << r.poly << "\"," << r.reason << '\n';
  }
}

}  // namespace pgt::io
