#pragma once

// Plain-text file formats. Every file starts with "# pgt-<kind> <version>",
// followed by "# key value" metadata lines and a comma-separated table with a
// header row. Doubles are written in shortest round-trip form.

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pgt/chamber.hpp"
#include "pgt/counting.hpp"
#include "pgt/dirichlet.hpp"
#include "pgt/nf/field.hpp"
#include "pgt/tauberian.hpp"

namespace pgt::io {

inline constexpr int kFormatVersion = 1;

std::string format_double(double v);
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);
std::vector<std::string> split(std::string_view line, char sep = ',');
std::string trim(std::string_view text);

// Parsed "# pgt-kind version" file: metadata and rows (header included).
struct Table {
  std::string kind;
  int version = 0;
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based source lines
};

Table read_table(std::istream& in, const std::string& expected_kind);

void write_spectrum(std::ostream& out, const Spectrum& spectrum);
Spectrum read_spectrum(std::istream& in);

void write_pole_model(std::ostream& out, const PoleModel& model);
PoleModel read_pole_model(std::istream& in);

void write_ratio_report(std::ostream& out, const RatioReport& report);

void write_verdict(std::ostream& out, const std::vector<VerdictRow>& rows,
                   const std::map<std::string, std::string>& meta = {});

// Field table: fixed header poly_a,...,fu2_c2 with an optional version line.
inline constexpr std::string_view kFieldTableHeader =
    "poly_a,poly_b,poly_c,disc_field,h,R,fu1_c0,fu1_c1,fu1_c2,fu2_c0,fu2_c1,fu2_c2";
void write_field_table(std::ostream& out, const std::vector<nf::FieldRecord>& records);

// Files are written to a temporary sibling and renamed into place.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace pgt::io
