#include "pgt/io/formats.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "pgt/error.hpp"

namespace pgt::io {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("cannot format double");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || end != t.data() + t.size() || t.empty()) {
    throw InvalidInput("not a number: '" + t + "'");
  }
  return v;
}

long long parse_integer(std::string_view text) {
  const std::string t = trim(text);
  long long v = 0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || end != t.data() + t.size() || t.empty()) {
    throw InvalidInput("not an integer: '" + t + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view text) {
  const auto b = text.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = text.find_last_not_of(" \t\r");
  return std::string(text.substr(b, e - b + 1));
}

Table read_table(std::istream& in, const std::string& expected_kind) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      const std::string body = trim(std::string_view(s).substr(1));
      const auto space = body.find(' ');
      const std::string key = body.substr(0, space);
      const std::string value = space == std::string::npos ? "" : trim(body.substr(space + 1));
      if (key.rfind("pgt-", 0) == 0 && t.kind.empty()) {
        t.kind = key.substr(4);
        t.version = static_cast<int>(parse_integer(value));
      } else if (!key.empty()) {
        t.meta[key] = value;
      }
      continue;
    }
    auto cells = split(s);
    for (auto& c : cells) c = trim(c);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw InvalidInput("line " + std::to_string(lineno) + ": expected " +
                         std::to_string(t.header.size()) + " fields, found " +
                         std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.row_lines.push_back(lineno);
  }
  if (!expected_kind.empty()) {
    if (t.kind != expected_kind) {
      throw InvalidInput("expected a pgt-" + expected_kind + " file, found '" + t.kind + "'");
    }
    if (t.version != kFormatVersion) {
      throw InvalidInput("unsupported " + expected_kind + " format version " +
                         std::to_string(t.version));
    }
  }
  if (!have_header) throw InvalidInput("file has no header row");
  return t;
}

namespace {

std::size_t meta_size(const Table& t, const std::string& key) {
  const auto it = t.meta.find(key);
  if (it == t.meta.end()) throw InvalidInput("missing '# " + key + "' line");
  const long long v = parse_integer(it->second);
  if (v < 0) throw InvalidInput(key + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

void require_header(const Table& t, const std::vector<std::string>& expected) {
  if (t.header != expected) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw InvalidInput("unexpected header; expected " + want);
  }
}

}  // namespace

void write_spectrum(std::ostream& out, const Spectrum& spectrum) {
  out << "# pgt-spectrum " << kFormatVersion << "\n";
  out << "# rank " << spectrum.rank() << "\n";
  out << "# provenance " << to_string(spectrum.provenance()) << "\n";
  out << "label";
  for (std::size_t k = 0; k < spectrum.rank(); ++k) out << ",l" << k + 1;
  out << ",flat_volume,det_factor\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const auto& label = spectrum.label(i);
    if (label.find_first_of(",\n") != std::string::npos) {
      throw InvalidInput("class label contains a comma or newline: " + label);
    }
    out << label;
    for (double l : spectrum.lengths(i)) out << ',' << format_double(l);
    out << ',' << format_double(spectrum.flat_volume(i)) << ','
        << format_double(spectrum.det_factor(i)) << '\n';
  }
}

Spectrum read_spectrum(std::istream& in) {
  const Table t = read_table(in, "spectrum");
  const std::size_t rank = meta_size(t, "rank");
  const auto prov_it = t.meta.find("provenance");
  const Provenance prov =
      prov_it == t.meta.end() ? Provenance::kManual : provenance_from_string(prov_it->second);
  std::vector<std::string> header{"label"};
  for (std::size_t k = 0; k < rank; ++k) header.push_back("l" + std::to_string(k + 1));
  header.emplace_back("flat_volume");
  header.emplace_back("det_factor");
  require_header(t, header);
  std::vector<GeodesicClass> classes;
  classes.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    try {
      GeodesicClass c;
      c.label = row[0];
      for (std::size_t k = 0; k < rank; ++k) c.lengths.push_back(parse_double(row[1 + k]));
      c.flat_volume = parse_double(row[1 + rank]);
      c.det_factor = parse_double(row[2 + rank]);
      validate(c);
      classes.push_back(std::move(c));
    } catch (const InvalidInput& e) {
      throw InvalidInput("line " + std::to_string(t.row_lines[r]) + ": " + e.what());
    }
  }
  return Spectrum(ChamberBasis(rank), std::move(classes), prov);
}

void write_pole_model(std::ostream& out, const PoleModel& model) {
  out << "# pgt-polemodel " << kFormatVersion << "\n";
  out << "# rank " << model.rank() << "\n";
  out << "# j " << model.j() << "\n";
  for (std::size_t k = 0; k < model.rank(); ++k) {
    out << (k == 0 ? "" : ",") << "re_theta" << k + 1 << ",im_theta" << k + 1;
  }
  out << ",coeff\n";
  for (const auto& term : model.terms()) {
    for (std::size_t k = 0; k < model.rank(); ++k) {
      out << (k == 0 ? "" : ",") << format_double(term.theta[k].real()) << ','
          << format_double(term.theta[k].imag());
    }
    out << ',' << term.coeff << '\n';
  }
}

PoleModel read_pole_model(std::istream& in) {
  const Table t = read_table(in, "polemodel");
  const std::size_t rank = meta_size(t, "rank");
  const auto j = static_cast<int>(meta_size(t, "j"));
  std::vector<std::string> header;
  for (std::size_t k = 0; k < rank; ++k) {
    header.push_back("re_theta" + std::to_string(k + 1));
    header.push_back("im_theta" + std::to_string(k + 1));
  }
  header.emplace_back("coeff");
  require_header(t, header);
  std::vector<PoleTerm> terms;
  for (const auto& row : t.rows) {
    PoleTerm term;
    for (std::size_t k = 0; k < rank; ++k) {
      term.theta.emplace_back(parse_double(row[2 * k]), parse_double(row[2 * k + 1]));
    }
    term.coeff = parse_integer(row[2 * rank]);
    terms.push_back(std::move(term));
  }
  return PoleModel(rank, j, std::move(terms));
}

void write_ratio_report(std::ostream& out, const RatioReport& report) {
  out << "# pgt-ratio " << kFormatVersion << "\n";
  if (!report.label.empty()) out << "# label " << report.label << "\n";
  out << "# normalizer " << to_string(report.normalizer) << "\n";
  out << "# constant " << format_double(report.constant) << "\n";
  out << "# scale " << to_string(report.scale) << "\n";
  out << "# j " << report.j << "\n";
  const std::size_t rank = report.rows.empty() ? 0 : report.rows.front().bounds.size();
  for (std::size_t k = 0; k < rank; ++k) out << "T" << k + 1 << ',';
  out << "count,normalizer,ratio\n";
  for (const auto& row : report.rows) {
    for (double b : row.bounds) out << format_double(b) << ',';
    out << format_double(row.count) << ',' << format_double(row.normalizer) << ','
        << format_double(row.ratio) << '\n';
  }
}

void write_verdict(std::ostream& out, const std::vector<VerdictRow>& rows,
                   const std::map<std::string, std::string>& meta) {
  out << "# pgt-verdict " << kFormatVersion << "\n";
  for (const auto& [k, v] : meta) out << "# " << k << ' ' << v << "\n";
  out << "radius,B,tail_sup,tail_inf\n";
  for (const auto& r : rows) {
    out << format_double(r.radius) << ',' << format_double(r.B) << ','
        << format_double(r.tail_sup) << ',' << format_double(r.tail_inf) << '\n';
  }
}

void write_field_table(std::ostream& out, const std::vector<nf::FieldRecord>& records) {
  out << "# pgt-fields " << kFormatVersion << "\n";
  out << kFieldTableHeader << "\n";
  for (const auto& r : records) {
    out << r.poly.a << ',' << r.poly.b << ',' << r.poly.c << ',' << r.disc_field << ',' << r.h
        << ',' << format_double(r.R);
    for (std::size_t u = 0; u < 2; ++u) {
      for (std::size_t i = 0; i < 3; ++i) {
        out << ',';
        if (u < r.fundamental_units.size()) out << r.fundamental_units[u].coords[i];
      }
    }
    out << '\n';
  }
}

void write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pgt::io
