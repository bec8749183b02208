#include "pgt/io/cache.hpp"

#include <algorithm>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "pgt/error.hpp"
#include "pgt/io/formats.hpp"

namespace pgt::io {

using nlohmann::json;

namespace {

nf::RecordSource source_from(const std::string& s) {
  if (s == "computed") return nf::RecordSource::kComputed;
  if (s == "ingested") return nf::RecordSource::kIngested;
  throw InvalidInput("unknown record source '" + s + "'");
}

nf::UnitStatus status_from(const std::string& s) {
  for (auto st : {nf::UnitStatus::kNone, nf::UnitStatus::kCandidate,
                  nf::UnitStatus::kTableConfirmed, nf::UnitStatus::kIngested}) {
    if (s == nf::to_string(st)) return st;
  }
  throw InvalidInput("unknown unit status '" + s + "'");
}

}  // namespace

std::string record_to_json(const nf::FieldRecord& r) {
  json j;
  j["format"] = "pgt-field";
  j["version"] = kCacheVersion;
  j["poly"] = {r.poly.a, r.poly.b, r.poly.c};
  j["disc_poly"] = r.disc_poly;
  j["disc_field"] = r.disc_field;
  j["embeddings"] = json::array();
  for (const auto& e : r.embeddings) {
    j["embeddings"].push_back({{"lo", e.lo}, {"hi", e.hi}, {"value", e.value}});
  }
  j["fundamental_units"] = json::array();
  for (const auto& u : r.fundamental_units) {
    j["fundamental_units"].push_back({{"coords", u.coords},
                                      {"embeddings", u.embeddings},
                                      {"alpha", u.alpha},
                                      {"regular", u.regular}});
  }
  j["unit_status"] = nf::to_string(r.unit_status);
  j["h"] = r.h;
  j["R"] = r.R;
  j["splitting"] = json::array();
  for (const auto& [p, st] : r.splitting) {
    json factors = json::array();
    for (const auto& f : st.factors) factors.push_back({f.e, f.f});
    j["splitting"].push_back({{"p", p},
                              {"factors", factors},
                              {"non_decomposed", st.non_decomposed},
                              {"f_p", st.f_p}});
  }
  j["source"] = nf::to_string(r.source);
  j["certifications"] = {{"maximal", r.cert.maximal},
                         {"h_certified_minkowski", r.cert.h_certified_minkowski},
                         {"units_verified", r.cert.units_verified},
                         {"R_recomputed", r.cert.R_recomputed}};
  // nlohmann prints doubles with 17 significant digits, so reals round-trip.
  return j.dump(2) + "\n";
}

nf::FieldRecord record_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != "pgt-field") throw InvalidInput("not a field cache document");
    if (j.at("version").get<int>() != kCacheVersion) {
      throw InvalidInput("unsupported cache version " + j.at("version").dump());
    }
    nf::FieldRecord r;
    const auto& p = j.at("poly");
    r.poly = {p.at(0).get<long long>(), p.at(1).get<long long>(), p.at(2).get<long long>()};
    r.disc_poly = j.at("disc_poly").get<long long>();
    r.disc_field = j.at("disc_field").get<long long>();
    const auto& emb = j.at("embeddings");
    if (emb.size() != 3) throw InvalidInput("expected three embeddings");
    for (std::size_t i = 0; i < 3; ++i) {
      r.embeddings[i] = {emb[i].at("lo").get<double>(), emb[i].at("hi").get<double>(),
                         emb[i].at("value").get<double>()};
    }
    for (const auto& u : j.at("fundamental_units")) {
      nf::UnitElement e;
      e.coords = u.at("coords").get<std::array<long long, 3>>();
      e.embeddings = u.at("embeddings").get<std::array<double, 3>>();
      e.alpha = u.at("alpha").get<std::array<double, 2>>();
      e.regular = u.at("regular").get<bool>();
      r.fundamental_units.push_back(e);
    }
    r.unit_status = status_from(j.at("unit_status").get<std::string>());
    r.h = j.at("h").get<long>();
    r.R = j.at("R").get<double>();
    for (const auto& s : j.at("splitting")) {
      nf::SplittingType st;
      st.p = s.at("p").get<long long>();
      for (const auto& f : s.at("factors")) st.factors.push_back({f.at(0).get<int>(), f.at(1).get<int>()});
      st.non_decomposed = s.at("non_decomposed").get<bool>();
      st.f_p = s.at("f_p").get<int>();
      r.splitting[st.p] = std::move(st);
    }
    r.source = source_from(j.at("source").get<std::string>());
    const auto& c = j.at("certifications");
    r.cert.maximal = c.at("maximal").get<bool>();
    r.cert.h_certified_minkowski = c.at("h_certified_minkowski").get<bool>();
    r.cert.units_verified = c.at("units_verified").get<bool>();
    r.cert.R_recomputed = c.at("R_recomputed").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed cache document: ") + e.what());
  }
}

FieldCache::FieldCache(std::string directory) : dir_(std::move(directory)) {
  if (dir_.empty()) throw InvalidInput("cache directory must not be empty");
}

std::string FieldCache::path_for(const nf::CubicPoly& poly) const {
  return (std::filesystem::path(dir_) / (std::to_string(poly.a) + "_" + std::to_string(poly.b) +
                                         "_" + std::to_string(poly.c) + ".json"))
      .string();
}

bool FieldCache::store(const nf::FieldRecord& record) const {
  const std::string path = path_for(record.poly);
  if (std::filesystem::exists(path)) return false;
  write_file(path, record_to_json(record));
  return true;
}

std::optional<nf::FieldRecord> FieldCache::load(const nf::CubicPoly& poly) const {
  const std::string path = path_for(poly);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return record_from_json(read_file(path));
}

std::vector<nf::FieldRecord> FieldCache::load_all() const {
  std::vector<nf::FieldRecord> out;
  if (!std::filesystem::exists(dir_)) return out;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) out.push_back(record_from_json(read_file(p.string())));
  std::sort(out.begin(), out.end(), [](const nf::FieldRecord& x, const nf::FieldRecord& y) {
    if (x.disc_field != y.disc_field) return x.disc_field < y.disc_field;
    return nf::canonical_less(x.poly, y.poly);
  });
  return out;
}

}  // namespace pgt::io
