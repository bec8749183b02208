#pragma once

// Per-field JSON cache: one document per canonical polynomial, named
// "<a>_<b>_<c>.json". Entries are never rewritten once stored.

#include <optional>
#include <string>
#include <vector>

#include "pgt/nf/field.hpp"

namespace pgt::io {

inline constexpr int kCacheVersion = 1;

std::string record_to_json(const nf::FieldRecord& record);
nf::FieldRecord record_from_json(const std::string& text);

class FieldCache {
 public:
  explicit FieldCache(std::string directory);

  [[nodiscard]] const std::string& directory() const noexcept { return dir_; }
  [[nodiscard]] std::string path_for(const nf::CubicPoly& poly) const;

  // Writes a new entry; returns false when one already exists (the stored
  // document is left untouched).
  bool store(const nf::FieldRecord& record) const;
  [[nodiscard]] std::optional<nf::FieldRecord> load(const nf::CubicPoly& poly) const;
  // Every entry, ordered by (disc_field, canonical poly).
  [[nodiscard]] std::vector<nf::FieldRecord> load_all() const;

 private:
  std::string dir_;
};

}  // namespace pgt::io
