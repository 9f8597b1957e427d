#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "vsharp/repr.hpp"

namespace vsharp {

enum class Provenance { Bundled, Lmfdb, User };

std::string_view to_string(Provenance p);
// Throws InputError on unknown names.
Provenance provenance_from_string(std::string_view name);

struct RootNumberRecord {
  std::string group_id;
  std::string irrep_label;
  int root_number = 0;  // +1 or -1
  Provenance provenance = Provenance::User;
  std::string field_hint;
  std::string note;
};

// Root numbers keyed by irrep label. Only symplectic irreps may appear.
class WeightTable {
 public:
  WeightTable() = default;

  // Throws InputError if the record's value is not +-1 or the label repeats.
  void insert(RootNumberRecord record);

  std::optional<int> weight(const std::string& label) const;
  const RootNumberRecord* find(const std::string& label) const;
  const std::map<std::string, RootNumberRecord>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::string& group_id() const { return group_id_; }
  void set_group_id(std::string id) { group_id_ = std::move(id); }

 private:
  std::string group_id_;
  std::map<std::string, RootNumberRecord> entries_;
};

// Parses a weight document: a JSON object mapping irrep labels to +-1, with
// optional "group" (string) and "provenance" (label -> {source, field_hint,
// note}) members. Blank text is an empty table. Each label must name a
// catalog irrep with Frobenius-Schur indicator -1: orthogonal irreps always
// have root number +1 and complex ones are not self-dual. Throws InputError.
WeightTable parse_weights(std::string_view text, const IrrepCatalog& catalog, const Tolerances& tol = {});
WeightTable load_weights(const std::filesystem::path& path, const IrrepCatalog& catalog, const Tolerances& tol = {});

// Inverse of parse_weights.
std::string weights_to_json(const WeightTable& table);

struct LmfdbOptions {
  // Scheme + host (+ port). The request is
  //   GET {endpoint}/api/artin_reps/?Baselabel={base}&_format=json
  std::string endpoint = "https://www.lmfdb.org";
  std::filesystem::path cache_dir;
  bool allow_network = true;
  std::chrono::seconds timeout{20};
};

// Cache directory: $VSHARP_CACHE_DIR if set, else `fallback`.
std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback);

// Cache file for a label: <cache_dir>/<label with unsafe characters replaced>.json
std::filesystem::path cache_path(const std::filesystem::path& cache_dir, std::string_view artin_label);

// Extracts the root number for `artin_label` (e.g. "2.163.8t5.1c1") from an
// artin_reps API response. Throws InputError if the record is missing, the
// root number is undetermined (0 / null), or not +-1.
RootNumberRecord parse_lmfdb_response(std::string_view body, std::string_view artin_label);

// Cache hit: parse the cached bytes, no network. Miss: fetch, validate, write
// the response body atomically (temp file + rename), return. Throws
// InputError on network failure with an empty cache.
RootNumberRecord lmfdb_fetch(std::string_view artin_label, const LmfdbOptions& options);

bool lmfdb_network_available();

}  // namespace vsharp
