#include "vsharp/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vsharp/error.hpp"
#include "vsharp/io.hpp"

#ifdef VSHARP_HAVE_LMFDB
#include "httplib.h"
#endif

namespace vsharp {

using nlohmann::json;

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Bundled: return "bundled";
    case Provenance::Lmfdb: return "lmfdb";
    case Provenance::User: return "user";
  }
  return "user";
}

Provenance provenance_from_string(std::string_view name) {
  if (name == "bundled") return Provenance::Bundled;
  if (name == "lmfdb") return Provenance::Lmfdb;
  if (name == "user") return Provenance::User;
  throw InputError("unknown provenance '" + std::string(name) + "'");
}

void WeightTable::insert(RootNumberRecord record) {
  if (record.root_number != 1 && record.root_number != -1) {
    throw InputError("root number for '" + record.irrep_label + "' must be +1 or -1");
  }
  const auto label = record.irrep_label;
  if (!entries_.emplace(label, std::move(record)).second) throw InputError("duplicate weight for '" + label + "'");
}

std::optional<int> WeightTable::weight(const std::string& label) const {
  if (const auto* r = find(label)) return r->root_number;
  return std::nullopt;
}

const RootNumberRecord* WeightTable::find(const std::string& label) const {
  const auto it = entries_.find(label);
  return it == entries_.end() ? nullptr : &it->second;
}

WeightTable parse_weights(std::string_view text, const IrrepCatalog& catalog, const Tolerances& tol) {
  WeightTable table;
  table.set_group_id(catalog.group ? catalog.group->name() : std::string{});
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return table;

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("weights: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("weights: top level must be an object");

  json provenance = json::object();
  if (doc.contains("provenance")) {
    provenance = doc["provenance"];
    if (!provenance.is_object()) throw InputError("weights: 'provenance' must be an object");
  }
  if (doc.contains("group")) {
    if (!doc["group"].is_string()) throw InputError("weights: 'group' must be a string");
    const auto g = doc["group"].get<std::string>();
    if (catalog.group && g != catalog.group->name()) {
      throw InputError("weights are for group '" + g + "' but the catalog is for '" + catalog.group->name() + "'");
    }
  }

  for (const auto& [label, value] : doc.items()) {
    if (label == "provenance" || label == "group") continue;
    if (!value.is_number_integer()) throw InputError("weights: value for '" + label + "' must be the integer +1 or -1");
    const auto w = value.get<long long>();
    if (w != 1 && w != -1) throw InputError("weights: value for '" + label + "' must be +1 or -1");
    const auto* pi = catalog.find(label);
    if (!pi) throw InputError("weights: unknown irrep label '" + label + "'");
    int fs = 0;
    try {
      fs = frobenius_schur(*pi, tol.indicator_rounding);
    } catch (const VerificationError& e) {
      throw InputError(std::string("weights: ") + e.what());
    }
    if (fs != -1) {
      throw InputError("weights: '" + label + "' has Frobenius-Schur indicator " + std::to_string(fs) +
                       "; only symplectic irreps carry a root number that can be -1 (orthogonal ones have W = +1)");
    }
    RootNumberRecord record;
    record.group_id = table.group_id();
    record.irrep_label = label;
    record.root_number = static_cast<int>(w);
    record.provenance = Provenance::User;
    if (provenance.contains(label)) {
      const auto& p = provenance[label];
      if (!p.is_object()) throw InputError("weights: provenance for '" + label + "' must be an object");
      if (p.contains("source")) record.provenance = provenance_from_string(p["source"].get<std::string>());
      record.field_hint = p.value("field_hint", "");
      record.note = p.value("note", "");
    }
    table.insert(std::move(record));
  }
  return table;
}

WeightTable load_weights(const std::filesystem::path& path, const IrrepCatalog& catalog, const Tolerances& tol) {
  return parse_weights(read_text_file(path), catalog, tol);
}

std::string weights_to_json(const WeightTable& table) {
  json doc = json::object();
  if (!table.group_id().empty()) doc["group"] = table.group_id();
  json prov = json::object();
  for (const auto& [label, r] : table.entries()) {
    doc[label] = r.root_number;
    json p = {{"source", std::string(to_string(r.provenance))}};
    if (!r.field_hint.empty()) p["field_hint"] = r.field_hint;
    if (!r.note.empty()) p["note"] = r.note;
    prov[label] = std::move(p);
  }
  if (!prov.empty()) doc["provenance"] = std::move(prov);
  return doc.dump(1);
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("VSHARP_CACHE_DIR"); env && *env) return env;
  return fallback;
}

std::filesystem::path cache_path(const std::filesystem::path& cache_dir, std::string_view artin_label) {
  std::string name;
  for (char c : artin_label) {
    const bool safe = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '.' || c == '-' || c == '_';
    name.push_back(safe ? c : '_');
  }
  if (name.empty() || name.front() == '.') name.insert(name.begin(), '_');
  return cache_dir / (name + ".json");
}

namespace {

struct ArtinLabel {
  std::string base;
  int orbit_index = 1;
};

// "2.163.8t5.1c1" (orbit suffix c<n>) or "2.163.8t5.1.a" (orbit letter).
ArtinLabel split_artin_label(std::string_view label) {
  ArtinLabel out;
  std::string s(label);
  if (const auto c = s.rfind('c'); c != std::string::npos && c + 1 < s.size() &&
                                    s.find_first_not_of("0123456789", c + 1) == std::string::npos &&
                                    std::count(s.begin(), s.begin() + static_cast<long>(c), '.') == 3) {
    out.base = s.substr(0, c);
    out.orbit_index = std::stoi(s.substr(c + 1));
    return out;
  }
  if (std::count(s.begin(), s.end(), '.') == 4) {
    const auto dot = s.rfind('.');
    const auto letter = s.substr(dot + 1);
    if (letter.size() == 1 && letter[0] >= 'a' && letter[0] <= 'z') {
      out.base = s.substr(0, dot);
      out.orbit_index = letter[0] - 'a' + 1;
      return out;
    }
  }
  out.base = s;
  return out;
}

int root_number_value(const json& v, std::string_view label) {
  if (v.is_null()) throw InputError("root number undetermined for '" + std::string(label) + "'");
  if (!v.is_number()) throw InputError("root number for '" + std::string(label) + "' is not numeric");
  const double w = v.get<double>();
  if (w == 0.0) throw InputError("root number undetermined for '" + std::string(label) + "'");
  if (w != 1.0 && w != -1.0) throw InputError("root number for '" + std::string(label) + "' is not +-1");
  return static_cast<int>(w);
}

}  // namespace

RootNumberRecord parse_lmfdb_response(std::string_view body, std::string_view artin_label) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("LMFDB response: parse error: ") + e.what());
  }
  const auto label = split_artin_label(artin_label);
  const json* record = nullptr;
  if (doc.is_object() && doc.contains("data") && doc["data"].is_array()) {
    for (const auto& r : doc["data"]) {
      if (r.is_object() && r.value("Baselabel", std::string{}) == label.base) {
        record = &r;
        break;
      }
    }
  }
  if (!record) throw InputError("LMFDB response has no record for '" + std::string(artin_label) + "'");

  RootNumberRecord out;
  out.irrep_label = std::string(artin_label);
  out.provenance = Provenance::Lmfdb;
  if (record->contains("GaloisConjugates") && (*record)["GaloisConjugates"].is_array()) {
    const json* conj = nullptr;
    for (const auto& c : (*record)["GaloisConjugates"]) {
      if (c.value("GalOrbIndex", 0) == label.orbit_index) conj = &c;
    }
    if (!conj && !(*record)["GaloisConjugates"].empty() && label.orbit_index == 1) conj = &(*record)["GaloisConjugates"][0];
    if (!conj) throw InputError("LMFDB record lacks Galois conjugate " + std::to_string(label.orbit_index));
    if (!conj->contains("Sign")) throw InputError("root number undetermined for '" + std::string(artin_label) + "'");
    out.root_number = root_number_value((*conj)["Sign"], artin_label);
  } else if (record->contains("Sign")) {
    out.root_number = root_number_value((*record)["Sign"], artin_label);
  } else {
    throw InputError("root number undetermined for '" + std::string(artin_label) + "'");
  }
  if (record->contains("NFGal") && (*record)["NFGal"].is_array() && !(*record)["NFGal"].empty()) {
    const auto& nf = (*record)["NFGal"];
    std::ostringstream hint;
    hint << nf.dump();
    out.field_hint = hint.str();
  }
  if (record->contains("GaloisLabel") && (*record)["GaloisLabel"].is_string()) {
    out.group_id = (*record)["GaloisLabel"].get<std::string>();
  }
  return out;
}

bool lmfdb_network_available() {
#ifdef VSHARP_HAVE_LMFDB
  return true;
#else
  return false;
#endif
}

namespace {

#ifdef VSHARP_HAVE_LMFDB
std::string http_get(const LmfdbOptions& options, const std::string& path) {
  httplib::Client client(options.endpoint);
  client.set_connection_timeout(options.timeout);
  client.set_read_timeout(options.timeout);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res) throw InputError("LMFDB request failed (" + httplib::to_string(res.error()) + ") and no cached record");
  if (res->status != 200) throw InputError("LMFDB request returned HTTP " + std::to_string(res->status));
  return res->body;
}
#endif

std::string url_encode(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '.' || c == '-' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

}  // namespace

RootNumberRecord lmfdb_fetch(std::string_view artin_label, const LmfdbOptions& options) {
  if (artin_label.empty()) throw InputError("empty Artin label");
  const auto path = cache_path(options.cache_dir, artin_label);
  if (std::filesystem::exists(path)) return parse_lmfdb_response(read_text_file(path), artin_label);

  if (!options.allow_network) throw InputError("'" + std::string(artin_label) + "' is not cached and network access is disabled");
#ifdef VSHARP_HAVE_LMFDB
  const auto label = split_artin_label(artin_label);
  const std::string body = http_get(options, "/api/artin_reps/?Baselabel=" + url_encode(label.base) + "&_format=json");
  auto record = parse_lmfdb_response(body, artin_label);
  write_file_atomically(path, body);
  return record;
#else
  throw InputError("'" + std::string(artin_label) + "' is not cached and this build has no network client");
#endif
}

}  // namespace vsharp
