#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vsharp/functor.hpp"
#include "vsharp/io.hpp"
#include "vsharp/root_data.hpp"

namespace vsharp::testing {

inline const std::vector<std::string>& bundled_keys() {
  static const std::vector<std::string> keys{"c2", "c4", "s3", "d4", "q8", "q12", "c2xq8"};
  return keys;
}

inline std::filesystem::path data_dir() { return VSHARP_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return VSHARP_FIXTURE_DIR; }

inline std::filesystem::path catalog_path(const std::string& key) { return data_dir() / "catalogs" / (key + ".json"); }
inline std::filesystem::path weights_path(const std::string& key) { return data_dir() / "weights" / (key + ".json"); }

inline IrrepCatalog catalog_for(const std::string& key) { return load_catalog(catalog_path(key)); }

inline WeightTable weights_for(const IrrepCatalog& catalog, const std::string& key) {
  return load_weights(weights_path(key), catalog);
}

inline FunctorInstance functor_for(const std::string& key) {
  const auto catalog = catalog_for(key);
  return build_functor(catalog, weights_for(catalog, key));
}

inline Subgroup subgroup_of(const FunctorInstance& f, const std::vector<std::string>& names) {
  std::vector<ElementIndex> members;
  for (const auto& n : names) members.push_back(f.group().find(n).value());
  return Subgroup::from_members(f.group_ptr(), members);
}

inline const IrrepModel& irrep(const IrrepCatalog& c, const std::string& label) { return *c.find(label); }

}  // namespace vsharp::testing
