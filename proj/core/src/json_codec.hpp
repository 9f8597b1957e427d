#pragma once

// nlohmann/json glue shared by the io, bundle and report sources.

#include <string>

#include "json.hpp"
#include "vsharp/error.hpp"
#include "vsharp/group.hpp"
#include "vsharp/linalg.hpp"
#include "vsharp/repr.hpp"

namespace vsharp::detail {

using nlohmann::json;

json matrix_to_json(const Matrix& m);
// Accepts rows of [re, im] pairs (or plain reals). `rows`/`cols` of -1 mean
// "take from the data".
Matrix matrix_from_json(const json& j, Eigen::Index rows = -1, Eigen::Index cols = -1, const std::string& what = "matrix");

json group_json(const FiniteGroup& g);
GroupPtr group_from_json(const json& j);

json irrep_json(const IrrepModel& pi);
IrrepModel irrep_from_json(const json& j, const GroupPtr& group, const Tolerances& tol);

json parse_or_throw(std::string_view text, const std::string& what);

template <class T>
T field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(what + ": bad field '" + key + "': " + e.what());
  }
}

}  // namespace vsharp::detail
