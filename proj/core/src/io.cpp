#include "vsharp/io.hpp"

#include <fstream>
#include <sstream>

#include "json_codec.hpp"

namespace vsharp {

namespace detail {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of rows");
  const auto r = static_cast<Eigen::Index>(j.size());
  if (rows >= 0 && r != rows) throw InputError(what + ": expected " + std::to_string(rows) + " rows");
  Eigen::Index c = cols;
  if (c < 0) c = r == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) throw InputError(what + ": ragged rows");
    for (Eigen::Index k = 0; k < c; ++k) {
      const auto& e = row[static_cast<std::size_t>(k)];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw InputError(what + ": entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

json parse_or_throw(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": parse error: " + e.what());
  }
}

json group_json(const FiniteGroup& g) {
  return json{{"name", g.name()},
              {"order", g.order()},
              {"element_names", g.element_names()},
              {"generators", g.generators_from_input() ? g.generators() : std::vector<ElementIndex>{}},
              {"table", g.table()}};
}

GroupPtr group_from_json(const json& j) {
  const std::string what = "group";
  const auto name = j.is_object() ? j.value("name", std::string("G")) : std::string("G");
  const auto order = field<std::size_t>(j, "order", what);
  auto table = field<std::vector<std::vector<ElementIndex>>>(j, "table", what);
  if (table.size() != order) throw InputError("group '" + name + "': table has " + std::to_string(table.size()) + " rows, order is " + std::to_string(order));
  std::vector<std::string> names;
  if (j.contains("element_names")) names = field<std::vector<std::string>>(j, "element_names", what);
  std::vector<ElementIndex> gens;
  if (j.contains("generators")) gens = field<std::vector<ElementIndex>>(j, "generators", what);
  return make_group(FiniteGroup::from_table(name, std::move(names), std::move(table), std::move(gens)));
}

json irrep_json(const IrrepModel& pi) {
  json mats = json::array();
  for (const auto& m : pi.matrices()) mats.push_back(matrix_to_json(m));
  return json{{"label", pi.label()}, {"group", pi.group().name()}, {"degree", pi.degree()}, {"matrices", std::move(mats)}};
}

IrrepModel irrep_from_json(const json& j, const GroupPtr& group, const Tolerances& tol) {
  const auto label = field<std::string>(j, "label", "irrep");
  const std::string what = "irrep '" + label + "'";
  if (j.contains("group") && field<std::string>(j, "group", what) != group->name()) {
    throw InputError(what + " belongs to group '" + j["group"].get<std::string>() + "', not '" + group->name() + "'");
  }
  const auto degree = field<std::size_t>(j, "degree", what);
  if (degree == 0) throw InputError(what + ": degree must be positive");
  if (!j.contains("matrices") || !j["matrices"].is_array()) throw InputError(what + ": missing 'matrices'");
  const auto& mats = j["matrices"];
  if (mats.size() != group->order()) throw InputError(what + ": expected one matrix per group element");
  Representation rho;
  rho.reserve(mats.size());
  const auto d = static_cast<Eigen::Index>(degree);
  for (const auto& m : mats) rho.push_back(matrix_from_json(m, d, d, what));
  return IrrepModel::create(label, group, std::move(rho), tol);
}

}  // namespace detail

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

GroupPtr parse_group(std::string_view text) { return detail::group_from_json(detail::parse_or_throw(text, "group")); }

GroupPtr load_group(const std::filesystem::path& path) {
  try {
    return parse_group(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string group_to_json(const FiniteGroup& group) { return detail::group_json(group).dump(1); }

IrrepModel parse_irrep(std::string_view text, const GroupPtr& group, const Tolerances& tol) {
  return detail::irrep_from_json(detail::parse_or_throw(text, "irrep"), group, tol);
}

IrrepModel load_irrep(const std::filesystem::path& path, const GroupPtr& group, const Tolerances& tol) {
  try {
    return parse_irrep(read_text_file(path), group, tol);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string irrep_to_json(const IrrepModel& pi) { return detail::irrep_json(pi).dump(1); }

IrrepCatalog load_catalog(const std::filesystem::path& manifest, const GroupPtr& group, const Tolerances& tol) {
  const auto doc = detail::parse_or_throw(read_text_file(manifest), manifest.string());
  const std::string what = "catalog '" + manifest.string() + "'";
  const auto base = manifest.parent_path();
  IrrepCatalog catalog;
  if (group) {
    catalog.group = group;
  } else {
    catalog.group = load_group(base / detail::field<std::string>(doc, "group_file", what));
  }
  if (doc.contains("group") && detail::field<std::string>(doc, "group", what) != catalog.group->name()) {
    throw InputError(what + " is for group '" + doc["group"].get<std::string>() + "', not '" + catalog.group->name() + "'");
  }
  for (const auto& file : detail::field<std::vector<std::string>>(doc, "irreps", what)) {
    catalog.irreps.push_back(load_irrep(base / file, catalog.group, tol));
  }
  return catalog;
}

}  // namespace vsharp
