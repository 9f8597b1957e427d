#include "vsharp/bundle.hpp"

#include "json_codec.hpp"
#include "vsharp/io.hpp"
#include "vsharp/root_data.hpp"

namespace vsharp {

using detail::json;

std::string bundle_to_json(const FunctorInstance& f) {
  json irreps = json::array();
  for (const auto& pi : f.catalog().irreps) irreps.push_back(detail::irrep_json(pi));
  json symplectic = json::array();
  for (const auto& s : f.symplectic()) {
    symplectic.push_back({{"label", s.label()}, {"form", detail::matrix_to_json(s.form)}, {"star", detail::matrix_to_json(s.star)}});
  }
  json selected = json::array();
  for (std::size_t k = 0; k < f.selected_count(); ++k) selected.push_back(f.selected(k).label());
  json spaces = json::array();
  for (std::size_t i = 0; i < f.lattice().size(); ++i) {
    const auto& sp = f.space_at(i);
    spaces.push_back({{"members", f.lattice()[i].members()},
                      {"dim", sp.dim()},
                      {"block_labels", sp.block_labels},
                      {"block_dims", sp.block_dims},
                      {"basis", detail::matrix_to_json(sp.basis)},
                      {"form", detail::matrix_to_json(sp.form)},
                      {"star", detail::matrix_to_json(sp.star)}});
  }
  const auto& tol = f.tolerances();
  json doc{{"format", "vsharp.bundle"},
           {"version", 1},
           {"tolerances",
            {{"tau", tol.tau},
             {"rank_relative", tol.rank_relative},
             {"indicator_rounding", tol.indicator_rounding},
             {"nondegeneracy", tol.nondegeneracy}}},
           {"group", detail::group_json(f.group())},
           {"irreps", std::move(irreps)},
           {"weights", json::parse(weights_to_json(f.weights()))},
           {"symplectic", std::move(symplectic)},
           {"selected", std::move(selected)},
           {"subgroups", std::move(spaces)}};
  return doc.dump(1);
}

FunctorInstance parse_bundle(std::string_view text, std::optional<double> tau) {
  const std::string what = "bundle";
  const auto doc = detail::parse_or_throw(text, what);
  if (detail::field<std::string>(doc, "format", what) != "vsharp.bundle") throw InputError("not a vsharp bundle");
  if (detail::field<int>(doc, "version", what) != 1) throw InputError("unsupported bundle version");

  FunctorInstance::Parts parts;
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    parts.tolerances.tau = detail::field<double>(t, "tau", what);
    parts.tolerances.rank_relative = detail::field<double>(t, "rank_relative", what);
    parts.tolerances.indicator_rounding = detail::field<double>(t, "indicator_rounding", what);
    parts.tolerances.nondegeneracy = detail::field<double>(t, "nondegeneracy", what);
  }
  if (tau) parts.tolerances.tau = *tau;
  if (!(parts.tolerances.tau > 0.0)) throw InputError("tolerance must be positive");

  if (!doc.contains("group")) throw InputError("bundle: missing field 'group'");
  parts.catalog.group = detail::group_from_json(doc["group"]);
  if (!doc.contains("irreps") || !doc["irreps"].is_array()) throw InputError("bundle: missing irreps");
  for (const auto& j : doc["irreps"]) parts.catalog.irreps.push_back(detail::irrep_from_json(j, parts.catalog.group, parts.tolerances));

  parts.weights = parse_weights(doc.contains("weights") ? doc["weights"].dump() : std::string{}, parts.catalog, parts.tolerances);

  for (const auto& j : detail::field<json>(doc, "symplectic", what)) {
    const auto label = detail::field<std::string>(j, "label", what);
    const auto* pi = parts.catalog.find(label);
    if (!pi) throw InputError("bundle: symplectic entry for unknown irrep '" + label + "'");
    const auto d = static_cast<Eigen::Index>(pi->degree());
    parts.symplectic.push_back(SymplecticIrrep{*pi, detail::matrix_from_json(detail::field<json>(j, "form", what), d, d, label + " form"),
                                               detail::matrix_from_json(detail::field<json>(j, "star", what), d, d, label + " star")});
  }
  parts.selected = detail::field<std::vector<std::string>>(doc, "selected", what);

  std::vector<std::vector<ElementIndex>> members;
  for (const auto& j : detail::field<json>(doc, "subgroups", what)) {
    members.push_back(detail::field<std::vector<ElementIndex>>(j, "members", what));
    StructuredSpace sp;
    sp.basis = detail::matrix_from_json(detail::field<json>(j, "basis", what), -1, -1, "subgroup basis");
    sp.form = detail::matrix_from_json(detail::field<json>(j, "form", what), -1, -1, "subgroup form");
    sp.star = detail::matrix_from_json(detail::field<json>(j, "star", what), -1, -1, "subgroup star");
    sp.block_labels = detail::field<std::vector<std::string>>(j, "block_labels", what);
    sp.block_dims = detail::field<std::vector<std::size_t>>(j, "block_dims", what);
    // An empty row list loses the column count.
    if (sp.basis.rows() == 0 && sp.form.rows() > 0) throw InputError("bundle: subgroup basis has no rows");
    parts.spaces.push_back(std::move(sp));
  }
  // Zero-row bases come back as 0x0; widen them to the space dimension.
  for (auto& sp : parts.spaces) {
    if (sp.basis.rows() == 0) sp.basis = Matrix(0, sp.form.rows());
  }

  auto f = FunctorInstance::assemble(std::move(parts));
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] != f.lattice()[i].members()) throw InputError("bundle: subgroup " + std::to_string(i) + " does not match the lattice");
  }
  return f;
}

void save_bundle(const std::filesystem::path& path, const FunctorInstance& f) { write_file_atomically(path, bundle_to_json(f)); }

FunctorInstance load_bundle(const std::filesystem::path& path, std::optional<double> tau) {
  try {
    return parse_bundle(read_text_file(path), tau);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace vsharp
