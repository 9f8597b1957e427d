#include "cli.hpp"

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsharp/bundle.hpp"
#include "vsharp/error.hpp"
#include "vsharp/functor.hpp"
#include "vsharp/io.hpp"
#include "vsharp/root_data.hpp"
#include "vsharp/verify.hpp"

namespace vsharp::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  double tolerance = Tolerances{}.tau;
  bool tolerance_given = false;
  std::string group_path;
  std::string irrep_manifest_path;
  std::string weights_path;
  std::string bundle_path;
  std::string cache_dir;
  std::string suite = "all";
  std::string output = "text";
  std::string subgroup;
  std::string label;
  std::string endpoint = LmfdbOptions{}.endpoint;
  bool offline = false;
};

Tolerances tolerances(const RunConfig& c) {
  if (!(c.tolerance > 0.0)) throw InputError("--tolerance must be positive");
  Tolerances t;
  t.tau = c.tolerance;
  return t;
}

IrrepCatalog load_inputs(const RunConfig& c, const Tolerances& tol) {
  if (c.irrep_manifest_path.empty()) throw InputError("--irreps is required");
  GroupPtr group;
  if (!c.group_path.empty()) group = load_group(c.group_path);
  return load_catalog(c.irrep_manifest_path, group, tol);
}

WeightTable load_weight_file(const RunConfig& c, const IrrepCatalog& catalog, const Tolerances& tol) {
  if (c.weights_path.empty()) {
    WeightTable empty;
    empty.set_group_id(catalog.group->name());
    return empty;
  }
  try {
    return load_weights(c.weights_path, catalog, tol);
  } catch (const InputError& e) {
    throw InputError(c.weights_path + ": " + e.what());
  }
}

std::string complex_text(Complex z) {
  const double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
  std::ostringstream s;
  s << std::setprecision(6) << re;
  if (im != 0.0) s << (im > 0 ? "+" : "") << im << "i";
  return s.str();
}

std::string members_text(const FiniteGroup& g, const Subgroup& h) {
  std::string s = "{";
  for (std::size_t k = 0; k < h.members().size(); ++k) s += (k ? "," : "") + g.element_name(h.members()[k]);
  return s + "}";
}

// ---------------------------------------------------------------------------

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  const auto tol = tolerances(c);
  const auto catalog = load_inputs(c, tol);
  const auto& g = *catalog.group;
  const auto report = catalog_complete(catalog.irreps, tol.tau);
  const auto subgroups = all_subgroups(catalog.group);
  long long fs_sum = 0;
  std::vector<int> fs;
  std::vector<Character> chars;
  for (const auto& pi : catalog.irreps) {
    fs.push_back(frobenius_schur(pi, tol.indicator_rounding));
    fs_sum += fs.back() * static_cast<long long>(pi.degree());
    chars.push_back(character(pi, tol.tau));
  }
  const auto involutions = count_square_roots_of_identity(g);

  if (c.output == "json") {
    json classes = json::array();
    for (const auto& cl : g.classes()) classes.push_back({{"representative", g.element_name(cl.front())}, {"size", cl.size()}});
    json irreps = json::array();
    for (std::size_t k = 0; k < catalog.irreps.size(); ++k) {
      json values = json::array();
      for (const auto& v : chars[k].values) values.push_back({v.real(), v.imag()});
      irreps.push_back({{"label", catalog.irreps[k].label()},
                        {"degree", catalog.irreps[k].degree()},
                        {"frobenius_schur", fs[k]},
                        {"character", std::move(values)}});
    }
    json doc{{"group", g.name()},
             {"order", g.order()},
             {"classes", std::move(classes)},
             {"subgroups", subgroups.size()},
             {"irreps", std::move(irreps)},
             {"catalog_complete", report.complete},
             {"sum_of_squared_degrees", report.sum_of_squared_degrees},
             {"catalog_failures", report.failures},
             {"square_roots_of_identity", involutions},
             {"indicator_degree_sum", fs_sum}};
    out << doc.dump(2) << "\n";
  } else {
    out << "group " << g.name() << ", order " << g.order() << ", " << subgroups.size() << " subgroups\n";
    out << "classes:";
    for (const auto& cl : g.classes()) out << " " << g.element_name(cl.front()) << "(" << cl.size() << ")";
    out << "\n\n";
    out << std::left << std::setw(12) << "irrep" << std::setw(8) << "degree" << std::setw(6) << "FS" << "character\n";
    for (std::size_t k = 0; k < catalog.irreps.size(); ++k) {
      out << std::setw(12) << catalog.irreps[k].label() << std::setw(8) << catalog.irreps[k].degree() << std::setw(6) << fs[k];
      for (const auto& v : chars[k].values) out << " " << complex_text(v);
      out << (fs[k] == -1 ? "   symplectic" : fs[k] == 1 ? "   orthogonal" : "   complex") << "\n";
    }
    out << "\ncatalog " << (report.complete ? "complete" : "INCOMPLETE") << ": sum of squared degrees "
        << report.sum_of_squared_degrees << " vs |G| = " << g.order() << "\n";
    for (const auto& f : report.failures) out << "  " << f << "\n";
    out << "#{g : g^2 = e} = " << involutions << ", sum FS(pi) deg(pi) = " << fs_sum << "\n";
  }
  if (!report.complete) throw InputError("irrep catalog is incomplete");
  return 0;
}

int cmd_build(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.bundle_path.empty()) throw InputError("--bundle (output path) is required");
  const auto tol = tolerances(c);
  const auto catalog = load_inputs(c, tol);
  const auto weights = load_weight_file(c, catalog, tol);
  const auto f = build_functor(catalog, weights, tol);
  save_bundle(c.bundle_path, f);

  if (f.is_zero()) err << "warning: no irrep has indicator -1 and root number -1; this is the zero functor\n";
  const auto& g = f.group();
  if (c.output == "json") {
    json subs = json::array();
    for (std::size_t i = 0; i < f.lattice().size(); ++i) {
      subs.push_back({{"index", i}, {"order", f.lattice()[i].size()}, {"normal", is_normal(f.lattice()[i])},
                      {"members", f.lattice()[i].members()}, {"dim", f.space_at(i).dim()}});
    }
    json selected = json::array();
    for (std::size_t k = 0; k < f.selected_count(); ++k) selected.push_back(f.selected(k).label());
    out << json{{"bundle", c.bundle_path}, {"group", g.name()}, {"selected", std::move(selected)},
                {"ambient_dim", f.ambient().dim()}, {"zero_functor", f.is_zero()}, {"subgroups", std::move(subs)}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "wrote " << c.bundle_path << "\n";
  out << "group " << g.name() << ", |{pi}| = " << f.selected_count() << " {";
  for (std::size_t k = 0; k < f.selected_count(); ++k) out << (k ? ", " : "") << f.selected(k).label();
  out << "}, ambient dim " << f.ambient().dim() << "\n";
  out << f.lattice().size() << " subgroups:\n";
  for (std::size_t i = 0; i < f.lattice().size(); ++i) {
    const auto& h = f.lattice()[i];
    out << "  H" << i << "  order " << h.size() << (is_normal(h) ? " normal " : "        ") << " dim V_K = " << f.space_at(i).dim()
        << "  " << members_text(g, h) << "\n";
  }
  return 0;
}

FunctorInstance instance_for(const RunConfig& c) {
  if (!c.bundle_path.empty()) {
    return load_bundle(c.bundle_path, c.tolerance_given ? std::optional<double>(tolerances(c).tau) : std::nullopt);
  }
  if (!c.irrep_manifest_path.empty()) {
    const auto tol = tolerances(c);
    const auto catalog = load_inputs(c, tol);
    return build_functor(catalog, load_weight_file(c, catalog, tol), tol);
  }
  throw InputError("--bundle (or --irreps) is required");
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto suite = suite_from_token(c.suite);
  const auto f = instance_for(c);
  const auto report = verify(f, suite);
  out << (c.output == "json" ? report.to_json() + "\n" : report.to_text());
  return report.passed() ? 0 : 1;
}

Subgroup parse_subgroup_spec(const FunctorInstance& f, const std::string& spec) {
  const auto& g = f.group();
  if (spec.empty()) throw InputError("--subgroup is required");
  if (spec.size() > 1 && spec[0] == 'H' && !g.find(spec) &&
      spec.find_first_not_of("0123456789", 1) == std::string::npos) {
    const auto i = std::stoul(spec.substr(1));
    if (i >= f.lattice().size()) throw InputError("no subgroup " + spec + " (lattice has " + std::to_string(f.lattice().size()) + ")");
    return f.lattice()[i];
  }
  std::vector<ElementIndex> members;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto b = token.find_first_not_of(' ');
    const auto e = token.find_last_not_of(' ');
    token = b == std::string::npos ? std::string{} : token.substr(b, e - b + 1);
    if (token.empty()) throw InputError("empty element in subgroup spec '" + spec + "'");
    if (const auto idx = g.find(token)) {
      members.push_back(*idx);
    } else if (token.find_first_not_of("0123456789") == std::string::npos) {
      members.push_back(std::stoul(token));
    } else {
      throw InputError("unknown element '" + token + "'");
    }
  }
  return Subgroup::from_members(f.group_ptr(), std::move(members));
}

int cmd_predict(const RunConfig& c, std::ostream& out) {
  const auto f = instance_for(c);
  const auto h = parse_subgroup_spec(f, c.subgroup);
  const auto p = predicted_vanishing_order(f, FieldObject{h});
  const auto index = f.lattice_index(h);
  if (c.output == "json") {
    json breakdown = json::object();
    for (const auto& [label, d] : p.breakdown) breakdown[label] = d;
    json doc{{"group", f.group().name()}, {"subgroup", h.members()}, {"lattice_index", index ? json(*index) : json()},
             {"field_degree", h.index()}, {"predicted_order", p.order}, {"breakdown", std::move(breakdown)},
             {"galois", p.galois}, {"conjectural", true}};
    if (p.galois_formula) doc["galois_formula"] = *p.galois_formula;
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << "K = L^H, H = " << members_text(f.group(), h);
  if (index) out << " (H" << *index << ")";
  out << ", [K:Q] = " << h.index() << (p.galois ? ", K/Q Galois" : "") << "\n";
  out << "conjectural ord_{s=1/2} zeta_K(s) = dim V_K = " << p.order << "\n";
  for (const auto& [label, d] : p.breakdown) out << "  " << label << ": " << d << "\n";
  if (p.galois_formula) out << "sum of deg pi over selected pi trivial on H = " << *p.galois_formula << "\n";
  return 0;
}

int cmd_fetch(const RunConfig& c, std::ostream& out) {
  LmfdbOptions opt;
  opt.endpoint = c.endpoint;
  opt.cache_dir = c.cache_dir.empty() ? resolve_cache_dir(".vsharp-cache") : std::filesystem::path(c.cache_dir);
  opt.allow_network = !c.offline;
  const auto r = lmfdb_fetch(c.label, opt);
  if (c.output == "json") {
    out << json{{"label", r.irrep_label}, {"root_number", r.root_number}, {"provenance", std::string(to_string(r.provenance))},
                {"group_id", r.group_id}, {"field_hint", r.field_hint}, {"cache_file", cache_path(opt.cache_dir, c.label).string()}}
               .dump(2)
        << "\n";
  } else {
    out << r.irrep_label << ": W = " << (r.root_number > 0 ? "+1" : "-1") << " (" << to_string(r.provenance) << ")\n";
    if (!r.group_id.empty()) out << "  group " << r.group_id << "\n";
    if (!r.field_hint.empty()) out << "  field " << r.field_hint << "\n";
    out << "  cached at " << cache_path(opt.cache_dir, c.label).string() << "\n";
  }
  return 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Build and verify the symplectic-representation functor on finite Galois models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vsharp 0.1.0");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", c.tolerance, "Residual tolerance tau (default 1e-9)")
        ->each([&](const std::string&) { c.tolerance_given = true; });
    sub->add_option("--output", c.output, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--group", c.group_path, "Group file (JSON); defaults to the manifest's group_file");
    sub->add_option("--irreps", c.irrep_manifest_path, "Irrep catalog manifest (JSON)");
    sub->add_option("--weights", c.weights_path, "Root-number weight file (JSON)");
  };

  auto* analyze = app.add_subcommand("analyze", "Classes, degrees, Frobenius-Schur indicators, catalog completeness");
  add_inputs(analyze);
  add_common(analyze);

  auto* build = app.add_subcommand("build", "Build the functor and write a bundle");
  add_inputs(build);
  build->add_option("--bundle", c.bundle_path, "Output bundle path");
  add_common(build);

  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites on a bundle");
  verify_cmd->add_option("--bundle", c.bundle_path, "Bundle to verify");
  add_inputs(verify_cmd);
  verify_cmd->add_option("--suite", c.suite, "thm216 | pred214 | s215 | thm217 | all");
  add_common(verify_cmd);

  auto* predict = app.add_subcommand("predict", "Predicted vanishing order for a subfield");
  predict->add_option("--bundle", c.bundle_path, "Bundle");
  add_inputs(predict);
  predict->add_option("--subgroup", c.subgroup, "Element names or indices (comma separated), or H<k> from the lattice listing");
  add_common(predict);

  auto* fetch = app.add_subcommand("fetch", "Fetch an Artin root number from the LMFDB (cached)");
  fetch->add_option("label", c.label, "Artin representation label, e.g. 2.163.8t5.1c1")->required();
  fetch->add_option("--cache-dir", c.cache_dir, "Cache directory (default $VSHARP_CACHE_DIR or .vsharp-cache)");
  fetch->add_option("--endpoint", c.endpoint, "LMFDB base URL");
  fetch->add_flag("--offline", c.offline, "Never touch the network");
  add_common(fetch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(c, out);
    if (*build) return cmd_build(c, out, err);
    if (*verify_cmd) return cmd_verify(c, out);
    if (*predict) return cmd_predict(c, out);
    if (*fetch) return cmd_fetch(c, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace vsharp::cli
