// Acceptance gate. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cli.hpp"
#include "support.hpp"
#include "vsharp/error.hpp"
#include "vsharp/verify.hpp"

using namespace vsharp;
using vsharp::testing::bundled_keys;
using vsharp::testing::catalog_for;
using vsharp::testing::catalog_path;
using vsharp::testing::fixture_dir;
using vsharp::testing::functor_for;
using vsharp::testing::weights_path;

namespace {

// Pinned thresholds.
constexpr double kResidual = 1e-9;
constexpr double kRankRelative = 1e-8;
constexpr double kNondegenerate = 1e-6;
constexpr double kExactIndicator = 1e-12;
constexpr std::size_t kSeededProbes = 100;
constexpr std::uint32_t kProbeSeed = 42;

constexpr double kLimitAc1 = 1.0;
constexpr double kLimitAc2 = 1.0;
constexpr double kLimitAc3 = 10.0;
constexpr double kLimitAc4 = 5.0;

// Collects failures for one criterion.
struct Outcome {
  std::vector<std::string> failures;
  double worst = 0.0;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void residual(double r, const std::string& what) {
    if (std::isnan(r)) r = INFINITY;
    if (r > worst) worst = r;
    expect(r < kResidual, what + " residual " + std::to_string(r));
  }
};

const std::vector<std::string>& nonzero_keys() {
  static const std::vector<std::string> keys{"q8", "q12", "c2xq8"};
  return keys;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args, std::string* captured = nullptr) {
  args.insert(args.begin(), "vsharp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = vsharp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (captured) *captured = out.str() + err.str();
  return code;
}

void require_report(Outcome& o, const Report& r, const std::string& key) {
  o.expect(r.passed(), key + ": verify reported failures");
  for (const auto* c : r.failures()) o.failures.push_back(key + ": " + c->name + " [" + c->section + "] " + c->detail);
  for (const auto& c : r.checks) {
    if (c.metric == Metric::MaxResidual) o.residual(c.value, key + ": " + c.name);
  }
}

// Average of V(tau) over image/target, tau ranging over coset representatives.
Matrix galois_sum(const FunctorInstance& f, const Subgroup& image, const Subgroup& target) {
  const auto d = static_cast<Eigen::Index>(f.space(target).dim());
  Matrix sum = Matrix::Zero(d, d);
  double n = 0.0;
  for (auto t : left_cosets(target)) {
    if (!image.contains(t)) continue;
    sum += apply_embedding(f, target, target, t).matrix;
    n += 1.0;
  }
  return sum / n;
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome o;
  const auto f = functor_for("q8");
  const auto& lattice = f.lattice();
  o.expect(lattice.size() == 6, "Q8 has 6 subgroups");
  std::size_t proper = 0;
  for (const auto& h : lattice) {
    if (h.size() == 1) {
      o.expect(f.space(h).dim() == 2, "dim V_L = 2");
    } else {
      ++proper;
      o.expect(f.space(h).dim() == 0, "dim V_K = 0 for |H| = " + std::to_string(h.size()));
    }
  }
  o.expect(proper == 5, "5 proper subfields");
  require_report(o, verify(f, Suite::All), "q8");
  std::string text;
  const int code = cli({"verify", "--irreps", catalog_path("q8").string(), "--weights", weights_path("q8").string(), "--suite", "all"},
                       &text);
  o.expect(code == 0, "verify --suite all exit code " + std::to_string(code));
  return o;
}

Outcome ac2() {
  Outcome o;
  for (const auto& key : nonzero_keys()) {
    const auto c = catalog_for(key);
    for (const auto& pi : c.irreps) {
      if (frobenius_schur(pi) != -1) continue;
      const auto d = static_cast<Eigen::Index>(pi.degree());
      const Matrix s = make_symplectic_form(pi);
      const Matrix h1 = invariant_scalar_product(pi, Matrix::Identity(d, d));
      const Matrix h2 = invariant_scalar_product(pi, 3.0 * perturbed_scalar_product(d, kProbeSeed));
      o.expect(max_abs_diff(h1, h2) > kNondegenerate, pi.label() + ": initial scalar products coincide");
      const Matrix a1 = star_from_form(pi, s, {}, h1);
      const Matrix a2 = star_from_form(pi, s, {}, h2);
      o.residual(max_abs_diff(a1, a2), pi.label() + ": star depends on the initial scalar product");
    }
  }
  // Hand oracle: S = J forces *w = -J conj(w).
  const auto q8 = catalog_for("q8");
  Matrix j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  o.residual(max_abs_diff(make_symplectic_form(*q8.find("Q8.2a")), j), "Q8.2a form is J");
  o.residual(max_abs_diff(star_from_form(*q8.find("Q8.2a"), j), -j), "Q8.2a star is -J conj");
  return o;
}

Outcome ac3() {
  Outcome o;
  for (const auto* key : {"s3", "d4", "c4"}) {
    const auto c = catalog_for(key);
    for (const auto& pi : c.irreps) {
      const auto raw = frobenius_schur_raw(pi);
      const double nearest = std::round(raw.real());
      o.expect(std::abs(raw - nearest) < kExactIndicator, pi.label() + ": indicator not an exact integer");
      o.expect(nearest != -1.0, pi.label() + ": indicator -1 in a negative control");
    }
    o.expect(functor_for(key).is_zero(), std::string(key) + ": functor is not zero");
  }
  for (const auto& key : bundled_keys()) {
    const auto f = functor_for(key);
    const auto& g = f.group();
    std::vector<FieldEmbedding> all;
    for (const auto& src : f.lattice()) {
      for (const auto& tgt : f.lattice()) {
        for (const auto& emb : embeddings_between(src, tgt)) {
          all.push_back(emb);
          const auto& sk = f.space(src);
          const auto& sl = f.space(tgt);
          const Matrix m = V_morphism(f, emb);
          // Every coset representative gives the same map, landing in V_L.
          for (auto h : src.members()) {
            const auto r = apply_embedding(f, src, tgt, g.mul(emb.representative(), h));
            o.residual(max_abs_diff(r.matrix, m), key + ": representative dependence");
            o.residual(r.escape_residual, key + ": image escapes V_L");
          }
          // 1) V(a) is a morphism: preserves cup and commutes with *.
          o.residual(max_abs_diff(m.transpose() * sl.form * m, sk.form), key + ": cup not preserved");
          o.residual(max_abs_diff(m * sk.star, sl.star * m.conjugate()), key + ": star not preserved");
          // 2) the adjoint inverts V(a) and, for Galois extensions, V(a) adj
          // is the average over the Galois group.
          const Matrix adj = adjoint(f, emb);
          const auto dk = static_cast<Eigen::Index>(sk.dim());
          o.residual(max_abs_diff(m.transpose() * sl.form, sk.form * adj), key + ": adjoint relation");
          o.residual(max_abs_diff(adj * m, Matrix::Identity(dk, dk)), key + ": adjoint does not invert V(a)");
          const auto image = src.conjugate_by(emb.representative());
          if (is_normal_in(tgt, image)) {
            o.residual(max_abs_diff(m * adj, galois_sum(f, image, tgt)), key + ": Galois average");
          }
        }
      }
    }
    // Functoriality on every composable pair.
    for (const auto& a : all) {
      for (const auto& b : all) {
        if (!(a.target() == b.source())) continue;
        o.residual(max_abs_diff(V_morphism(f, compose(a, b)), V_morphism(f, b) * V_morphism(f, a)),
                   key + ": functoriality");
      }
    }
    require_report(o, verify(f, Suite::Functor), key);
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  o.expect(Tolerances{}.rank_relative == kRankRelative, "rank threshold is not 1e-8");
  const std::vector<std::tuple<std::string, std::size_t, std::size_t>> expected{
      {"q8", 2, 1}, {"c2xq8", 4, 2}, {"s3", 1, 0}, {"d4", 1, 0}, {"c4", 1, 0}, {"c2", 1, 0}};
  for (const auto& [key, autos, commutant] : expected) {
    const auto f = functor_for(key);
    const auto a = natural_automorphisms(f);
    o.expect(a.size() == autos, key + ": " + std::to_string(a.size()) + " automorphisms");
    o.expect(commutant_dimension(f) == commutant, key + ": commutant dimension " + std::to_string(commutant_dimension(f)));
    o.expect(f.selected_count() == commutant, key + ": |{pi}| differs from the commutant dimension");
    for (const auto& x : a) {
      for (const auto& rho : f.ambient().action) o.residual(max_abs_diff(rho * x, x * rho), key + ": automorphism not equivariant");
      o.residual(max_abs_diff(x.transpose() * f.ambient().form * x, f.ambient().form), key + ": automorphism breaks cup");
    }
    require_report(o, verify(f, Suite::Automorphisms), key);
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  for (const auto& key : bundled_keys()) {
    const auto f = functor_for(key);
    for (const auto& src : f.lattice()) {
      for (const auto& tgt : f.lattice()) {
        for (const auto& emb : embeddings_between(src, tgt)) {
          const auto p = prediction_maps(f, emb);
          const double n = static_cast<double>(p.relative_degree);
          const auto& sk = f.space(src);
          const auto& sl = f.space(tgt);
          const double deg_k = static_cast<double>(src.index());
          const double deg_l = static_cast<double>(tgt.index());
          const auto dk = static_cast<Eigen::Index>(sk.dim());
          const auto dl = static_cast<Eigen::Index>(sl.dim());
          // 1) upper o lower = [L:K].
          o.residual(max_abs_diff(p.upper * p.lower, n * Matrix::Identity(dk, dk)), key + ": upper o lower");
          // 2) lower o upper = sum of the [L:K] conjugates (Galois case).
          const auto image = emb.image_subgroup();
          if (is_normal_in(tgt, image)) {
            o.residual(max_abs_diff(p.lower * p.upper, n * galois_sum(f, image, tgt)), key + ": lower o upper");
          }
          // 5a-5c on probe vectors.
          if (dk == 0 || dl == 0) continue;
          const auto pk = probe_vectors(dk, kSeededProbes, kProbeSeed);
          const auto pl = probe_vectors(dl, kSeededProbes, kProbeSeed);
          for (std::size_t i = 0; i < std::max(pk.size(), pl.size()); ++i) {
            const Vector& v = pk[i % pk.size()];
            const Vector& v2 = pk[(i + 1) % pk.size()];
            const Vector& w = pl[i % pl.size()];
            // 5a: both maps commute with *.
            o.residual((p.lower * apply_star(sk.star, v) - apply_star(sl.star, p.lower * v)).cwiseAbs().maxCoeff(),
                       key + ": lower vs *");
            o.residual((p.upper * apply_star(sl.star, w) - apply_star(sk.star, p.upper * w)).cwiseAbs().maxCoeff(),
                       key + ": upper vs *");
            // 5b: adjunction for the trace forms.
            const Complex lhs = deg_l * cup(sl.form, p.lower * v, w);
            const Complex rhs = deg_k * cup(sk.form, v, p.upper * w);
            o.residual(std::abs(lhs - rhs), key + ": adjunction under cup_tr");
            const Complex slhs = deg_l * scalar_product(sl.form, sl.star, p.lower * v, w);
            const Complex srhs = deg_k * scalar_product(sk.form, sk.star, v, p.upper * w);
            o.residual(std::abs(slhs - srhs), key + ": adjunction under <,>_tr");
            // 5c: [L:K]-scaling of both trace pairings.
            const Complex c1 = deg_l * cup(sl.form, p.lower * v, p.lower * v2);
            const Complex c0 = n * deg_k * cup(sk.form, v, v2);
            o.residual(std::abs(c1 - c0), key + ": cup_tr scaling");
            const Complex s1 = deg_l * scalar_product(sl.form, sl.star, p.lower * v, p.lower * v2);
            const Complex s0 = n * deg_k * scalar_product(sk.form, sk.star, v, v2);
            o.residual(std::abs(s1 - s0), key + ": <,>_tr scaling");
          }
        }
      }
    }
    require_report(o, verify(f, Suite::Prediction), key);
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  for (const auto& key : bundled_keys()) {
    const auto f = functor_for(key);
    const auto& amb = f.ambient();
    for (const auto& h : f.lattice()) {
      if (!is_normal(h)) continue;
      const auto& sp = f.space(h);
      if (sp.dim() == 0) continue;
      const Matrix& b = sp.basis;
      std::size_t filled = 0;
      for (const auto& pi : f.catalog().irreps) {
        const Matrix e = b.adjoint() * isotypic_projector(amb.action, character(pi)) * b;
        const auto rank = numeric_rank(e, kRankRelative);
        if (rank == 0) continue;
        filled += rank;
        o.expect(rank == pi.degree(), key + ": " + pi.label() + " has multiplicity other than 1");
        o.expect(frobenius_schur(pi) == -1, key + ": " + pi.label() + " occurs with indicator != -1");
        o.expect(f.weights().weight(pi.label()) == -1, key + ": " + pi.label() + " occurs with weight != -1");
        const Matrix comp = b * pivoted_orthonormal_basis(e, rank);
        const double ratio = conditioning_ratio(comp.transpose() * amb.form * comp);
        o.expect(ratio > kNondegenerate, key + ": " + pi.label() + " component is degenerate");
      }
      o.expect(filled == sp.dim(), key + ": components do not fill V_K");
    }
    require_report(o, verify(f, Suite::Isotypic), key);
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  for (const auto& key : bundled_keys()) {
    const auto c = catalog_for(key);
    long long sum = 0;
    for (const auto& pi : c.irreps) sum += frobenius_schur(pi) * static_cast<long long>(pi.degree());
    const auto table = c.group->table();
    long long count = 0;
    for (std::size_t g = 0; g < table.size(); ++g) count += table[g][g] == 0 ? 1 : 0;
    o.expect(sum == count, key + ": sum FS deg = " + std::to_string(sum) + " but #{g^2 = e} = " + std::to_string(count));
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto q8 = catalog_for("q8");
  try {
    const auto w = load_weights(weights_path("q8"), q8);
    o.expect(w.weight("Q8.2a") == -1, "bundled Q8 table lacks W(Q8.2a) = -1");
  } catch (const std::exception& e) {
    o.failures.push_back(std::string("bundled Q8 table rejected: ") + e.what());
  }
  bool rejected = false;
  try {
    load_weights(fixture_dir() / "s3_orthogonal_weights.json", catalog_for("s3"));
  } catch (const InputError&) {
    rejected = true;
  }
  o.expect(rejected, "orthogonal-label table accepted");

  const auto cache = std::filesystem::temp_directory_path() / "vsharp_acceptance_cache";
  std::filesystem::remove_all(cache);
  std::filesystem::create_directories(cache);
  const std::string label = "2.163.8t5.1c1";
  std::filesystem::copy_file(fixture_dir() / "lmfdb" / (label + ".json"), cache_path(cache, label));
  LmfdbOptions opt;
  opt.cache_dir = cache;
  opt.allow_network = false;
  try {
    const auto first_bytes = slurp(cache_path(cache, label));
    const auto first = lmfdb_fetch(label, opt);
    const auto second = lmfdb_fetch(label, opt);
    o.expect(first.root_number == -1 && second.root_number == -1, "cached root number is not -1");
    o.expect(slurp(cache_path(cache, label)) == first_bytes, "cache file changed on the second read");
  } catch (const std::exception& e) {
    o.failures.push_back(std::string("offline fetch failed: ") + e.what());
  }
  std::filesystem::remove_all(cache);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    std::function<Outcome()> run;
    double limit;  // seconds; 0 means none
  };
  const std::vector<Criterion> criteria{
      {"AC1", "Q8 end-to-end", ac1, kLimitAc1},
      {"AC2", "star uniqueness and the Q8 oracle", ac2, kLimitAc2},
      {"AC3", "functor identities over the catalog", ac3, kLimitAc3},
      {"AC4", "automorphisms and commutant", ac4, kLimitAc4},
      {"AC5", "prediction identities", ac5, 0.0},
      {"AC6", "isotypic components", ac6, 0.0},
      {"AC7", "indicator-degree sum counts involutions", ac7, 0.0},
      {"AC8", "root data offline", ac8, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0.0 && secs >= c.limit) {
      o.failures.push_back("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(c.limit) + " s");
    }
    const bool ok = o.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << std::fixed << std::setprecision(3) << secs
              << " s, worst residual " << std::scientific << std::setprecision(2) << o.worst << ")" << std::defaultfloat << "\n";
    for (std::size_t k = 0; k < o.failures.size() && k < 10; ++k) std::cout << "       " << o.failures[k] << "\n";
    if (o.failures.size() > 10) std::cout << "       ... " << o.failures.size() - 10 << " more\n";
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criterion(s) failed") << "\n";
  return failed == 0 ? 0 : 1;
}
