#include "vsharp/verify.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <tuple>

#include "vsharp/error.hpp"

namespace vsharp {

std::string_view suite_token(Suite s) {
  switch (s) {
    case Suite::Functor: return "thm216";
    case Suite::Prediction: return "pred214";
    case Suite::Isotypic: return "s215";
    case Suite::Automorphisms: return "thm217";
    case Suite::All: return "all";
  }
  return "all";
}

Suite suite_from_token(std::string_view token) {
  if (token == "thm216" || token == "functor") return Suite::Functor;
  if (token == "pred214" || token == "prediction") return Suite::Prediction;
  if (token == "s215" || token == "isotypic") return Suite::Isotypic;
  if (token == "thm217" || token == "automorphisms") return Suite::Automorphisms;
  if (token == "all") return Suite::All;
  throw InputError("unknown suite '" + std::string(token) + "' (expected thm216, pred214, s215, thm217 or all)");
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::MaxResidual: return "max_residual";
    case Metric::MinRatio: return "min_ratio";
    case Metric::Mismatches: return "mismatches";
  }
  return "max_residual";
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::vector<const CheckResult*> Report::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Accumulator {
 public:
  explicit Accumulator(CheckResult r) : r_(std::move(r)) {}

  // Residual or ratio observation; `where` is only evaluated for a new worst case.
  template <class Where>
  void add(double v, Where&& where) {
    ++r_.cases;
    if (std::isnan(v)) v = r_.metric == Metric::MinRatio ? -kInf : kInf;
    const bool worse = r_.cases == 1 || (r_.metric == Metric::MinRatio ? v < r_.value : v > r_.value);
    if (worse) {
      r_.value = v;
      r_.detail = where();
    }
  }

  template <class Where>
  void expect(bool ok, Where&& where) {
    ++r_.cases;
    if (ok) return;
    if (r_.value == 0.0) r_.detail = where();
    r_.value += 1.0;
  }

  CheckResult finish(bool zero_functor) && {
    if (r_.cases == 0) {
      r_.vacuous = true;
      r_.value = 0.0;
      r_.passed = true;
    } else {
      switch (r_.metric) {
        case Metric::MaxResidual: r_.passed = r_.value < r_.threshold; break;
        case Metric::MinRatio: r_.passed = r_.value > r_.threshold; break;
        case Metric::Mismatches: r_.passed = r_.value == 0.0; break;
      }
    }
    if (zero_functor) r_.vacuous = true;
    if (r_.passed && r_.metric != Metric::Mismatches && !r_.vacuous) r_.detail = "worst: " + r_.detail;
    return std::move(r_);
  }

  CheckResult fail(std::string what) && {
    r_.passed = false;
    r_.value = r_.metric == Metric::MinRatio ? -kInf : kInf;
    r_.detail = "error: " + std::move(what);
    return std::move(r_);
  }

 private:
  CheckResult r_;
};

// A canonical embedding with its two matrices.
struct Arrow {
  std::size_t source = 0;
  std::size_t target = 0;
  ElementIndex sigma = 0;
  Matrix lower;    // V(a)
  Matrix adjoint;  // S_K^-1 V(a)^T S_L
  double escape = 0.0;
  std::size_t relative_degree = 1;
  bool galois = false;
  bool isomorphism = false;
  std::size_t image = 0;  // lattice index of sigma H sigma^-1
};

class Verifier {
 public:
  Verifier(const FunctorInstance& f, Report& report) : f_(f), g_(f.group()), tol_(f.tolerances()), report_(report) {}

  void structure();
  void functor();
  void prediction();
  void isotypic();
  void automorphisms();

 private:
  template <class Fn>
  void run(const std::string& section, std::string name, std::string identity, Metric metric, double threshold, Fn&& fn) {
    Accumulator acc(CheckResult{section, std::move(name), std::move(identity), metric, 0.0, threshold, true, 0, false, {}});
    try {
      fn(acc);
    } catch (const std::exception& e) {
      report_.checks.push_back(std::move(acc).fail(e.what()));
      return;
    }
    report_.checks.push_back(std::move(acc).finish(f_.is_zero()));
  }

  void build_arrows();
  const Arrow* find_arrow(std::size_t src, std::size_t tgt, ElementIndex sigma) const;
  std::string subgroup_name(std::size_t i) const { return "H" + std::to_string(i); }
  std::string arrow_name(const Arrow& a) const {
    return "(" + subgroup_name(a.source) + " -> " + subgroup_name(a.target) + ", sigma=" + g_.element_name(a.sigma) + ")";
  }
  // Action of G on V_H for normal H.
  Representation restricted_action(std::size_t i) const {
    return restrict_to(f_.ambient().action, f_.space_at(i).basis);
  }
  Matrix sum_over_image(const Arrow& a) const;

  const FunctorInstance& f_;
  const FiniteGroup& g_;
  const Tolerances& tol_;
  Report& report_;
  bool arrows_built_ = false;
  std::vector<Arrow> arrows_;
  std::map<std::tuple<std::size_t, std::size_t, ElementIndex>, std::size_t> arrow_index_;
};

void Verifier::build_arrows() {
  if (arrows_built_) return;
  arrows_built_ = true;
  const auto& lattice = f_.lattice();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    for (std::size_t j = 0; j < lattice.size(); ++j) {
      if (lattice[j].size() > lattice[i].size() || lattice[i].size() % lattice[j].size() != 0) continue;
      for (const auto& emb : embeddings_between(lattice[i], lattice[j])) {
        Arrow a;
        a.source = i;
        a.target = j;
        a.sigma = emb.representative();
        auto m = apply_embedding(f_, lattice[i], lattice[j], a.sigma);
        a.lower = std::move(m.matrix);
        a.escape = m.escape_residual;
        const auto& sk = f_.space_at(i).form;
        const auto& sl = f_.space_at(j).form;
        if (sk.rows() == 0) {
          a.adjoint = Matrix(0, sl.rows());
        } else {
          a.adjoint = Eigen::FullPivLU<Matrix>(sk).solve(a.lower.transpose() * sl);
        }
        a.relative_degree = emb.relative_degree();
        a.galois = emb.is_galois();
        a.isomorphism = emb.is_isomorphism();
        a.image = *f_.lattice_index(emb.image_subgroup());
        arrow_index_.emplace(std::make_tuple(i, j, a.sigma), arrows_.size());
        arrows_.push_back(std::move(a));
      }
    }
  }
}

const Arrow* Verifier::find_arrow(std::size_t src, std::size_t tgt, ElementIndex sigma) const {
  const auto it = arrow_index_.find({src, tgt, sigma});
  return it == arrow_index_.end() ? nullptr : &arrows_[it->second];
}

// Sum of V(tau) on V_target over tau in (sigma H sigma^-1) / H'.
Matrix Verifier::sum_over_image(const Arrow& a) const {
  const auto& top = f_.lattice()[a.target];
  const auto& base = f_.lattice()[a.image];
  const auto dim = static_cast<Eigen::Index>(f_.space_at(a.target).dim());
  Matrix sum = Matrix::Zero(dim, dim);
  for (auto tau : base.members()) {
    if (canonical_coset_representative(top, tau) == tau) sum += apply_embedding(f_, top, top, tau).matrix;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Structure: blocks, ambient space, stored subspaces.

void Verifier::structure() {
  const std::string sec = "structure";
  const auto& amb = f_.ambient();
  const auto& lattice = f_.lattice();
  const auto n = f_.selected_count();

  struct Object {
    std::string where;
    const Matrix* form;
    const Matrix* star;
  };
  std::vector<Object> objects;
  for (const auto& s : f_.symplectic()) objects.push_back({s.label(), &s.form, &s.star});
  objects.push_back({"ambient", &amb.form, &amb.star});
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (f_.space_at(i).dim() > 0) objects.push_back({"V_" + subgroup_name(i), &f_.space_at(i).form, &f_.space_at(i).star});
  }
  std::vector<SharpAxioms> axioms;
  for (const auto& o : objects) axioms.push_back(check_sharp_axioms(*o.form, *o.star));
  auto skip = [&](std::size_t k) { return objects[k].form->rows() == 0; };

  run(sec, "catalog is complete", "sum of squared degrees equals |G| and characters are orthonormal", Metric::Mismatches, 0.0,
      [&](Accumulator& acc) {
        const auto rep = catalog_complete(f_.catalog().irreps, tol_.tau);
        acc.expect(rep.complete, [&] { return rep.failures.empty() ? std::string("incomplete") : rep.failures.front(); });
      });

  run(sec, "selection rule", "the ambient blocks are exactly the irreps with indicator -1 and root number -1", Metric::Mismatches, 0.0,
      [&](Accumulator& acc) {
        for (const auto& pi : f_.catalog().irreps) {
          const int fs = frobenius_schur(pi, tol_.indicator_rounding);
          const bool has_block = [&] {
            for (const auto& s : f_.symplectic()) {
              if (s.label() == pi.label()) return true;
            }
            return false;
          }();
          acc.expect(has_block == (fs == -1), [&] { return pi.label() + " indicator " + std::to_string(fs); });
          bool selected = false;
          for (std::size_t k = 0; k < n; ++k) selected = selected || f_.selected(k).label() == pi.label();
          const bool wanted = fs == -1 && f_.weights().weight(pi.label()) == -1;
          acc.expect(selected == wanted, [&] { return pi.label() + (selected ? " selected" : " not selected"); });
        }
        for (const auto& [label, rec] : f_.weights().entries()) {
          const auto* pi = f_.catalog().find(label);
          acc.expect(pi && frobenius_schur(*pi, tol_.indicator_rounding) == -1, [&] { return "weight for " + label; });
        }
      });

  run(sec, "even degree", "symplectic irreps have even degree", Metric::Mismatches, 0.0, [&](Accumulator& acc) {
    for (const auto& s : f_.symplectic()) acc.expect(s.degree() % 2 == 0, [&] { return s.label(); });
  });

  run(sec, "form is invariant", "pi(g)^T S pi(g) = S for every block and on the ambient space", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& s : f_.symplectic()) {
          for (ElementIndex g = 0; g < g_.order(); ++g) {
            const auto& m = s.base.matrix(g);
            acc.add(max_abs_diff(m.transpose() * s.form * m, s.form), [&] { return s.label() + " at " + g_.element_name(g); });
          }
        }
        if (amb.dim() == 0) return;
        for (ElementIndex g = 0; g < g_.order(); ++g) {
          const auto& m = amb.action[g];
          acc.add(max_abs_diff(m.transpose() * amb.form * m, amb.form), [&] { return "ambient at " + g_.element_name(g); });
        }
      });

  run(sec, "star is equivariant", "pi(g) * = * pi(g) for every block and on the ambient space", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& s : f_.symplectic()) {
          for (ElementIndex g = 0; g < g_.order(); ++g) {
            const auto& m = s.base.matrix(g);
            acc.add(max_abs_diff(m * s.star, s.star * m.conjugate()), [&] { return s.label() + " at " + g_.element_name(g); });
          }
        }
        if (amb.dim() == 0) return;
        for (ElementIndex g = 0; g < g_.order(); ++g) {
          const auto& m = amb.action[g];
          acc.add(max_abs_diff(m * amb.star, amb.star * m.conjugate()), [&] { return "ambient at " + g_.element_name(g); });
        }
      });

  run(sec, "cup is alternating", "S^T = -S on blocks, ambient space and every V_K", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (std::size_t k = 0; k < objects.size(); ++k) {
          if (!skip(k)) acc.add(axioms[k].alternating, [&] { return objects[k].where; });
        }
      });

  run(sec, "cup is non-degenerate", "smallest over largest singular value of S", Metric::MinRatio, tol_.nondegeneracy,
      [&](Accumulator& acc) {
        for (std::size_t k = 0; k < objects.size(); ++k) {
          if (!skip(k)) acc.add(axioms[k].nondegeneracy, [&] { return objects[k].where; });
        }
      });

  run(sec, "*^2 = -1", "A conj(A) = -I on blocks, ambient space and every V_K", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (std::size_t k = 0; k < objects.size(); ++k) {
          if (!skip(k)) acc.add(axioms[k].star_square, [&] { return objects[k].where; });
        }
      });

  run(sec, "conj(v cup w) = *v cup *w", "hermitian symmetry of v cup *w on probe vectors", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (std::size_t k = 0; k < objects.size(); ++k) {
          if (!skip(k)) acc.add(axioms[k].hermitian, [&] { return objects[k].where; });
        }
      });

  run(sec, "v cup *v > 0", "min Re(v cup *v) / |v|^2 over probe vectors", Metric::MinRatio, 0.0, [&](Accumulator& acc) {
    for (std::size_t k = 0; k < objects.size(); ++k) {
      if (!skip(k)) acc.add(axioms[k].positivity, [&] { return objects[k].where; });
    }
  });

  run(sec, "v cup *v is real", "max |Im(v cup *v)| / |v|^2 over probe vectors", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (std::size_t k = 0; k < objects.size(); ++k) {
          if (!skip(k)) acc.add(axioms[k].positivity_imag, [&] { return objects[k].where; });
        }
      });

  run(sec, "star is unique", "the star rebuilt from the identity and from a perturbed scalar product equals the stored one",
      Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
        for (const auto& s : f_.symplectic()) {
          const auto d = static_cast<Eigen::Index>(s.degree());
          acc.add(max_abs_diff(star_from_form(s.base, s.form, tol_), s.star), [&] { return s.label() + " from identity"; });
          acc.add(max_abs_diff(star_from_form(s.base, s.form, tol_, perturbed_scalar_product(d)), s.star),
                  [&] { return s.label() + " from perturbed start"; });
        }
      });

  run(sec, "V_K is fixed by H", "rho(h) B = B for h in H", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const auto& b = f_.space_at(i).basis;
      if (b.cols() == 0) continue;
      for (auto h : lattice[i].members()) {
        acc.add(max_abs_diff(amb.action[h] * b, b), [&] { return "V_" + subgroup_name(i) + " at " + g_.element_name(h); });
      }
    }
  });

  run(sec, "basis is orthonormal", "B^H B = I", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const auto& b = f_.space_at(i).basis;
      if (b.cols() == 0) continue;
      acc.add(max_abs_diff(b.adjoint() * b, Matrix::Identity(b.cols(), b.cols())), [&] { return "V_" + subgroup_name(i); });
    }
  });

  run(sec, "V_K is the full fixed space", "dim V_K equals the rank of the averaging projector of H", Metric::Mismatches, 0.0,
      [&](Accumulator& acc) {
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          const auto p = averaging_projector(amb.action, lattice[i]);
          const auto r = p.rows() == 0 ? 0 : numeric_rank(p, tol_.rank_relative);
          acc.expect(r == f_.space_at(i).dim(), [&] {
            return "V_" + subgroup_name(i) + ": dim " + std::to_string(f_.space_at(i).dim()) + ", rank " + std::to_string(r);
          });
        }
      });

  run(sec, "form is the restricted cup", "S_K = B^T S B", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const auto& sp = f_.space_at(i);
      if (sp.dim() == 0) continue;
      acc.add(max_abs_diff(sp.basis.transpose() * amb.form * sp.basis, sp.form), [&] { return "V_" + subgroup_name(i); });
    }
  });

  run(sec, "star is the restricted *", "B A_K = A conj(B), so * preserves V_K", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          const auto& sp = f_.space_at(i);
          if (sp.dim() == 0) continue;
          acc.add(max_abs_diff(sp.basis * sp.star, amb.star * sp.basis.conjugate()), [&] { return "V_" + subgroup_name(i); });
        }
      });
}

// ---------------------------------------------------------------------------
// Functor laws, adjoint, Galois averages, object formula.

void Verifier::functor() {
  const std::string sec(suite_token(Suite::Functor));
  build_arrows();
  const auto& lattice = f_.lattice();
  auto eye = [](std::size_t d) { return Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)); };

  run(sec, "identity law", "V(id) = id", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const auto* a = find_arrow(i, i, FiniteGroup::identity());
      if (!a) throw VerificationError("identity embedding missing for " + subgroup_name(i));
      acc.add(max_abs_diff(a->lower, eye(f_.space_at(i).dim())), [&] { return subgroup_name(i); });
    }
  });

  run(sec, "representative independence", "V(a) does not depend on the representative sigma of sigma H", Metric::MaxResidual,
      tol_.tau, [&](Accumulator& acc) {
        for (const auto& a : arrows_) {
          for (auto h : lattice[a.source].members()) {
            const auto sigma = g_.mul(a.sigma, h);
            const auto m = apply_embedding(f_, lattice[a.source], lattice[a.target], sigma).matrix;
            acc.add(max_abs_diff(m, a.lower), [&] { return arrow_name(a) + " via " + g_.element_name(sigma); });
          }
        }
      });

  run(sec, "image stays in target", "sigma V_K lies in V_K'", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (const auto& a : arrows_) acc.add(a.escape, [&] { return arrow_name(a); });
  });

  run(sec, "V(a) preserves cup", "V(a)v cup_L V(a)w = v cup_K w", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (const auto& a : arrows_) {
      acc.add(max_abs_diff(a.lower.transpose() * f_.space_at(a.target).form * a.lower, f_.space_at(a.source).form),
              [&] { return arrow_name(a); });
    }
  });

  run(sec, "V(a) commutes with *", "V(a) *v = *V(a)v", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (const auto& a : arrows_) {
      acc.add(max_abs_diff(a.lower * f_.space_at(a.source).star, f_.space_at(a.target).star * a.lower.conjugate()),
              [&] { return arrow_name(a); });
    }
  });

  run(sec, "adjoint relation", "V(a)v cup_L w = v cup_K adj(a)w", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (const auto& a : arrows_) {
      acc.add(max_abs_diff(a.lower.transpose() * f_.space_at(a.target).form, f_.space_at(a.source).form * a.adjoint),
              [&] { return arrow_name(a); });
    }
  });

  run(sec, "adjoint inverts V(a)", "adj(a) V(a) = id on V_K", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (const auto& a : arrows_) {
      acc.add(max_abs_diff(a.adjoint * a.lower, eye(f_.space_at(a.source).dim())), [&] { return arrow_name(a); });
    }
  });

  run(sec, "Galois average", "V(a) adj(a) = (1/[L:K]) sum over Gal(L/K) of V(sigma) when L/K is Galois", Metric::MaxResidual,
      tol_.tau, [&](Accumulator& acc) {
        for (const auto& a : arrows_) {
          if (!a.galois) continue;
          const Matrix avg = galois_average(f_, lattice[a.image], lattice[a.target]);
          acc.add(max_abs_diff(a.lower * a.adjoint, avg), [&] { return arrow_name(a); });
        }
      });

  run(sec, "Galois average is a projector", "the average over Gal(L/K) is idempotent", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& a : arrows_) {
          if (!a.galois) continue;
          const Matrix avg = galois_average(f_, lattice[a.image], lattice[a.target]);
          acc.add(max_abs_diff(avg * avg, avg), [&] { return arrow_name(a); });
        }
      });

  run(sec, "isomorphisms are inverted by the adjoint", "adj(a) = V(a)^-1 when a is an isomorphism", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& a : arrows_) {
          if (!a.isomorphism) continue;
          acc.add(max_abs_diff(a.lower * a.adjoint, eye(f_.space_at(a.target).dim())), [&] { return arrow_name(a); });
        }
      });

  run(sec, "functoriality", "V(b o a) = V(b) V(a) for composable embeddings", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        // Exhaustive up to order 16; above that every 7th composable pair.
        const bool exhaustive = g_.order() <= 16;
        std::size_t counter = 0;
        for (const auto& a : arrows_) {
          for (const auto& b : arrows_) {
            if (b.source != a.target) continue;
            if (!exhaustive && (counter++ % 7) != 0) continue;
            const auto sigma = canonical_coset_representative(lattice[a.source], g_.mul(b.sigma, a.sigma));
            const auto* c = find_arrow(a.source, b.target, sigma);
            if (!c) throw VerificationError("composite of " + arrow_name(a) + " and " + arrow_name(b) + " is not an embedding");
            acc.add(max_abs_diff(c->lower, b.lower * a.lower), [&] { return arrow_name(b) + " o " + arrow_name(a); });
          }
        }
      });

  run(sec, "object formula", "for normal H, dim V_K = sum of deg pi over selected pi trivial on H", Metric::Mismatches, 0.0,
      [&](Accumulator& acc) {
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          if (!is_normal(lattice[i])) continue;
          std::size_t expected = 0;
          for (std::size_t k = 0; k < f_.selected_count(); ++k) {
            if (factors_through_quotient(f_.selected(k).base, lattice[i], tol_.tau)) expected += f_.selected(k).degree();
          }
          acc.expect(expected == f_.space_at(i).dim(), [&] {
            return subgroup_name(i) + ": dim " + std::to_string(f_.space_at(i).dim()) + ", expected " + std::to_string(expected);
          });
        }
      });

  run(sec, "isotypic dimensions", "for normal H, the pi-component of V_K has dimension deg pi if pi is selected and trivial on H, else 0",
      Metric::Mismatches, 0.0, [&](Accumulator& acc) {
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          if (!is_normal(lattice[i])) continue;
          const auto rho = restricted_action(i);
          for (const auto& pi : f_.catalog().irreps) {
            const auto e = isotypic_projector(rho, character(pi, tol_.tau), tol_.tau);
            const auto r = e.rows() == 0 ? 0 : numeric_rank(e, tol_.rank_relative);
            bool selected = false;
            for (std::size_t k = 0; k < f_.selected_count(); ++k) selected = selected || f_.selected(k).label() == pi.label();
            const auto expected = selected && factors_through_quotient(pi, lattice[i], tol_.tau) ? pi.degree() : 0;
            acc.expect(r == expected, [&] {
              return subgroup_name(i) + " " + pi.label() + ": rank " + std::to_string(r) + ", expected " + std::to_string(expected);
            });
          }
        }
      });

  run(sec, "monotonicity", "H' in H implies dim V_K <= dim V_K'", Metric::Mismatches, 0.0, [&](Accumulator& acc) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      for (std::size_t j = 0; j < lattice.size(); ++j) {
        if (!lattice[j].is_subset_of(lattice[i])) continue;
        acc.expect(f_.space_at(i).dim() <= f_.space_at(j).dim(), [&] { return subgroup_name(j) + " in " + subgroup_name(i); });
      }
    }
  });
}

// ---------------------------------------------------------------------------
// Lower/upper maps under the trace-scaled pairing.

void Verifier::prediction() {
  const std::string sec(suite_token(Suite::Prediction));
  build_arrows();
  const auto& lattice = f_.lattice();

  struct Data {
    const Arrow* arrow;
    Matrix upper;
    Matrix trace_src;
    Matrix trace_tgt;
    double degree;
  };
  std::vector<Data> data;
  std::map<std::size_t, std::vector<Vector>> probes;
  for (const auto& a : arrows_) {
    data.push_back({&a, static_cast<double>(a.relative_degree) * a.adjoint, trace_form(f_, lattice[a.source]),
                    trace_form(f_, lattice[a.target]), static_cast<double>(a.relative_degree)});
    for (auto i : {a.source, a.target}) {
      if (!probes.count(i)) probes.emplace(i, probe_vectors(static_cast<Eigen::Index>(f_.space_at(i).dim())));
    }
  }
  auto star_of = [&](std::size_t i) -> const Matrix& { return f_.space_at(i).star; };
  // <v, w>_tr = v^T T A conj(w)
  auto scalar = [](const Matrix& t, const Matrix& a, const Vector& v, const Vector& w) {
    return (v.transpose() * t * a * w.conjugate())(0, 0);
  };
  auto bilinear = [](const Matrix& t, const Vector& v, const Vector& w) { return (v.transpose() * t * w)(0, 0); };

  run(sec, "upper o lower = [L:K]", "alpha^* alpha_* = [L:K] id on V_K", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    for (const auto& d : data) {
      const auto n = d.arrow->lower.cols();
      acc.add(max_abs_diff(d.upper * d.arrow->lower, d.degree * Matrix::Identity(n, n)), [&] { return arrow_name(*d.arrow); });
      for (const auto& v : probes[d.arrow->source]) {
        acc.add(max_abs(d.upper * (d.arrow->lower * v) - d.degree * v), [&] { return arrow_name(*d.arrow) + " on probes"; });
      }
    }
  });

  run(sec, "lower o upper = sum of conjugates", "alpha_* alpha^* = sum over Gal(L/K) of sigma_* when L/K is Galois",
      Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
        for (const auto& d : data) {
          if (!d.arrow->galois) continue;
          const Matrix sum = sum_over_image(*d.arrow);
          acc.add(max_abs_diff(d.arrow->lower * d.upper, sum), [&] { return arrow_name(*d.arrow); });
          for (const auto& w : probes[d.arrow->target]) {
            acc.add(max_abs(d.arrow->lower * (d.upper * w) - sum * w), [&] { return arrow_name(*d.arrow) + " on probes"; });
          }
        }
      });

  run(sec, "maps commute with *", "alpha_* *h = *alpha_* h and alpha^* *h = *alpha^* h", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& d : data) {
          const auto& ak = star_of(d.arrow->source);
          const auto& al = star_of(d.arrow->target);
          for (const auto& v : probes[d.arrow->source]) {
            acc.add(max_abs(d.arrow->lower * apply_star(ak, v) - apply_star(al, d.arrow->lower * v)),
                    [&] { return arrow_name(*d.arrow) + " lower"; });
          }
          for (const auto& w : probes[d.arrow->target]) {
            acc.add(max_abs(d.upper * apply_star(al, w) - apply_star(ak, d.upper * w)), [&] { return arrow_name(*d.arrow) + " upper"; });
          }
        }
      });

  // Probe pairs for adjointness: h1 in V_K, h2 in V_L, zipped with wrap-around.
  auto for_pairs = [&](const Data& d, auto&& fn) {
    const auto& pk = probes[d.arrow->source];
    const auto& pl = probes[d.arrow->target];
    const auto n = std::max(pk.size(), pl.size());
    if (pk.empty() || pl.empty()) return;
    for (std::size_t k = 0; k < n; ++k) fn(pk[k % pk.size()], pl[k % pl.size()]);
  };

  run(sec, "adjoint under cup_tr", "alpha_* h1 cup_tr h2 = h1 cup_tr alpha^* h2", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& d : data) {
          acc.add(max_abs_diff(d.arrow->lower.transpose() * d.trace_tgt, d.trace_src * d.upper), [&] { return arrow_name(*d.arrow); });
          for_pairs(d, [&](const Vector& h1, const Vector& h2) {
            acc.add(std::abs(bilinear(d.trace_tgt, d.arrow->lower * h1, h2) - bilinear(d.trace_src, h1, d.upper * h2)),
                    [&] { return arrow_name(*d.arrow) + " on probes"; });
          });
        }
      });

  run(sec, "adjoint under <,>_tr", "<alpha_* h1, h2>_tr = <h1, alpha^* h2>_tr", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& d : data) {
          const auto& ak = star_of(d.arrow->source);
          const auto& al = star_of(d.arrow->target);
          for_pairs(d, [&](const Vector& h1, const Vector& h2) {
            acc.add(std::abs(scalar(d.trace_tgt, al, d.arrow->lower * h1, h2) - scalar(d.trace_src, ak, h1, d.upper * h2)),
                    [&] { return arrow_name(*d.arrow); });
          });
        }
      });

  // Consecutive probe pairs in V_K for the scaling laws.
  auto for_source_pairs = [&](const Data& d, auto&& fn) {
    const auto& pk = probes[d.arrow->source];
    for (std::size_t k = 0; k < pk.size(); ++k) fn(pk[k], pk[(k + 1) % pk.size()]);
  };

  run(sec, "cup_tr scales by [L:K]", "alpha_* h1 cup_tr alpha_* h2 = [L:K] h1 cup_tr h2", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& d : data) {
          const auto& m = d.arrow->lower;
          acc.add(max_abs_diff(m.transpose() * d.trace_tgt * m, d.degree * d.trace_src), [&] { return arrow_name(*d.arrow); });
          for_source_pairs(d, [&](const Vector& h1, const Vector& h2) {
            acc.add(std::abs(bilinear(d.trace_tgt, m * h1, m * h2) - d.degree * bilinear(d.trace_src, h1, h2)),
                    [&] { return arrow_name(*d.arrow) + " on probes"; });
          });
        }
      });

  run(sec, "<,>_tr scales by [L:K]", "<alpha_* h1, alpha_* h2>_tr = [L:K] <h1, h2>_tr", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (const auto& d : data) {
          const auto& m = d.arrow->lower;
          const auto& ak = star_of(d.arrow->source);
          const auto& al = star_of(d.arrow->target);
          for_source_pairs(d, [&](const Vector& h1, const Vector& h2) {
            acc.add(std::abs(scalar(d.trace_tgt, al, m * h1, m * h2) - d.degree * scalar(d.trace_src, ak, h1, h2)),
                    [&] { return arrow_name(*d.arrow); });
          });
        }
      });

  run(sec, "<,>_tr is hermitian", "conj(h1 cup_tr h2) = *h1 cup_tr *h2 on every V_K", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          if (f_.space_at(i).dim() == 0) continue;
          const auto t = trace_form(f_, lattice[i]);
          acc.add(check_sharp_axioms(t, f_.space_at(i).star).hermitian, [&] { return "V_" + subgroup_name(i); });
        }
      });

  run(sec, "<,>_tr is positive", "min Re <h, h>_tr / |h|^2 over probe vectors", Metric::MinRatio, 0.0, [&](Accumulator& acc) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      if (f_.space_at(i).dim() == 0) continue;
      const auto t = trace_form(f_, lattice[i]);
      acc.add(check_sharp_axioms(t, f_.space_at(i).star).positivity, [&] { return "V_" + subgroup_name(i); });
    }
  });
}

// ---------------------------------------------------------------------------
// Isotypic decomposition of V_K for Galois K.

void Verifier::isotypic() {
  const std::string sec(suite_token(Suite::Isotypic));
  const auto& lattice = f_.lattice();

  struct Component {
    std::size_t space;
    const IrrepModel* pi;
    std::size_t rank;
    Matrix basis;
  };
  std::vector<std::vector<Component>> per_space(lattice.size());
  std::vector<std::size_t> galois;
  std::string setup_error;
  try {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      if (!is_normal(lattice[i]) || f_.space_at(i).dim() == 0) continue;
      galois.push_back(i);
      const auto rho = restricted_action(i);
      for (const auto& pi : f_.catalog().irreps) {
        const auto e = isotypic_projector(rho, character(pi, tol_.tau), tol_.tau);
        const auto r = numeric_rank(e, tol_.rank_relative);
        if (r == 0) continue;
        per_space[i].push_back({i, &pi, r, pivoted_orthonormal_basis(e, r)});
      }
    }
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  auto guard = [&] {
    if (!setup_error.empty()) throw VerificationError(setup_error);
  };

  run(sec, "multiplicity one", "each occurring pi-component of V_K has dimension exactly deg pi", Metric::Mismatches, 0.0,
      [&](Accumulator& acc) {
        guard();
        for (auto i : galois) {
          for (const auto& c : per_space[i]) {
            acc.expect(c.rank == c.pi->degree(), [&] {
              return subgroup_name(i) + " " + c.pi->label() + ": rank " + std::to_string(c.rank);
            });
          }
        }
      });

  run(sec, "component is non-degenerate", "smallest over largest singular value of cup on each component", Metric::MinRatio,
      tol_.nondegeneracy, [&](Accumulator& acc) {
        guard();
        for (auto i : galois) {
          const auto& s = f_.space_at(i).form;
          for (const auto& c : per_space[i]) {
            acc.add(conditioning_ratio(c.basis.transpose() * s * c.basis), [&] { return subgroup_name(i) + " " + c.pi->label(); });
          }
        }
      });

  run(sec, "only symplectic pi with W = -1 occur", "every occurring pi has indicator -1 and root number -1", Metric::Mismatches,
      0.0, [&](Accumulator& acc) {
        guard();
        for (auto i : galois) {
          for (const auto& c : per_space[i]) {
            const int fs = frobenius_schur(*c.pi, tol_.indicator_rounding);
            const auto w = f_.weights().weight(c.pi->label());
            acc.expect(fs == -1 && w == -1, [&] { return subgroup_name(i) + " " + c.pi->label(); });
          }
        }
      });

  run(sec, "components are cup-orthogonal", "v cup w = 0 for v, w in distinct components", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        guard();
        for (auto i : galois) {
          const auto& s = f_.space_at(i).form;
          const auto& cs = per_space[i];
          for (std::size_t a = 0; a < cs.size(); ++a) {
            for (std::size_t b = a + 1; b < cs.size(); ++b) {
              acc.add(max_abs(cs[a].basis.transpose() * s * cs[b].basis),
                      [&] { return subgroup_name(i) + " " + cs[a].pi->label() + " vs " + cs[b].pi->label(); });
            }
          }
        }
      });

  run(sec, "components fill V_K", "the component dimensions sum to dim V_K", Metric::Mismatches, 0.0, [&](Accumulator& acc) {
    guard();
    for (auto i : galois) {
      std::size_t sum = 0;
      for (const auto& c : per_space[i]) sum += c.rank;
      acc.expect(sum == f_.space_at(i).dim(), [&] { return subgroup_name(i); });
    }
  });
}

// ---------------------------------------------------------------------------
// Natural automorphisms and the commutant.

void Verifier::automorphisms() {
  const std::string sec(suite_token(Suite::Automorphisms));
  build_arrows();
  const auto& amb = f_.ambient();
  const auto& lattice = f_.lattice();
  const auto n = f_.selected_count();
  const auto autos = natural_automorphisms(f_);

  run(sec, "automorphism count", "there are 2^|{pi}| sign automorphisms", Metric::Mismatches, 0.0, [&](Accumulator& acc) {
    acc.expect(autos.size() == (std::size_t{1} << n), [&] { return std::to_string(autos.size()) + " automorphisms"; });
  });

  run(sec, "automorphisms are distinct", "distinct sign vectors give distinct maps", Metric::Mismatches, 0.0,
      [&](Accumulator& acc) {
        for (std::size_t a = 0; a < autos.size(); ++a) {
          for (std::size_t b = a + 1; b < autos.size(); ++b) {
            acc.expect(max_abs_diff(autos[a], autos[b]) > 0.5, [&] { return std::to_string(a) + " = " + std::to_string(b); });
          }
        }
      });

  run(sec, "automorphism is equivariant", "D rho(g) = rho(g) D", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    if (amb.dim() == 0) return;
    for (std::size_t a = 0; a < autos.size(); ++a) {
      for (ElementIndex g = 0; g < g_.order(); ++g) {
        acc.add(max_abs_diff(autos[a] * amb.action[g], amb.action[g] * autos[a]), [&] { return "#" + std::to_string(a); });
      }
    }
  });

  run(sec, "automorphism preserves cup", "D^T S D = S", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    if (amb.dim() == 0) return;
    for (std::size_t a = 0; a < autos.size(); ++a) {
      acc.add(max_abs_diff(autos[a].transpose() * amb.form * autos[a], amb.form), [&] { return "#" + std::to_string(a); });
    }
  });

  run(sec, "automorphism commutes with *", "D A = A conj(D)", Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
    if (amb.dim() == 0) return;
    for (std::size_t a = 0; a < autos.size(); ++a) {
      acc.add(max_abs_diff(autos[a] * amb.star, amb.star * autos[a].conjugate()), [&] { return "#" + std::to_string(a); });
    }
  });

  run(sec, "automorphism is natural", "D preserves every V_K and commutes with every V(a)", Metric::MaxResidual, tol_.tau,
      [&](Accumulator& acc) {
        std::vector<std::vector<Matrix>> restricted(autos.size());
        for (std::size_t a = 0; a < autos.size(); ++a) {
          for (std::size_t i = 0; i < lattice.size(); ++i) {
            const auto& b = f_.space_at(i).basis;
            const Matrix db = autos[a] * b;
            const Matrix r = b.adjoint() * db;
            if (b.cols() > 0) acc.add(max_abs_diff(b * r, db), [&] { return "#" + std::to_string(a) + " leaves V_" + subgroup_name(i); });
            restricted[a].push_back(r);
          }
          for (const auto& arrow : arrows_) {
            if (arrow.lower.size() == 0) continue;
            acc.add(max_abs_diff(restricted[a][arrow.target] * arrow.lower, arrow.lower * restricted[a][arrow.source]),
                    [&] { return "#" + std::to_string(a) + " at " + arrow_name(arrow); });
          }
        }
      });

  const auto basis = commutant_basis(f_);

  run(sec, "commutant dimension", "equivariant endomorphisms of the ambient space form a space of dimension |{pi}|",
      Metric::Mismatches, 0.0, [&](Accumulator& acc) {
        acc.expect(basis.size() == n, [&] {
          return "dimension " + std::to_string(basis.size()) + ", expected " + std::to_string(n);
        });
      });

  run(sec, "commutant is spanned by block projectors", "every equivariant endomorphism is a combination of the block identities",
      Metric::MaxResidual, tol_.tau, [&](Accumulator& acc) {
        for (std::size_t c = 0; c < basis.size(); ++c) {
          Matrix rest = basis[c];
          for (std::size_t k = 0; k < n; ++k) {
            const Matrix p = amb.block_projector(k);
            const Complex coeff = (p.adjoint() * basis[c]).trace() / static_cast<double>(amb.block_sizes[k]);
            rest -= coeff * p;
          }
          acc.add(max_abs(rest), [&] { return "basis element " + std::to_string(c); });
        }
      });
}

}  // namespace

Report verify(const FunctorInstance& f, Suite suite) {
  Report report;
  report.group = f.group().name();
  for (std::size_t k = 0; k < f.selected_count(); ++k) report.selected.push_back(f.selected(k).label());
  report.tolerance = f.tolerances().tau;
  report.zero_functor = f.is_zero();
  if (suite == Suite::All) {
    report.suites = {Suite::Functor, Suite::Prediction, Suite::Isotypic, Suite::Automorphisms};
  } else {
    report.suites = {suite};
  }
  Verifier v(f, report);
  auto section = [&](std::string_view name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      CheckResult r;
      r.section = std::string(name);
      r.name = "section setup";
      r.identity = "the data needed by this section can be computed";
      r.metric = Metric::Mismatches;
      r.value = 1.0;
      r.passed = false;
      r.cases = 1;
      r.detail = std::string("error: ") + e.what();
      report.checks.push_back(std::move(r));
    }
  };
  section("structure", [&] { v.structure(); });
  for (auto s : report.suites) {
    switch (s) {
      case Suite::Functor: section(suite_token(s), [&] { v.functor(); }); break;
      case Suite::Prediction: section(suite_token(s), [&] { v.prediction(); }); break;
      case Suite::Isotypic: section(suite_token(s), [&] { v.isotypic(); }); break;
      case Suite::Automorphisms: section(suite_token(s), [&] { v.automorphisms(); }); break;
      case Suite::All: break;
    }
  }
  return report;
}

}  // namespace vsharp
