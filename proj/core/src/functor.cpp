#include "vsharp/functor.hpp"

#include <algorithm>
#include <set>

#include "vsharp/error.hpp"

namespace vsharp {

// ---------------------------------------------------------------------------
// Embeddings

bool FieldEmbedding::admissible(const Subgroup& source, const Subgroup& target, ElementIndex sigma) {
  const auto& g = source.group();
  const auto inv = g.inverse(sigma);
  return std::all_of(target.members().begin(), target.members().end(),
                     [&](ElementIndex h) { return source.contains(g.conjugate(inv, h)); });
}

FieldEmbedding FieldEmbedding::create(Subgroup source, Subgroup target, ElementIndex sigma) {
  if (sigma >= source.group().order()) throw InputError("embedding representative out of range");
  if (!admissible(source, target, sigma)) {
    throw InputError("sigma^-1 H' sigma is not contained in H for sigma = " + source.group().element_name(sigma));
  }
  const auto canonical = canonical_coset_representative(source, sigma);
  return FieldEmbedding(std::move(source), std::move(target), canonical);
}

FieldEmbedding FieldEmbedding::identity(const Subgroup& h) { return FieldEmbedding(h, h, FiniteGroup::identity()); }

Subgroup FieldEmbedding::image_subgroup() const { return source_.conjugate_by(sigma_); }

bool FieldEmbedding::is_galois() const { return is_normal_in(target_, image_subgroup()); }

FieldEmbedding compose(const FieldEmbedding& first, const FieldEmbedding& second) {
  if (!(first.target() == second.source())) throw InputError("embeddings are not composable");
  const auto& g = first.source().group();
  return FieldEmbedding::create(first.source(), second.target(), g.mul(second.representative(), first.representative()));
}

std::vector<FieldEmbedding> embeddings_between(const Subgroup& source, const Subgroup& target) {
  std::vector<FieldEmbedding> out;
  for (auto sigma : left_cosets(source)) {
    if (FieldEmbedding::admissible(source, target, sigma)) out.push_back(FieldEmbedding::create(source, target, sigma));
  }
  return out;
}

Matrix AmbientSpace::block_projector(std::size_t k) const {
  Matrix p = Matrix::Zero(dim(), dim());
  p.block(block_offsets.at(k), block_offsets.at(k), block_sizes.at(k), block_sizes.at(k)).setIdentity();
  return p;
}

// ---------------------------------------------------------------------------
// Instance

std::optional<std::size_t> FunctorInstance::lattice_index(const Subgroup& h) const {
  const auto it = lattice_lookup_.find(h.members());
  if (it == lattice_lookup_.end()) return std::nullopt;
  return it->second;
}

const StructuredSpace& FunctorInstance::space(const Subgroup& h) const {
  const auto idx = lattice_index(h);
  if (!idx) throw InputError("not a subgroup of " + group().name());
  return spaces_.at(*idx);
}

FunctorInstance FunctorInstance::assemble(Parts parts) {
  if (!parts.catalog.group) throw InputError("catalog has no group");
  FunctorInstance f;
  f.catalog_ = std::move(parts.catalog);
  f.weights_ = std::move(parts.weights);
  f.tolerances_ = parts.tolerances;

  // Keep symplectic blocks in catalog order.
  for (const auto& pi : f.catalog_.irreps) {
    for (auto& s : parts.symplectic) {
      if (s.label() == pi.label()) f.symplectic_.push_back(std::move(s));
    }
  }
  if (f.symplectic_.size() != parts.symplectic.size()) throw InputError("symplectic data names an irrep outside the catalog");
  for (const auto& s : f.symplectic_) {
    const auto d = static_cast<Eigen::Index>(s.degree());
    if (s.form.rows() != d || s.form.cols() != d || s.star.rows() != d || s.star.cols() != d) {
      throw InputError("form/star of '" + s.label() + "' have the wrong shape");
    }
  }
  std::set<std::string> wanted(parts.selected.begin(), parts.selected.end());
  for (std::size_t k = 0; k < f.symplectic_.size(); ++k) {
    if (wanted.erase(f.symplectic_[k].label())) f.selected_.push_back(k);
  }
  if (!wanted.empty()) throw InputError("selected irrep '" + *wanted.begin() + "' is not symplectic or not in the catalog");

  const auto& group = *f.catalog_.group;
  std::vector<Representation> actions;
  std::vector<Matrix> forms;
  std::vector<Matrix> stars;
  Eigen::Index offset = 0;
  for (auto k : f.selected_) {
    const auto& s = f.symplectic_[k];
    actions.push_back(s.base.matrices());
    forms.push_back(s.form);
    stars.push_back(s.star);
    f.ambient_.block_labels.push_back(s.label());
    f.ambient_.block_offsets.push_back(offset);
    f.ambient_.block_sizes.push_back(static_cast<Eigen::Index>(s.degree()));
    offset += static_cast<Eigen::Index>(s.degree());
  }
  if (actions.empty()) {
    f.ambient_.action.assign(group.order(), Matrix(0, 0));
  } else {
    f.ambient_.action = direct_sum(actions);
  }
  f.ambient_.form = block_diagonal(forms);
  f.ambient_.star = block_diagonal(stars);

  f.lattice_ = all_subgroups(f.catalog_.group);
  for (std::size_t i = 0; i < f.lattice_.size(); ++i) f.lattice_lookup_.emplace(f.lattice_[i].members(), i);

  if (parts.spaces.empty()) {
    for (const auto& h : f.lattice_) f.spaces_.push_back(V_object(f, FieldObject{h}));
  } else {
    if (parts.spaces.size() != f.lattice_.size()) {
      throw InputError("expected " + std::to_string(f.lattice_.size()) + " subgroup spaces, got " + std::to_string(parts.spaces.size()));
    }
    for (const auto& sp : parts.spaces) {
      const auto d = sp.form.rows();
      if (sp.form.cols() != d || sp.star.rows() != d || sp.star.cols() != d || sp.basis.cols() != d ||
          sp.basis.rows() != f.ambient_.dim()) {
        throw InputError("stored subgroup space has inconsistent shapes");
      }
    }
    f.spaces_ = std::move(parts.spaces);
  }
  return f;
}

FunctorInstance build_functor(const IrrepCatalog& catalog, const WeightTable& weights, const Tolerances& tol) {
  const auto report = catalog_complete(catalog.irreps, tol.tau);
  if (!report.complete) {
    std::string msg = "incomplete irrep catalog:";
    for (const auto& f : report.failures) msg += " " + f + ";";
    throw InputError(msg);
  }
  std::vector<int> indicators;
  for (const auto& pi : catalog.irreps) indicators.push_back(frobenius_schur(pi, tol.indicator_rounding));
  for (const auto& [label, record] : weights.entries()) {
    const auto* pi = catalog.find(label);
    if (!pi) throw InputError("weight for unknown irrep '" + label + "'");
    if (frobenius_schur(*pi, tol.indicator_rounding) != -1) {
      throw InputError("weight given for non-symplectic irrep '" + label + "'");
    }
  }

  FunctorInstance::Parts parts;
  parts.catalog = catalog;
  parts.weights = weights;
  parts.tolerances = tol;
  for (std::size_t i = 0; i < catalog.irreps.size(); ++i) {
    if (indicators[i] != -1) continue;
    parts.symplectic.push_back(make_symplectic_irrep(catalog.irreps[i], tol));
    if (weights.weight(catalog.irreps[i].label()) == -1) parts.selected.push_back(catalog.irreps[i].label());
  }
  auto f = FunctorInstance::assemble(std::move(parts));

  const auto& amb = f.ambient();
  for (const auto& m : amb.action) {
    if (max_abs_diff(m.transpose() * amb.form * m, amb.form) >= tol.tau) {
      throw VerificationError("group does not act symplectically on the ambient space");
    }
    if (max_abs_diff(m * amb.star, amb.star * m.conjugate()) >= tol.tau) {
      throw VerificationError("group action does not commute with the ambient star operator");
    }
  }
  if (const auto v = check_sharp_axioms(amb.form, amb.star).violation(tol); !v.empty()) {
    throw VerificationError("ambient space violates: " + v);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Objects and morphisms

StructuredSpace V_object(const FunctorInstance& f, const FieldObject& k) {
  const auto& tol = f.tolerances();
  const auto& amb = f.ambient();
  StructuredSpace out;
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < f.selected_count(); ++b) {
    const auto& s = f.selected(b);
    Matrix basis = fixed_subspace(s.base, k.subgroup, tol);
    out.block_labels.push_back(s.label());
    out.block_dims.push_back(static_cast<std::size_t>(basis.cols()));
    blocks.push_back(std::move(basis));
  }
  out.basis = block_diagonal(blocks);
  out.form = out.basis.transpose() * amb.form * out.basis;
  out.star = out.basis.adjoint() * amb.star * out.basis.conjugate();
  if (max_abs_diff(out.basis * out.star, amb.star * out.basis.conjugate()) >= tol.tau) {
    throw VerificationError("star operator does not preserve the fixed space");
  }
  if (conditioning_ratio(out.form) <= tol.nondegeneracy) {
    throw VerificationError("restricted form is degenerate on the fixed space");
  }
  return out;
}

MorphismResult apply_embedding(const FunctorInstance& f, const Subgroup& source, const Subgroup& target, ElementIndex sigma) {
  const auto& bs = f.space(source).basis;
  const auto& bt = f.space(target).basis;
  const Matrix moved = f.ambient().action.at(sigma) * bs;
  MorphismResult r;
  r.matrix = bt.adjoint() * moved;
  r.escape_residual = max_abs_diff(bt * r.matrix, moved);
  return r;
}

Matrix V_morphism(const FunctorInstance& f, const FieldEmbedding& emb) {
  auto r = apply_embedding(f, emb.source(), emb.target(), emb.representative());
  if (r.escape_residual >= f.tolerances().tau) throw VerificationError("image of V(a) escapes the target space");
  return std::move(r.matrix);
}

Matrix adjoint(const FunctorInstance& f, const FieldEmbedding& emb) {
  const auto& sk = f.space(emb.source()).form;
  const auto& sl = f.space(emb.target()).form;
  const Matrix m = V_morphism(f, emb);
  if (sk.rows() == 0) return Matrix(0, sl.rows());
  Eigen::FullPivLU<Matrix> lu(sk);
  if (!lu.isInvertible()) throw VerificationError("source form is degenerate; adjoint undefined");
  // M^T S_L = S_K adj
  return lu.solve(m.transpose() * sl);
}

Matrix galois_average(const FunctorInstance& f, const Subgroup& base, const Subgroup& top) {
  if (!is_normal_in(top, base)) throw InputError("subgroup is not normal in the base; the extension is not Galois");
  const auto dim = static_cast<Eigen::Index>(f.space(top).dim());
  Matrix sum = Matrix::Zero(dim, dim);
  std::size_t count = 0;
  for (auto tau : base.members()) {
    if (canonical_coset_representative(top, tau) != tau) continue;
    sum += apply_embedding(f, top, top, tau).matrix;
    ++count;
  }
  return sum / static_cast<double>(count);
}

PredictionMaps prediction_maps(const FunctorInstance& f, const FieldEmbedding& emb) {
  PredictionMaps p;
  p.relative_degree = emb.relative_degree();
  p.lower = V_morphism(f, emb);
  p.upper = static_cast<double>(p.relative_degree) * adjoint(f, emb);
  return p;
}

Matrix trace_form(const FunctorInstance& f, const Subgroup& h) {
  return static_cast<double>(h.index()) * f.space(h).form;
}

// ---------------------------------------------------------------------------
// Automorphisms

std::vector<Matrix> natural_automorphisms(const FunctorInstance& f) {
  const auto& amb = f.ambient();
  const std::size_t n = f.selected_count();
  std::vector<Matrix> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Matrix d = Matrix::Identity(amb.dim(), amb.dim());
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) {
        d.block(amb.block_offsets[k], amb.block_offsets[k], amb.block_sizes[k], amb.block_sizes[k]) *= -1.0;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Matrix> commutant_basis(const FunctorInstance& f) {
  const auto& amb = f.ambient();
  const auto n = amb.dim();
  if (n == 0) return {};
  const Matrix id = Matrix::Identity(n, n);
  const auto& gens = f.group().generators();
  Matrix constraints(static_cast<Eigen::Index>(gens.size()) * n * n, n * n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& rho = amb.action[gens[k]];
    // vec(rho X - X rho) = (I kron rho - rho^T kron I) vec(X)
    constraints.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = kron(id, rho) - kron(rho.transpose(), id);
  }
  const Matrix kernel = nullspace(constraints, f.tolerances().rank_relative);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.push_back(unvectorize(kernel.col(c), n, n));
  return out;
}

std::size_t commutant_dimension(const FunctorInstance& f) { return commutant_basis(f).size(); }

// ---------------------------------------------------------------------------
// Predictions

bool factors_through_quotient(const IrrepModel& pi, const Subgroup& h, double tol) {
  const auto d = static_cast<Eigen::Index>(pi.degree());
  return std::all_of(h.members().begin(), h.members().end(),
                     [&](ElementIndex m) { return max_abs_diff(pi.matrix(m), Matrix::Identity(d, d)) < tol; });
}

VanishingPrediction predicted_vanishing_order(const FunctorInstance& f, const FieldObject& k) {
  const auto& sp = f.space(k.subgroup);
  VanishingPrediction p;
  p.order = sp.dim();
  for (std::size_t b = 0; b < sp.block_labels.size(); ++b) p.breakdown.emplace_back(sp.block_labels[b], sp.block_dims.at(b));
  p.galois = is_normal(k.subgroup);
  if (p.galois) {
    std::size_t sum = 0;
    for (std::size_t b = 0; b < f.selected_count(); ++b) {
      const auto& s = f.selected(b);
      if (factors_through_quotient(s.base, k.subgroup, f.tolerances().tau)) sum += s.degree();
    }
    p.galois_formula = sum;
  }
  return p;
}

}  // namespace vsharp
