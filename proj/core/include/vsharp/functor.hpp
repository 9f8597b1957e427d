#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vsharp/group.hpp"
#include "vsharp/linalg.hpp"
#include "vsharp/repr.hpp"
#include "vsharp/root_data.hpp"
#include "vsharp/structured.hpp"
#include "vsharp/symplectic.hpp"

namespace vsharp {

// An intermediate field K = L^H of the model extension L/Q with group G,
// represented by its fixing subgroup H. [K : Q] = [G : H].
struct FieldObject {
  Subgroup subgroup;

  std::size_t degree() const { return subgroup.index(); }
};

// A field embedding K -> K' given by (H, H', sigma) with sigma^-1 H' sigma
// contained in H; it acts on vectors by v -> sigma v. sigma is stored as the
// smallest element of its coset sigma H.
class FieldEmbedding {
 public:
  // Throws InputError if the containment fails.
  static FieldEmbedding create(Subgroup source, Subgroup target, ElementIndex sigma);
  static FieldEmbedding identity(const Subgroup& h);
  static bool admissible(const Subgroup& source, const Subgroup& target, ElementIndex sigma);

  const Subgroup& source() const { return source_; }
  const Subgroup& target() const { return target_; }
  ElementIndex representative() const { return sigma_; }
  // [K' : K] = |H| / |H'|
  std::size_t relative_degree() const { return source_.size() / target_.size(); }
  // sigma H sigma^-1, the fixing group of the image of K inside K'.
  Subgroup image_subgroup() const;
  // K' is Galois over the image of K.
  bool is_galois() const;
  bool is_isomorphism() const { return source_.size() == target_.size(); }

 private:
  FieldEmbedding(Subgroup source, Subgroup target, ElementIndex sigma)
      : source_(std::move(source)), target_(std::move(target)), sigma_(sigma) {}

  Subgroup source_;
  Subgroup target_;
  ElementIndex sigma_;
};

// second o first. Throws InputError unless first.target() == second.source().
FieldEmbedding compose(const FieldEmbedding& first, const FieldEmbedding& second);

// All embeddings source -> target, one per admissible coset.
std::vector<FieldEmbedding> embeddings_between(const Subgroup& source, const Subgroup& target);

// Direct sum of the selected symplectic irreps with their forms and stars.
struct AmbientSpace {
  Representation action;
  Matrix form;
  Matrix star;
  std::vector<std::string> block_labels;
  std::vector<Eigen::Index> block_offsets;
  std::vector<Eigen::Index> block_sizes;

  Eigen::Index dim() const { return form.rows(); }
  Matrix block_projector(std::size_t k) const;
};

class FunctorInstance {
 public:
  struct Parts {
    IrrepCatalog catalog;
    std::vector<SymplecticIrrep> symplectic;
    WeightTable weights;
    std::vector<std::string> selected;  // labels, in catalog order
    std::vector<StructuredSpace> spaces; // one per subgroup; empty = compute
    Tolerances tolerances;
  };

  // Shapes and labels are checked (InputError); no mathematical validation.
  // Missing spaces are computed from the ambient data.
  static FunctorInstance assemble(Parts parts);

  const FiniteGroup& group() const { return *catalog_.group; }
  const GroupPtr& group_ptr() const { return catalog_.group; }
  const IrrepCatalog& catalog() const { return catalog_; }
  const std::vector<SymplecticIrrep>& symplectic() const { return symplectic_; }
  const WeightTable& weights() const { return weights_; }
  // Selected irreps {pi : FS = -1, W = -1}, in ambient block order.
  std::size_t selected_count() const { return selected_.size(); }
  const SymplecticIrrep& selected(std::size_t k) const { return symplectic_.at(selected_.at(k)); }
  const AmbientSpace& ambient() const { return ambient_; }
  const Tolerances& tolerances() const { return tolerances_; }
  bool is_zero() const { return selected_.empty(); }

  const std::vector<Subgroup>& lattice() const { return lattice_; }
  std::optional<std::size_t> lattice_index(const Subgroup& h) const;
  // Stored object for a subgroup. Throws InputError if not a subgroup of G.
  const StructuredSpace& space(const Subgroup& h) const;
  const StructuredSpace& space_at(std::size_t index) const { return spaces_.at(index); }

  FunctorInstance(const FunctorInstance&) = default;
  FunctorInstance(FunctorInstance&&) = default;
  FunctorInstance& operator=(const FunctorInstance&) = default;
  FunctorInstance& operator=(FunctorInstance&&) = default;

 private:
  FunctorInstance() = default;

  IrrepCatalog catalog_;
  std::vector<SymplecticIrrep> symplectic_;
  WeightTable weights_;
  std::vector<std::size_t> selected_;  // indices into symplectic_
  AmbientSpace ambient_;
  Tolerances tolerances_;
  std::vector<Subgroup> lattice_;
  std::map<std::vector<ElementIndex>, std::size_t> lattice_lookup_;
  std::vector<StructuredSpace> spaces_;
};

// Builds V for the catalog and root numbers. Throws InputError for an
// incomplete catalog or invalid weights, VerificationError if any structural
// invariant fails.
FunctorInstance build_functor(const IrrepCatalog& catalog, const WeightTable& weights, const Tolerances& tol = {});

// V_K = (ambient)^H with the restricted form and star. Throws
// VerificationError if the restricted form is degenerate or the star leaves
// the subspace.
StructuredSpace V_object(const FunctorInstance& f, const FieldObject& k);

struct MorphismResult {
  Matrix matrix;           // dim V_target x dim V_source
  double escape_residual;  // max |B' M - sigma B|
};

// v -> sigma v restricted to V_source, for any representative sigma.
MorphismResult apply_embedding(const FunctorInstance& f, const Subgroup& source, const Subgroup& target, ElementIndex sigma);

// Throws VerificationError if the image escapes V_target beyond tau.
Matrix V_morphism(const FunctorInstance& f, const FieldEmbedding& emb);

// The map defined by V(a)v cup_L w = v cup_K adjoint(w).
Matrix adjoint(const FunctorInstance& f, const FieldEmbedding& emb);

// (1/[base : top]) sum over sigma in base/top of V(sigma) on V_top.
// Throws InputError unless top is normal in base.
Matrix galois_average(const FunctorInstance& f, const Subgroup& base, const Subgroup& top);

struct PredictionMaps {
  Matrix lower;  // V(a)
  Matrix upper;  // [L:K] * adjoint
  std::size_t relative_degree = 1;
};

PredictionMaps prediction_maps(const FunctorInstance& f, const FieldEmbedding& emb);

// cup_tr on V_K: [K : Q] times the restricted ambient form.
Matrix trace_form(const FunctorInstance& f, const Subgroup& h);

// Sign-vector automorphisms, one per map {pi} -> {+1, -1}; bit k of the index
// set means -1 on block k.
std::vector<Matrix> natural_automorphisms(const FunctorInstance& f);

// Basis of linear maps X on the ambient space with rho(g) X = X rho(g).
std::vector<Matrix> commutant_basis(const FunctorInstance& f);
std::size_t commutant_dimension(const FunctorInstance& f);

// H is contained in the kernel of pi.
bool factors_through_quotient(const IrrepModel& pi, const Subgroup& h, double tol);

struct VanishingPrediction {
  std::size_t order = 0;
  std::vector<std::pair<std::string, std::size_t>> breakdown;  // per selected pi
  bool galois = false;
  // For normal H: sum of deg pi over selected pi trivial on H.
  std::optional<std::size_t> galois_formula;
};

VanishingPrediction predicted_vanishing_order(const FunctorInstance& f, const FieldObject& k);

}  // namespace vsharp
