#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsharp/group.hpp"
#include "vsharp/linalg.hpp"

namespace vsharp {

// An explicit matrix model of a complex irreducible representation.
class IrrepModel {
 public:
  // Validates pi(e) = I, the homomorphism law on all pairs and <chi, chi> = 1,
  // each within tol.tau. Throws InputError.
  static IrrepModel create(std::string label, GroupPtr group, Representation matrices, const Tolerances& tol = {});

  const std::string& label() const { return label_; }
  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t degree() const { return degree_; }
  const Matrix& matrix(ElementIndex g) const { return matrices_.at(g); }
  const Representation& matrices() const { return matrices_; }

 private:
  IrrepModel() = default;

  std::string label_;
  GroupPtr group_;
  std::size_t degree_ = 0;
  Representation matrices_;
};

// Class function, one value per conjugacy class in FiniteGroup::classes() order.
struct Character {
  GroupPtr group;
  std::vector<Complex> values;

  Complex degree() const { return values.front(); }
  Complex at(ElementIndex g) const { return values.at(group->class_of(g)); }
};

// Largest deviation of a representation from the homomorphism law.
double homomorphism_residual(const FiniteGroup& group, const Representation& rho);

// Traces, checked constant on classes within tol. Throws VerificationError.
Character character(const IrrepModel& pi, double tol = 1e-9);
Character character_of(const GroupPtr& group, const Representation& rho, double tol = 1e-9);
Character trivial_character(const GroupPtr& group);

// (1/|G|) sum_g chi1(g) conj(chi2(g)), summed over classes.
Complex char_inner(const Character& chi1, const Character& chi2);

// Unrounded (1/|G|) sum_g chi(g^2).
Complex frobenius_schur_raw(const IrrepModel& pi);

// +1 orthogonal, 0 complex, -1 symplectic. Throws VerificationError if the raw
// value is further than `rounding` from an integer in {-1, 0, 1}.
int frobenius_schur(const IrrepModel& pi, double rounding = 1e-6);

struct CatalogReport {
  bool complete = false;
  std::size_t order = 0;
  std::size_t sum_of_squared_degrees = 0;
  std::vector<std::string> failures;
};

CatalogReport catalog_complete(std::span<const IrrepModel> irreps, double tol = 1e-9);

// Image of P_H = (1/|H|) sum_{h in H} rho(h), as orthonormal columns chosen by
// pivoted Gram-Schmidt. Throws VerificationError if P_H is not idempotent.
Matrix fixed_subspace(const Representation& rho, const Subgroup& h, const Tolerances& tol = {});
Matrix fixed_subspace(const IrrepModel& pi, const Subgroup& h, const Tolerances& tol = {});
Matrix averaging_projector(const Representation& rho, const Subgroup& h);

// e = (deg/|G|) sum_g conj(chi(g)) rho(g), checked idempotent and central in
// rho within tol. Throws VerificationError.
Matrix isotypic_projector(const Representation& rho, const Character& chi, double tol = 1e-9);

// Direct sum of representations, block diagonal in argument order.
Representation direct_sum(std::span<const Representation> parts);

// Restriction of rho to the invariant subspace spanned by orthonormal `basis`.
Representation restrict_to(const Representation& rho, const Matrix& basis);

// All irreps of one group, as listed in a catalog manifest.
struct IrrepCatalog {
  GroupPtr group;
  std::vector<IrrepModel> irreps;

  const IrrepModel* find(const std::string& label) const;
};

}  // namespace vsharp
