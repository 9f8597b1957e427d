#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vsharp/linalg.hpp"
#include "vsharp/repr.hpp"
#include "vsharp/structured.hpp"

namespace vsharp {

struct BilinearSpace {
  std::size_t dimension = 0;
  std::vector<Matrix> basis;  // each S with pi(g)^T S pi(g) = S
};

// Solves pi(g)^T S pi(g) = S over the group's generators by nullspace, then
// verifies the solutions on every element. Throws VerificationError when the
// dimension disagrees with the Frobenius-Schur class (0 for complex, 1
// otherwise).
BilinearSpace invariant_bilinear_space(const IrrepModel& pi, const Tolerances& tol = {});

// The invariant alternating form, normalized so its first nonzero entry in
// row-major order is 1. Throws VerificationError unless FS(pi) = -1 and the
// result is non-degenerate.
Matrix make_symplectic_form(const IrrepModel& pi, const Tolerances& tol = {});

// (1/|G|) sum_g pi(g)^T seed conj(pi(g)): an invariant scalar product
// <v, w> = v^T H conj(w) whenever `seed` is hermitian positive definite.
Matrix invariant_scalar_product(const IrrepModel& pi, const Matrix& seed);

// The unique star operator A (as *w = A conj(w)) with v cup *w a scalar
// product, built from `initial` (default: the standard scalar product)
// averaged over the group: solve S A = H, read *^2 = lambda, rescale by
// |lambda|^{-1/2}. Throws VerificationError if lambda is not a negative real
// scalar or the result is not positive.
Matrix star_from_form(const IrrepModel& pi, const Matrix& form, const Tolerances& tol = {},
                      const std::optional<Matrix>& initial = std::nullopt);

// Seeded hermitian positive-definite perturbation of the identity, used as a
// second starting scalar product in uniqueness checks.
Matrix perturbed_scalar_product(Eigen::Index dim, std::uint32_t seed = 42);

struct SymplecticIrrep {
  IrrepModel base;
  Matrix form;
  Matrix star;

  const std::string& label() const { return base.label(); }
  std::size_t degree() const { return base.degree(); }
};

// Residuals of every SymplecticIrrep invariant.
struct SymplecticResiduals {
  SharpAxioms axioms;
  double invariance = 0.0;   // max |pi(g)^T S pi(g) - S|
  double equivariance = 0.0; // max |pi(g) A - A conj(pi(g))|
  bool even_degree = true;

  std::string violation(const Tolerances& tol) const;
};

SymplecticResiduals check_symplectic(const SymplecticIrrep& s);

// make_symplectic_form + star_from_form, with all invariants verified.
SymplecticIrrep make_symplectic_irrep(const IrrepModel& pi, const Tolerances& tol = {});

}  // namespace vsharp
