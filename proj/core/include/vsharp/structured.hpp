#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsharp/linalg.hpp"

namespace vsharp {

// Matrix conventions used throughout:
//   v cup w   = v^T S w                 (bilinear, S alternating)
//   *w        = A conj(w)               (antilinear)
//   <v, w>    = v cup *w = v^T S A conj(w)   (linear in v, antilinear in w)

Complex cup(const Matrix& form, const Vector& v, const Vector& w);
Vector apply_star(const Matrix& star, const Vector& w);
Complex scalar_product(const Matrix& form, const Matrix& star, const Vector& v, const Vector& w);

// Residuals of the axioms of a space with symplectic pairing and star
// operator, evaluated on matrices and on the probe vectors (basis plus 100
// seeded vectors).
struct SharpAxioms {
  double alternating = 0.0;      // max |S + S^T|
  double nondegeneracy = 1.0;    // sigma_min(S) / sigma_max(S)
  double star_square = 0.0;      // max |A conj(A) + I|
  double hermitian = 0.0;        // max |conj(v cup w) - (*v cup *w)|
  double positivity = 0.0;       // min Re(v cup *v) / |v|^2
  double positivity_imag = 0.0;  // max |Im(v cup *v)| / |v|^2

  // Name of the first violated axiom, or empty.
  std::string violation(const Tolerances& tol) const;
  bool holds(const Tolerances& tol) const { return violation(tol).empty(); }
};

SharpAxioms check_sharp_axioms(const Matrix& form, const Matrix& star, std::size_t seeded_probes = 100);

// An object of the category of finite-dimensional spaces with a symplectic
// pairing and a compatible star operator, embedded in an ambient space.
struct StructuredSpace {
  Matrix basis;  // ambient coordinates, orthonormal columns
  Matrix form;
  Matrix star;
  std::vector<std::string> block_labels;  // ambient block labels
  std::vector<std::size_t> block_dims;    // dimension contributed per block

  std::size_t dim() const { return static_cast<std::size_t>(form.rows()); }
};

}  // namespace vsharp
