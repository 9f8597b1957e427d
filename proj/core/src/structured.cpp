#include "vsharp/structured.hpp"

#include <algorithm>
#include <limits>

namespace vsharp {

Complex cup(const Matrix& form, const Vector& v, const Vector& w) { return (v.transpose() * form * w)(0, 0); }

Vector apply_star(const Matrix& star, const Vector& w) { return star * w.conjugate(); }

Complex scalar_product(const Matrix& form, const Matrix& star, const Vector& v, const Vector& w) {
  return cup(form, v, apply_star(star, w));
}

std::string SharpAxioms::violation(const Tolerances& tol) const {
  if (!(alternating < tol.tau)) return "cup is alternating";
  if (!(nondegeneracy > tol.nondegeneracy)) return "cup is non-degenerate";
  if (!(star_square < tol.tau)) return "*^2 = -1";
  if (!(hermitian < tol.tau)) return "conj(v cup w) = *v cup *w";
  if (!(positivity > 0.0) || !(positivity_imag < tol.tau)) return "v cup *v > 0";
  return {};
}

SharpAxioms check_sharp_axioms(const Matrix& form, const Matrix& star, std::size_t seeded_probes) {
  SharpAxioms ax;
  const auto dim = form.rows();
  if (dim == 0) {
    ax.positivity = std::numeric_limits<double>::infinity();
    return ax;
  }
  ax.alternating = max_abs(form + form.transpose());
  ax.nondegeneracy = conditioning_ratio(form);
  ax.star_square = max_abs(star * star.conjugate() + Matrix::Identity(dim, dim));

  const auto probes = probe_vectors(dim, seeded_probes);
  ax.positivity = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const auto& v = probes[k];
    const Complex self = scalar_product(form, star, v, v);
    const double n2 = v.squaredNorm();
    ax.positivity = std::min(ax.positivity, self.real() / n2);
    ax.positivity_imag = std::max(ax.positivity_imag, std::abs(self.imag()) / n2);
    const auto& w = probes[(k + 1) % probes.size()];
    const Complex lhs = std::conj(cup(form, v, w));
    const Complex rhs = cup(form, apply_star(star, v), apply_star(star, w));
    ax.hermitian = std::max(ax.hermitian, std::abs(lhs - rhs));
  }
  return ax;
}

}  // namespace vsharp
