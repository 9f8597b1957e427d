#include "vsharp/symplectic.hpp"

#include <cmath>

#include "vsharp/error.hpp"

namespace vsharp {

namespace {

// Largest entry of a form, for scale-aware thresholds.
double entry_scale(const Matrix& m) { return std::max(max_abs(m), 1e-300); }

}  // namespace

BilinearSpace invariant_bilinear_space(const IrrepModel& pi, const Tolerances& tol) {
  const auto d = static_cast<Eigen::Index>(pi.degree());
  const auto& gens = pi.group().generators();
  const Matrix id = Matrix::Identity(d * d, d * d);
  // vec(P^T S P) = (P^T kron P^T) vec(S)
  Matrix constraints(static_cast<Eigen::Index>(gens.size()) * d * d, d * d);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Matrix pt = pi.matrix(gens[k]).transpose();
    constraints.middleRows(static_cast<Eigen::Index>(k) * d * d, d * d) = kron(pt, pt) - id;
  }
  const Matrix kernel = nullspace(constraints, tol.rank_relative);

  BilinearSpace space;
  space.dimension = static_cast<std::size_t>(kernel.cols());
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Matrix s = unvectorize(kernel.col(c), d, d);
    for (ElementIndex g = 0; g < pi.group().order(); ++g) {
      const auto& m = pi.matrix(g);
      if (max_abs_diff(m.transpose() * s * m, s) >= tol.tau) {
        throw VerificationError("invariant form of '" + pi.label() + "' fails on element " + pi.group().element_name(g));
      }
    }
    space.basis.push_back(std::move(s));
  }

  const int fs = frobenius_schur(pi, tol.indicator_rounding);
  const std::size_t expected = fs == 0 ? 0 : 1;
  if (space.dimension != expected) {
    throw VerificationError("'" + pi.label() + "' has " + std::to_string(space.dimension) +
                            " invariant bilinear forms, expected " + std::to_string(expected));
  }
  return space;
}

Matrix make_symplectic_form(const IrrepModel& pi, const Tolerances& tol) {
  const int fs = frobenius_schur(pi, tol.indicator_rounding);
  if (fs != -1) {
    throw VerificationError("'" + pi.label() + "' is not symplectic (Frobenius-Schur indicator " + std::to_string(fs) + ")");
  }
  const auto space = invariant_bilinear_space(pi, tol);
  Matrix s = space.basis.front();
  s = (s - s.transpose()) / 2.0;
  const double scale = entry_scale(s);
  const auto d = s.rows();
  Complex lead = 0.0;
  for (Eigen::Index i = 0; i < d && lead == 0.0; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(s(i, j)) > tol.rank_relative * scale) {
        lead = s(i, j);
        break;
      }
    }
  }
  if (lead == 0.0) throw VerificationError("invariant form of '" + pi.label() + "' vanishes after antisymmetrization");
  s /= lead;
  // Entries that are zero up to rounding become exact zeros.
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (std::abs(s(i, j)) < tol.tau * 1e-3) s(i, j) = 0.0;
  if (conditioning_ratio(s) <= tol.nondegeneracy) {
    throw VerificationError("invariant alternating form of '" + pi.label() + "' is degenerate");
  }
  return s;
}

Matrix invariant_scalar_product(const IrrepModel& pi, const Matrix& seed) {
  const auto d = static_cast<Eigen::Index>(pi.degree());
  Matrix h = Matrix::Zero(d, d);
  for (const auto& m : pi.matrices()) h += m.transpose() * seed * m.conjugate();
  h /= static_cast<double>(pi.group().order());
  // Exact hermitian symmetrization of the average.
  return (h + h.adjoint()) / 2.0;
}

Matrix perturbed_scalar_product(Eigen::Index dim, std::uint32_t seed) {
  Lcg rng(seed);
  Matrix b(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) b(i, j) = rng.complex_unit();
  return Matrix::Identity(dim, dim) + 0.5 * b * b.adjoint();
}

Matrix star_from_form(const IrrepModel& pi, const Matrix& form, const Tolerances& tol, const std::optional<Matrix>& initial) {
  const auto d = static_cast<Eigen::Index>(pi.degree());
  if (form.rows() != d || form.cols() != d) throw VerificationError("form has wrong shape for '" + pi.label() + "'");
  const Matrix seed = initial.value_or(Matrix::Identity(d, d));
  const Matrix h = invariant_scalar_product(pi, seed);

  Eigen::FullPivLU<Matrix> lu(form);
  if (!lu.isInvertible()) throw VerificationError("form of '" + pi.label() + "' is singular");
  Matrix a = lu.solve(h);

  // *^2 w = A conj(A conj(w)) = A conj(A) w
  const Matrix square = a * a.conjugate();
  const Complex lambda = square.trace() / static_cast<double>(d);
  const double scale = std::max(std::abs(lambda), 1e-300);
  if (max_abs(square - lambda * Matrix::Identity(d, d)) / scale >= tol.tau) {
    throw VerificationError("*^2 is not a scalar for '" + pi.label() + "'");
  }
  if (std::abs(lambda.imag()) / scale >= tol.tau || !(lambda.real() < 0.0)) {
    throw VerificationError("*^2 is not a negative real scalar for '" + pi.label() + "'");
  }
  a /= std::sqrt(std::abs(lambda));

  const auto axioms = check_sharp_axioms(form, a);
  if (!(axioms.positivity > 0.0)) throw VerificationError("star operator for '" + pi.label() + "' is not positive");
  return a;
}

std::string SymplecticResiduals::violation(const Tolerances& tol) const {
  if (!even_degree) return "symplectic degree is even";
  if (!(invariance < tol.tau)) return "cup is G-invariant";
  if (!(equivariance < tol.tau)) return "* is G-equivariant";
  return axioms.violation(tol);
}

SymplecticResiduals check_symplectic(const SymplecticIrrep& s) {
  SymplecticResiduals r;
  r.axioms = check_sharp_axioms(s.form, s.star);
  r.even_degree = s.degree() % 2 == 0;
  for (const auto& m : s.base.matrices()) {
    r.invariance = std::max(r.invariance, max_abs_diff(m.transpose() * s.form * m, s.form));
    r.equivariance = std::max(r.equivariance, max_abs_diff(m * s.star, s.star * m.conjugate()));
  }
  return r;
}

SymplecticIrrep make_symplectic_irrep(const IrrepModel& pi, const Tolerances& tol) {
  Matrix form = make_symplectic_form(pi, tol);
  Matrix star = star_from_form(pi, form, tol);
  SymplecticIrrep s{pi, std::move(form), std::move(star)};
  const auto residuals = check_symplectic(s);
  if (const auto v = residuals.violation(tol); !v.empty()) {
    throw VerificationError("symplectic irrep '" + pi.label() + "' violates: " + v);
  }
  return s;
}

}  // namespace vsharp
