#include "vsharp/repr.hpp"

#include <cmath>
#include <set>

#include "vsharp/error.hpp"

namespace vsharp {

double homomorphism_residual(const FiniteGroup& group, const Representation& rho) {
  double worst = 0.0;
  for (ElementIndex g = 0; g < group.order(); ++g) {
    for (ElementIndex h = 0; h < group.order(); ++h) {
      worst = std::max(worst, max_abs_diff(rho[g] * rho[h], rho[group.mul(g, h)]));
    }
  }
  return worst;
}

IrrepModel IrrepModel::create(std::string label, GroupPtr group, Representation matrices, const Tolerances& tol) {
  if (!group) throw InputError("irrep '" + label + "': no group");
  if (matrices.size() != group->order()) {
    throw InputError("irrep '" + label + "': " + std::to_string(matrices.size()) + " matrices for group of order " +
                     std::to_string(group->order()));
  }
  const auto degree = matrices.front().rows();
  if (degree <= 0) throw InputError("irrep '" + label + "': degree must be positive");
  for (const auto& m : matrices) {
    if (m.rows() != degree || m.cols() != degree) throw InputError("irrep '" + label + "': matrix shape mismatch");
    if (!m.allFinite()) throw InputError("irrep '" + label + "': non-finite entry");
  }
  if (max_abs_diff(matrices[FiniteGroup::identity()], Matrix::Identity(degree, degree)) >= tol.tau) {
    throw InputError("irrep '" + label + "': identity element does not act as the identity matrix");
  }
  const double hom = homomorphism_residual(*group, matrices);
  if (hom >= tol.tau) {
    throw InputError("irrep '" + label + "': not a homomorphism (residual " + std::to_string(hom) + ")");
  }
  IrrepModel pi;
  pi.label_ = std::move(label);
  pi.group_ = std::move(group);
  pi.degree_ = static_cast<std::size_t>(degree);
  pi.matrices_ = std::move(matrices);
  Character chi;
  try {
    chi = character(pi, tol.tau);
  } catch (const VerificationError& e) {
    throw InputError("irrep '" + pi.label_ + "': " + e.what());
  }
  if (std::abs(char_inner(chi, chi) - 1.0) >= tol.tau) {
    throw InputError("irrep '" + pi.label_ + "': not irreducible (<chi,chi> != 1)");
  }
  return pi;
}

Character character_of(const GroupPtr& group, const Representation& rho, double tol) {
  Character chi{group, {}};
  for (const auto& cls : group->classes()) {
    const Complex v = rho.at(cls.front()).trace();
    for (auto g : cls) {
      if (std::abs(rho.at(g).trace() - v) >= tol) {
        throw VerificationError("character is not constant on the class of " + group->element_name(cls.front()));
      }
    }
    chi.values.push_back(v);
  }
  return chi;
}

Character character(const IrrepModel& pi, double tol) { return character_of(pi.group_ptr(), pi.matrices(), tol); }

Character trivial_character(const GroupPtr& group) { return Character{group, std::vector<Complex>(group->classes().size(), 1.0)}; }

Complex char_inner(const Character& chi1, const Character& chi2) {
  const auto& classes = chi1.group->classes();
  Complex sum = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    sum += static_cast<double>(classes[c].size()) * chi1.values[c] * std::conj(chi2.values[c]);
  }
  return sum / static_cast<double>(chi1.group->order());
}

Complex frobenius_schur_raw(const IrrepModel& pi) {
  const auto& g = pi.group();
  Complex sum = 0.0;
  for (ElementIndex x = 0; x < g.order(); ++x) sum += pi.matrix(g.mul(x, x)).trace();
  return sum / static_cast<double>(g.order());
}

int frobenius_schur(const IrrepModel& pi, double rounding) {
  const Complex raw = frobenius_schur_raw(pi);
  const double r = std::round(raw.real());
  if (std::abs(raw - Complex(r, 0.0)) >= rounding || r < -1.0 || r > 1.0) {
    throw VerificationError("Frobenius-Schur indicator of '" + pi.label() + "' does not round to -1, 0 or 1");
  }
  return static_cast<int>(r);
}

CatalogReport catalog_complete(std::span<const IrrepModel> irreps, double tol) {
  CatalogReport report;
  if (irreps.empty()) {
    report.failures.push_back("empty catalog");
    return report;
  }
  const auto& group = irreps.front().group_ptr();
  report.order = group->order();
  std::vector<Character> chars;
  std::set<std::string> labels;
  for (const auto& pi : irreps) {
    if (pi.group_ptr() != group && pi.group().table() != group->table()) {
      report.failures.push_back("'" + pi.label() + "' is defined on a different group");
      continue;
    }
    if (!labels.insert(pi.label()).second) report.failures.push_back("duplicate label '" + pi.label() + "'");
    report.sum_of_squared_degrees += pi.degree() * pi.degree();
    chars.push_back(character(pi, tol));
  }
  if (report.sum_of_squared_degrees != report.order) {
    report.failures.push_back("sum of squared degrees " + std::to_string(report.sum_of_squared_degrees) +
                              " != |G| = " + std::to_string(report.order));
  }
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = i; j < chars.size(); ++j) {
      const Complex expected = i == j ? 1.0 : 0.0;
      if (std::abs(char_inner(chars[i], chars[j]) - expected) >= tol) {
        report.failures.push_back("characters " + std::to_string(i) + " and " + std::to_string(j) + " are not orthonormal");
      }
    }
  }
  report.complete = report.failures.empty();
  return report;
}

Matrix averaging_projector(const Representation& rho, const Subgroup& h) {
  if (rho.empty()) return Matrix(0, 0);
  const auto dim = rho.front().rows();
  Matrix p = Matrix::Zero(dim, dim);
  for (auto m : h.members()) p += rho.at(m);
  return p / static_cast<double>(h.size());
}

Matrix fixed_subspace(const Representation& rho, const Subgroup& h, const Tolerances& tol) {
  if (rho.empty() || rho.front().rows() == 0) return Matrix(0, 0);
  const Matrix p = averaging_projector(rho, h);
  if (max_abs_diff(p * p, p) >= tol.tau) throw VerificationError("averaging operator is not idempotent");
  return pivoted_orthonormal_basis(p, numeric_rank(p, tol.rank_relative));
}

Matrix fixed_subspace(const IrrepModel& pi, const Subgroup& h, const Tolerances& tol) {
  return fixed_subspace(pi.matrices(), h, tol);
}

Matrix isotypic_projector(const Representation& rho, const Character& chi, double tol) {
  const auto& group = *chi.group;
  if (rho.empty() || rho.front().rows() == 0) return Matrix(0, 0);
  if (rho.size() != group.order()) throw InputError("representation and character are on different groups");
  const auto dim = rho.front().rows();
  Matrix e = Matrix::Zero(dim, dim);
  for (ElementIndex g = 0; g < group.order(); ++g) e += std::conj(chi.at(g)) * rho[g];
  e *= chi.degree() / static_cast<double>(group.order());
  if (max_abs_diff(e * e, e) >= tol) throw VerificationError("isotypic projector is not idempotent");
  for (ElementIndex g = 0; g < group.order(); ++g) {
    if (max_abs_diff(e * rho[g], rho[g] * e) >= tol) throw VerificationError("isotypic projector is not central");
  }
  return e;
}

Representation direct_sum(std::span<const Representation> parts) {
  if (parts.empty()) return {};
  const std::size_t n = parts.front().size();
  Representation out(n);
  std::vector<Matrix> blocks(parts.size());
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t k = 0; k < parts.size(); ++k) blocks[k] = parts[k].at(g);
    out[g] = block_diagonal(blocks);
  }
  return out;
}

Representation restrict_to(const Representation& rho, const Matrix& basis) {
  Representation out;
  out.reserve(rho.size());
  for (const auto& m : rho) out.push_back(basis.adjoint() * m * basis);
  return out;
}

const IrrepModel* IrrepCatalog::find(const std::string& label) const {
  for (const auto& pi : irreps) {
    if (pi.label() == label) return &pi;
  }
  return nullptr;
}

}  // namespace vsharp
