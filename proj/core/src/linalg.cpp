#include "vsharp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vsharp {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return max_abs(a - b);
}

std::vector<double> singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

std::size_t numeric_rank(const Matrix& m, double rel) {
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  // Floor the scale at 1 so rounding noise in a zero matrix is not counted.
  const double cut = rel * std::max(s.front(), 1.0);
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [cut](double x) { return x > cut; }));
}

double conditioning_ratio(const Matrix& m) {
  const auto s = singular_values(m);
  if (s.empty()) return 1.0;
  if (s.front() == 0.0) return 0.0;
  // A non-square matrix is rank deficient in the short direction.
  if (m.rows() != m.cols()) return 0.0;
  return s.back() / s.front();
}

Matrix nullspace(const Matrix& m, double rel) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = rel * std::max(s(0), 1.0);
    while (rank < s.size() && s(rank) > cut) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

Matrix pivoted_orthonormal_basis(const Matrix& m, std::size_t rank) {
  Matrix work = m;
  Matrix basis(m.rows(), static_cast<Eigen::Index>(rank));
  std::vector<bool> used(static_cast<std::size_t>(m.cols()), false);
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(rank); ++k) {
    Eigen::Index pivot = -1;
    double best = -1.0;
    for (Eigen::Index c = 0; c < work.cols(); ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      const double norm = work.col(c).norm();
      if (norm > best * (1.0 + 1e-12) + 1e-300) {
        best = norm;
        pivot = c;
      }
    }
    if (pivot < 0 || best == 0.0) {
      basis.conservativeResize(Eigen::NoChange, k);
      return basis;
    }
    used[static_cast<std::size_t>(pivot)] = true;
    Vector q = work.col(pivot) / best;
    // Second pass keeps the basis orthonormal to working precision.
    for (Eigen::Index j = 0; j < k; ++j) q -= basis.col(j) * basis.col(j).dot(q);
    q.normalize();
    basis.col(k) = q;
    for (Eigen::Index c = 0; c < work.cols(); ++c) {
      if (!used[static_cast<std::size_t>(c)]) work.col(c) -= q * q.dot(work.col(c));
    }
  }
  return basis;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix block_diagonal(std::span<const Matrix> blocks) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

namespace {
constexpr std::uint64_t kModulus = 2147483647ULL;
constexpr std::uint64_t kMultiplier = 48271ULL;
}  // namespace

Lcg::Lcg(std::uint32_t seed) : state_(seed % kModulus == 0 ? 1U : static_cast<std::uint32_t>(seed % kModulus)) {}

std::uint32_t Lcg::next() {
  state_ = static_cast<std::uint32_t>((kMultiplier * state_) % kModulus);
  return state_;
}

double Lcg::symmetric_unit() {
  // state in [1, m-1]
  const double u = static_cast<double>(next() - 1) / static_cast<double>(kModulus - 2);
  return 2.0 * u - 1.0;
}

Complex Lcg::complex_unit() {
  const double re = symmetric_unit();
  const double im = symmetric_unit();
  return {re, im};
}

std::vector<Vector> seeded_vectors(Eigen::Index dim, std::size_t count, std::uint32_t seed) {
  Lcg rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.complex_unit();
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> probe_vectors(Eigen::Index dim, std::size_t count, std::uint32_t seed) {
  std::vector<Vector> out;
  if (dim == 0) return out;
  for (Eigen::Index i = 0; i < dim; ++i) out.push_back(Vector::Unit(dim, i));
  auto rest = seeded_vectors(dim, count, seed);
  out.insert(out.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
  return out;
}

}  // namespace vsharp
