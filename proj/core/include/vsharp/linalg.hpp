#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vsharp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A representation stored as one matrix per group element, indexed like the
// group's elements.
using Representation = std::vector<Matrix>;

// Numerical thresholds used across the library. `tau` bounds entrywise
// residuals of exact identities; rank decisions compare singular values to
// `rank_relative` times the largest one (floored at 1).
struct Tolerances {
  double tau = 1e-9;
  double rank_relative = 1e-8;
  double indicator_rounding = 1e-6;
  double nondegeneracy = 1e-6;
};

double max_abs(const Matrix& m);

// max |a - b| entrywise; mismatched shapes yield +infinity.
double max_abs_diff(const Matrix& a, const Matrix& b);

std::vector<double> singular_values(const Matrix& m);

// Number of singular values above rel * max(largest singular value, 1).
std::size_t numeric_rank(const Matrix& m, double rel);

// smallest / largest singular value; 1 for an empty matrix, 0 if m == 0.
double conditioning_ratio(const Matrix& m);

// Orthonormal basis (columns) of the kernel of m.
Matrix nullspace(const Matrix& m, double rel);

// Orthonormal basis of the column space of m, built by Gram-Schmidt that
// always takes the remaining column of largest norm (lowest index on ties).
// Exactly `rank` columns are produced.
Matrix pivoted_orthonormal_basis(const Matrix& m, std::size_t rank);

Matrix kron(const Matrix& a, const Matrix& b);

// Column-major vec / unvec.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Eigen::Index rows, Eigen::Index cols);

Matrix block_diagonal(std::span<const Matrix> blocks);

// Park-Miller minimal standard LCG (x <- 48271 x mod 2^31-1), the generator
// behind every seeded test vector in the library.
class Lcg {
 public:
  explicit Lcg(std::uint32_t seed = 42);
  std::uint32_t next();
  // Uniform in [-1, 1].
  double symmetric_unit();
  Complex complex_unit();

 private:
  std::uint32_t state_;
};

// `count` pseudo-random complex vectors of length `dim` from Lcg(seed).
std::vector<Vector> seeded_vectors(Eigen::Index dim, std::size_t count, std::uint32_t seed = 42);

// The standard basis of C^dim followed by `count` seeded vectors.
std::vector<Vector> probe_vectors(Eigen::Index dim, std::size_t count = 100, std::uint32_t seed = 42);

}  // namespace vsharp
