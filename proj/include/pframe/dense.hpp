#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace pframe {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat6 = std::array<std::array<double, 6>, 6>;

Vec3 multiply(const Mat3& m, const Vec3& v);
Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& m);

/// Solves the 3x3 system m*x = b with partial pivoting.
Vec3 solve3(const Mat3& m, const Vec3& b);

/// Inverse via column-wise solves; throws SingularMatrixError.
Mat3 inverse3(const Mat3& m);

/// Row-major dense matrix used for the assembled tangent stiffness.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Largest absolute entry.
double max_abs(const DenseMatrix& m);

/// max |A - A^T| over off-diagonal pairs.
double max_asymmetry(const DenseMatrix& m);

/// Solves A x = b for symmetric A by root-free LDL^T factorization.
/// Only the lower triangle of A is referenced. Works for indefinite
/// matrices as long as no pivot vanishes; throws SingularMatrixError
/// on a (nearly) zero pivot.
std::vector<double> ldlt_solve(const DenseMatrix& a, const std::vector<double>& b);

/// True if all LDL^T pivots are positive (symmetric positive definite).
bool is_positive_definite(const DenseMatrix& a);

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Off-diagonal sweep threshold 1e-12 * max|A|.
std::vector<double> symmetric_eigenvalues(DenseMatrix a);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const DenseMatrix& a);

}  // namespace pframe
