#include "pframe/dense.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pframe/errors.hpp"

namespace pframe {

Vec3 multiply(const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

Mat3 transpose(const Mat3& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
  return r;
}

Vec3 solve3(const Mat3& m, const Vec3& b) {
  // Gaussian elimination with partial pivoting on a local copy.
  double a[3][4];
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      a[i][j] = m[i][j];
      scale = std::max(scale, std::abs(m[i][j]));
    }
    a[i][3] = b[i];
  }
  if (scale == 0.0) throw SingularMatrixError("3x3 solve: zero matrix");

  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= 1e-14 * scale)
      throw SingularMatrixError("3x3 solve: singular matrix");
    if (piv != col)
      for (int j = col; j < 4; ++j) std::swap(a[piv][j], a[col][j]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
    }
  }
  Vec3 x{};
  for (int i = 2; i >= 0; --i) {
    double s = a[i][3];
    for (int j = i + 1; j < 3; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

Mat3 inverse3(const Mat3& m) {
  Mat3 inv{};
  for (int col = 0; col < 3; ++col) {
    Vec3 e{};
    e[col] = 1.0;
    const Vec3 x = solve3(m, e);
    for (int row = 0; row < 3; ++row) inv[row][col] = x[row];
  }
  return inv;
}

double max_abs(const DenseMatrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

double max_asymmetry(const DenseMatrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      v = std::max(v, std::abs(m(i, j) - m(j, i)));
  return v;
}

namespace {

// Returns the pivots of the LDL^T factorization; L overwrites the strict
// lower triangle of `a`.
std::vector<double> ldlt_factor(DenseMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> d(n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
  if (scale == 0.0) scale = max_abs(a);
  for (std::size_t j = 0; j < n; ++j) {
    double dj = a(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= a(j, k) * a(j, k) * d[k];
    if (std::abs(dj) <= 1e-14 * scale || !std::isfinite(dj))
      throw SingularMatrixError("LDL^T: zero pivot at equation " + std::to_string(j));
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k) * d[k];
      a(i, j) = s / dj;
    }
  }
  return d;
}

}  // namespace

std::vector<double> ldlt_solve(const DenseMatrix& a, const std::vector<double>& b) {
  const std::size_t n = a.rows();
  if (n == 0) return {};
  DenseMatrix f = a;
  const std::vector<double> d = ldlt_factor(f);
  std::vector<double> x = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) x[i] -= f(i, k) * x[k];
  for (std::size_t i = 0; i < n; ++i) x[i] /= d[i];
  for (std::size_t ii = n; ii-- > 0;)
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= f(k, ii) * x[k];
  return x;
}

bool is_positive_definite(const DenseMatrix& a) {
  if (a.rows() == 0) return true;
  DenseMatrix f = a;
  try {
    const std::vector<double> d = ldlt_factor(f);
    return std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; });
  } catch (const SingularMatrixError&) {
    return false;
  }
}

std::vector<double> symmetric_eigenvalues(DenseMatrix a) {
  const std::size_t n = a.rows();
  if (n == 0) return {};
  const double threshold = 1e-12 * std::max(max_abs(a), 1e-300);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s = std::max(s, std::abs(a(i, j)));
    return s;
  };

  for (int sweep = 0; sweep < 100 && off_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= threshold) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_eigenvalue(const DenseMatrix& a) {
  const std::vector<double> ev = symmetric_eigenvalues(a);
  if (ev.empty()) throw DomainError("min_eigenvalue: empty matrix");
  return ev.front();
}

}  // namespace pframe
