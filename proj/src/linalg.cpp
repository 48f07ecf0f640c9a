#include "foliant/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace foliant {

namespace {

void require_same_dim(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("vector dimensions differ: " +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

void require_square(const Matrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(op) + " requires a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace

Vector Vector::unit(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw DimensionError("unit vector axis out of range");
  Vector v(dim);
  v[axis] = 1.0;
  return v;
}

bool Vector::finite() const {
  for (double x : e_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(double s, const Vector& v) {
  Vector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return out;
}

Vector operator-(const Vector& v) { return -1.0 * v; }

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

double norm_max(const Vector& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

Vector normalized(const Vector& v) {
  double n = norm(v);
  if (n <= 0.0 || !std::isfinite(n)) {
    throw DomainError("cannot normalize a zero or non-finite vector");
  }
  return (1.0 / n) * v;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols) {
  if (cols.empty()) throw DimensionError("from_columns: no columns");
  std::size_t rows = cols[0].dim();
  for (const Vector& c : cols) {
    if (c.dim() != rows) {
      throw DimensionError("from_columns: inconsistent column lengths");
    }
  }
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Vector Matrix::row(std::size_t i) const {
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

Vector Matrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool Matrix::finite() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!std::isfinite((*this)(i, j))) return false;
    }
  }
  return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix sum: shape mismatch");
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix difference: shape mismatch");
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix operator*(double s, const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
  }
  return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
  if (m.cols() != v.dim()) {
    throw DimensionError("matrix-vector product: shape mismatch");
  }
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Vector flatten(const Matrix& m) {
  Vector v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  }
  return v;
}

double mat_det(const Matrix& m) {
  require_square(m, "determinant");
  std::size_t n = m.rows();
  if (n == 0) return 1.0;
  Matrix a = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (a(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

Matrix mat_inverse(const Matrix& m) {
  require_square(m, "inverse");
  std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  // Pivot threshold scaled by the input magnitude.
  double threshold = 1e-13 * std::max(1.0, norm_max(m));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (std::abs(a(piv, k)) <= threshold) {
      throw SingularMatrixError("matrix is singular to working precision");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(k, j));
        std::swap(inv(piv, j), inv(k, j));
      }
    }
    double d = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

namespace {

// Rayleigh-quotient power iteration for the top eigenvalue of the PSD
// matrix G from a given start vector.
double power_iterate(const Matrix& g, Vector v) {
  double n0 = norm(v);
  if (n0 == 0.0) return 0.0;
  v = (1.0 / n0) * v;
  double lam = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w = g * v;
    double lam_new = dot(v, w);
    double wn = norm(w);
    if (wn == 0.0) return 0.0;
    v = (1.0 / wn) * w;
    if (std::abs(lam_new - lam) <= 1e-12 * std::max(1.0, std::abs(lam_new))) {
      return lam_new;
    }
    lam = lam_new;
  }
  return lam;
}

}  // namespace

double op_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Matrix g = m.transposed() * m;
  std::size_t n = g.rows();
  Vector ones(n);
  Vector ramp(n);
  for (std::size_t i = 0; i < n; ++i) {
    ones[i] = 1.0;
    ramp[i] = double(i + 1);
  }
  double lam = std::max(power_iterate(g, ones), power_iterate(g, ramp));
  return std::sqrt(std::max(0.0, lam));
}

double norm_max(const Matrix& m) {
  double mx = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mx = std::max(mx, std::abs(m(i, j)));
    }
  }
  return mx;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n <= 0) throw DomainError("linspace: need at least one sample");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = a + (b - a) * double(i) / double(n - 1);
  }
  return out;
}

}  // namespace foliant
