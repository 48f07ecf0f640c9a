#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "foliant/errors.hpp"

// Small dense vectors and matrices (dimensions up to ~12). Values are
// immutable in spirit: every operation returns a fresh value and nothing
// here holds internal mutable state, so instances are safe to share
// between threads.

namespace foliant {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : e_(dim, 0.0) {}
  Vector(std::initializer_list<double> init) : e_(init) {}
  explicit Vector(std::vector<double> entries) : e_(std::move(entries)) {}

  static Vector unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const { return e_.size(); }
  double operator[](std::size_t i) const { return e_[i]; }
  double& operator[](std::size_t i) { return e_[i]; }
  const std::vector<double>& entries() const { return e_; }

  bool finite() const;

 private:
  std::vector<double> e_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
Vector operator-(const Vector& v);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);      // euclidean
double norm_max(const Vector& v);  // max-norm, kept for cross-checks
Vector normalized(const Vector& v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const {
    return e_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

  Matrix transposed() const;
  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  bool finite() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> e_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& m);
Vector operator*(const Matrix& m, const Vector& v);

// Row-major flattening; the 2-norm of the result is the Frobenius norm.
Vector flatten(const Matrix& m);

double mat_det(const Matrix& m);
Matrix mat_inverse(const Matrix& m);

// Spectral norm via power iteration on MᵀM: two fixed deterministic start
// vectors, at most 500 iterations each, 1e-12 relative tolerance.
double op_norm(const Matrix& m);

double norm_max(const Matrix& m);  // max |entry|

std::vector<double> linspace(double a, double b, int n);

}  // namespace foliant
