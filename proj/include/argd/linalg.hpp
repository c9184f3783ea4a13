// Dense linear algebra for the manifold layer: vectors, matrices, symmetric
// matrices, a cyclic Jacobi eigensolver, Lyapunov solves and SPD square roots.
//
// Everything is dense and value-semantic. Dimensions are small (n <= ~200).

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace argd {

/// Thrown when an iterative numerical routine exhausts its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0) : data_(n, fill) {}
  Vector(std::initializer_list<double> values) : data_(values) {}
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

  static Vector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return data_.size(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs);
  Vector& operator*=(double s);

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator-(Vector v);
Vector operator*(Vector v, double s);
Vector operator*(double s, Vector v);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> values() const { return data_; }

  Matrix transpose() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix m, double s);
Matrix operator*(double s, Matrix m);

/// Symmetric n x n matrix. Construction from a general matrix checks
/// |M_ij - M_ji| <= 1e-12 * max(1, |M_ij|) and then stores (M + M^T)/2, so the
/// stored entries are exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : m_(n, n) {}
  explicit SymMatrix(Matrix m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  /// (M + M^T)/2 without any symmetry check.
  static SymMatrix symmetrize(const Matrix& m);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(const Vector& d);

  std::size_t size() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }
  operator const Matrix&() const { return m_; }

  SymMatrix& operator+=(const SymMatrix& rhs);
  SymMatrix& operator-=(const SymMatrix& rhs);
  SymMatrix& operator*=(double s);

  bool operator==(const SymMatrix&) const = default;

 private:
  Matrix m_;
};

SymMatrix operator+(SymMatrix lhs, const SymMatrix& rhs);
SymMatrix operator-(SymMatrix lhs, const SymMatrix& rhs);
SymMatrix operator*(SymMatrix m, double s);
SymMatrix operator*(double s, SymMatrix m);

/// Product of two matrices. Symmetric inputs are not symmetrized on output.
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
double frobenius_norm(const Matrix& m);
double trace(const Matrix& m);
/// Tr(A B) in O(n^2) for square A, B.
double trace_of_product(const Matrix& a, const Matrix& b);
/// M + s N.
SymMatrix add_scaled(const SymMatrix& m, const SymMatrix& n, double s);
Matrix add_scaled(const Matrix& m, const Matrix& n, double s);
Matrix hadamard(const Matrix& a, const Matrix& b);

struct EigenDecomposition {
  Vector eigenvalues;  // ascending
  Matrix basis;        // column i pairs with eigenvalues[i]
};

inline constexpr double kJacobiRelativeTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi eigensolver. Stops when the off-diagonal Frobenius mass is
/// <= 1e-14 * ||M||_F; throws ConvergenceError after 100 sweeps.
EigenDecomposition sym_eig(const SymMatrix& m);

/// Q diag(f(lambda)) Q^T.
SymMatrix reconstruct(const EigenDecomposition& eig, std::span<const double> values);
SymMatrix reconstruct(const EigenDecomposition& eig);

/// min eigenvalue > 1e-12 * max(1, max eigenvalue)
bool is_spd(const EigenDecomposition& eig);
bool is_spd(const SymMatrix& m);

/// Solves X L + L X = U for symmetric L; X must be SPD (std::domain_error
/// otherwise).
SymMatrix solve_lyapunov(const SymMatrix& x, const SymMatrix& u);
SymMatrix solve_lyapunov(const EigenDecomposition& x_eig, const SymMatrix& u);

/// Principal square root of an SPD matrix.
SymMatrix spd_sqrt(const SymMatrix& x);

}  // namespace argd
