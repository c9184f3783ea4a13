#include "argd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace argd {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

void require_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector Vector::unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = 1.0;
  return e;
}

Vector& Vector::operator+=(const Vector& rhs) {
  require_same_size(*this, rhs, "Vector +=");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += rhs[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
  require_same_size(*this, rhs, "Vector -=");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= rhs[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator-(Vector v) { return v *= -1.0; }
Vector operator*(Vector v, double s) { return v *= s; }
Vector operator*(double s, Vector v) { return v *= s; }

double dot(const Vector& a, const Vector& b) {
  require_same_size(a, b, "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "Matrix +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "Matrix -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix m, double s) { return m *= s; }
Matrix operator*(double s, Matrix m) { return m *= s; }

// ------------------------------------------------------------- SymMatrix

SymMatrix::SymMatrix(Matrix m) {
  if (!m.square()) throw std::invalid_argument("SymMatrix: matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double scale = std::max(1.0, std::abs(m(i, j)));
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument("SymMatrix: matrix is not symmetric");
      }
    }
  }
  *this = symmetrize(m);
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(Matrix(rows)) {}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("symmetrize: matrix is not square");
  SymMatrix s;
  s.m_ = Matrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s.m_(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      s.m_(i, j) = v;
      s.m_(j, i) = v;
    }
  }
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n) { return symmetrize(Matrix::identity(n)); }

SymMatrix SymMatrix::diagonal(const Vector& d) { return symmetrize(Matrix::diagonal(d)); }

SymMatrix& SymMatrix::operator+=(const SymMatrix& rhs) {
  m_ += rhs.m_;
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& rhs) {
  m_ -= rhs.m_;
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

SymMatrix operator+(SymMatrix lhs, const SymMatrix& rhs) { return lhs += rhs; }
SymMatrix operator-(SymMatrix lhs, const SymMatrix& rhs) { return lhs -= rhs; }
SymMatrix operator*(SymMatrix m, double s) { return m *= s; }
SymMatrix operator*(double s, SymMatrix m) { return m *= s; }

// ------------------------------------------------------------ operations

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * x[j];
    y[i] = sum;
  }
  return y;
}

double frobenius_norm(const Matrix& m) {
  double sum = 0.0;
  for (double v : m.values()) sum += v * v;
  return std::sqrt(sum);
}

double trace(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("trace: matrix is not square");
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, i);
  return sum;
}

double trace_of_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw std::invalid_argument("trace_of_product: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * b(j, i);
  }
  return sum;
}

SymMatrix add_scaled(const SymMatrix& m, const SymMatrix& n, double s) { return m + n * s; }

Matrix add_scaled(const Matrix& m, const Matrix& n, double s) { return m + n * s; }

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hadamard");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
  }
  return c;
}

// ----------------------------------------------------------- eigensolver

EigenDecomposition sym_eig(const SymMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("sym_eig: empty matrix");

  Matrix a = m.matrix();
  Matrix v = Matrix::identity(n);
  const double threshold = kJacobiRelativeTolerance * frobenius_norm(a);

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;

        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("sym_eig: Jacobi iteration did not converge in " +
                           std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition result{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) result.basis(r, k) = v(r, order[k]);
  }
  return result;
}

SymMatrix reconstruct(const EigenDecomposition& eig, std::span<const double> values) {
  const std::size_t n = eig.basis.rows();
  if (values.size() != n) throw std::invalid_argument("reconstruct: dimension mismatch");
  const Matrix& q = eig.basis;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += q(i, k) * values[k] * q(j, k);
      out(i, j) = sum;
      out(j, i) = sum;
    }
  }
  return SymMatrix::symmetrize(out);
}

SymMatrix reconstruct(const EigenDecomposition& eig) {
  return reconstruct(eig, eig.eigenvalues.values());
}

bool is_spd(const EigenDecomposition& eig) {
  const auto& lambda = eig.eigenvalues;
  const double lo = lambda[0];
  const double hi = lambda[lambda.size() - 1];
  return lo > 1e-12 * std::max(1.0, hi);
}

bool is_spd(const SymMatrix& m) { return is_spd(sym_eig(m)); }

SymMatrix solve_lyapunov(const EigenDecomposition& x_eig, const SymMatrix& u) {
  const std::size_t n = x_eig.basis.rows();
  if (u.size() != n) throw std::invalid_argument("solve_lyapunov: dimension mismatch");
  if (!is_spd(x_eig)) throw std::domain_error("solve_lyapunov: X is not positive definite");

  const Matrix& q = x_eig.basis;
  Matrix rotated = matmul(matmul(q.transpose(), u.matrix()), q);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rotated(i, j) /= x_eig.eigenvalues[i] + x_eig.eigenvalues[j];
    }
  }
  return SymMatrix::symmetrize(matmul(matmul(q, rotated), q.transpose()));
}

SymMatrix solve_lyapunov(const SymMatrix& x, const SymMatrix& u) {
  if (u.size() != x.size()) throw std::invalid_argument("solve_lyapunov: dimension mismatch");
  return solve_lyapunov(sym_eig(x), u);
}

SymMatrix spd_sqrt(const SymMatrix& x) {
  const EigenDecomposition eig = sym_eig(x);
  if (!is_spd(eig)) throw std::domain_error("spd_sqrt: X is not positive definite");
  std::vector<double> roots(x.size());
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = std::sqrt(eig.eigenvalues[i]);
  return reconstruct(eig, roots);
}

}  // namespace argd
