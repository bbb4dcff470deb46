#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cqdist {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;

/// Dense square complex matrix, row-major. Sized for the small operators
/// (density matrices, Hamiltonians, deviation operators) used here.
class ComplexMatrix {
 public:
  /// Zero matrix of dimension n (n >= 1).
  explicit ComplexMatrix(std::size_t n);

  /// Takes ownership of n*n row-major entries. Throws DimensionError on a
  /// size mismatch and std::invalid_argument on a non-finite entry.
  ComplexMatrix(std::size_t n, std::vector<Complex> entries);

  /// Nested-row literal, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

class ComplexVector {
 public:
  explicit ComplexVector(std::size_t n);
  explicit ComplexVector(std::vector<Complex> entries);
  ComplexVector(std::initializer_list<Complex> entries);

  std::size_t dim() const noexcept { return data_.size(); }

  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexVector& operator+=(const ComplexVector& rhs);
  ComplexVector& operator-=(const ComplexVector& rhs);
  ComplexVector& operator*=(Complex s);

  bool operator==(const ComplexVector&) const = default;

 private:
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator*(Complex s, ComplexVector v);

ComplexMatrix adjoint(const ComplexMatrix& m);

/// Matrix product. Throws DimensionError if dims differ.
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);

Complex trace(const ComplexMatrix& m);

/// h*r - r*h
ComplexMatrix commutator(const ComplexMatrix& h, const ComplexMatrix& r);

/// Conjugate-linear in the first argument.
Complex inner(const ComplexVector& u, const ComplexVector& v);

/// u v^dagger
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);

double max_abs_entry(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_antihermitian_traceless(const ComplexMatrix& m, double tol = kHermitianTol);

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex
/// Jacobi rotations. Only the Hermitian part of the input is used.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// sqrt(Tr(M^dagger M) / 2). Equals the operator norm only for 2x2
/// anti-Hermitian traceless input, where both singular values coincide.
double half_trace_norm(const ComplexMatrix& m);

/// Largest singular value, as sqrt of the top eigenvalue of M^dagger M.
double max_singular_value(const ComplexMatrix& m);

/// Operator norm (largest singular value). For 2x2 anti-Hermitian traceless
/// input uses half_trace_norm; debug builds assert it agrees with
/// max_singular_value to 1e-10 relative.
double operator_norm(const ComplexMatrix& m);

double vector_norm(const ComplexVector& v);

}  // namespace cqdist
