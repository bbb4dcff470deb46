#include "cqdist/cmatrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "cqdist/error.hpp"

namespace cqdist {

namespace {

void require_finite(std::span<const Complex> entries) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!std::isfinite(entries[k].real()) || !std::isfinite(entries[k].imag())) {
      throw std::invalid_argument(fmt::format("non-finite matrix entry at index {}", k));
    }
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(fmt::format("{}: dimension mismatch ({} vs {})", op, a, b));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), data_(std::move(entries)) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
  if (data_.size() != n * n) {
    throw DimensionError(fmt::format("expected {} entries, got {}", n * n, data_.size()));
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
  if (n_ == 0) throw DimensionError("matrix dimension must be positive");
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.data_);
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(n_, rhs.n_, "matrix add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(n_, rhs.n_, "matrix subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexVector::ComplexVector(std::size_t n) : data_(n) {
  if (n == 0) throw DimensionError("vector dimension must be positive");
}

ComplexVector::ComplexVector(std::vector<Complex> entries) : data_(std::move(entries)) {
  if (data_.empty()) throw DimensionError("vector dimension must be positive");
  require_finite(data_);
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

ComplexVector& ComplexVector::operator+=(const ComplexVector& rhs) {
  require_same_dim(dim(), rhs.dim(), "vector add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& rhs) {
  require_same_dim(dim(), rhs.dim(), "vector subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs) { return lhs += rhs; }
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs) { return lhs -= rhs; }
ComplexVector operator*(Complex s, ComplexVector v) { return v *= s; }

ComplexMatrix adjoint(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix product");
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mul(a, b); }

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  require_same_dim(a.dim(), v.dim(), "matrix-vector product");
  ComplexVector r(v.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

Complex trace(const ComplexMatrix& m) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) s += m(i, i);
  return s;
}

ComplexMatrix commutator(const ComplexMatrix& h, const ComplexMatrix& r) {
  require_same_dim(h.dim(), r.dim(), "commutator");
  return mul(h, r) - mul(r, h);
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  require_same_dim(u.dim(), v.dim(), "inner product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
  require_same_dim(u.dim(), v.dim(), "outer product");
  ComplexMatrix r(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

double max_abs_entry(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& x : m.entries()) best = std::max(best, std::abs(x));
  return best;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

bool is_antihermitian_traceless(const ComplexMatrix& m, double tol) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(m(i, j) + std::conj(m(j, i))) > tol) return false;
  return std::abs(trace(m)) <= tol;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  constexpr int kMaxSweeps = 100;
  constexpr double kRelThreshold = 1e-14;

  const std::size_t n = m.dim();
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  auto diag_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(a(i, i));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_mass() <= kRelThreshold * diag_mass()) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase q so the pivot is real, then a real symmetric rotation.
        const Complex phase = std::conj(apq) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J restricted to (p, q): [[c, s], [-s*phase, c*phase]].
        const Complex jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double half_trace_norm(const ComplexMatrix& m) {
  // Tr(M^dagger M) is the squared Frobenius norm.
  double s = 0.0;
  for (const auto& x : m.entries()) s += std::norm(x);
  return std::sqrt(0.5 * s);
}

double max_singular_value(const ComplexMatrix& m) {
  const auto eig = hermitian_eigenvalues(mul(adjoint(m), m));
  return std::sqrt(std::max(0.0, eig.back()));
}

double operator_norm(const ComplexMatrix& m) {
  if (m.dim() == 2 && is_antihermitian_traceless(m, kHermitianTol)) {
    const double fast = half_trace_norm(m);
#ifndef NDEBUG
    // The anti-Hermitian gate is absolute, so the Hermitian residue it
    // admits bounds the absolute disagreement between the two routes.
    const double reference = max_singular_value(m);
    assert(std::abs(fast - reference) <= 1e-10 * std::max(fast, reference) + 2.0 * kHermitianTol);
#endif
    return fast;
  }
  return max_singular_value(m);
}

double vector_norm(const ComplexVector& v) {
  double s = 0.0;
  for (const auto& x : v.entries()) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace cqdist
