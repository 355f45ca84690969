#include "qsl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::span<const Complex> entries, const char* what) {
  if (!std::all_of(entries.begin(), entries.end(), is_finite)) {
    throw DomainError(std::string(what) + " has a non-finite entry");
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix shapes differ: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

constexpr int kMaxJacobiSweeps = 100;

}  // namespace

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionError("vector dimension must be at least 1");
  require_finite(entries_, "vector");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

double ComplexVector::norm() const {
  double sum = 0.0;
  for (const auto& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

ComplexVector ComplexVector::scaled(Complex factor) const {
  std::vector<Complex> out(entries_);
  for (auto& z : out) z *= factor;
  return ComplexVector(std::move(out));
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector dimensions differ");
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return ComplexVector(std::move(out));
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector dimensions differ");
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return ComplexVector(std::move(out));
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix must have at least one row and column");
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("matrix entry count " + std::to_string(entries_.size()) +
                         " does not match shape " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
  require_finite(entries_, "matrix");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix must have at least one row and column");
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix rows");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  require_finite(entries_, "matrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  const std::size_t n = values.size();
  std::vector<Complex> e(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = values[i];
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& ket, const ComplexVector& bra) {
  std::vector<Complex> e(ket.size() * bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < bra.size(); ++j) e[i * bra.size() + j] = ket[i] * std::conj(bra[j]);
  }
  return ComplexMatrix(ket.size(), bra.size(), std::move(e));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  std::vector<Complex> e(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = std::conj((*this)(r, c));
  }
  return ComplexMatrix(cols_, rows_, std::move(e));
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  std::vector<Complex> e(entries_);
  for (auto& z : e) z *= factor;
  return ComplexMatrix(rows_, cols_, std::move(e));
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Complex sum{};
  for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return ComplexVector(std::move(out));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  std::vector<Complex> e(a.rows() * b.cols(), Complex{});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) e[i * b.cols() + j] += aik * b(k, j);
    }
  }
  return ComplexMatrix(a.rows(), b.cols(), std::move(e));
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<Complex> out(m.rows(), Complex{});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) out[i] += m(i, k) * v[k];
  }
  return ComplexVector(std::move(out));
}

// ---------------------------------------------------------------------------
// Free functions

Complex inner_product(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) {
    throw DimensionError("inner product of vectors with dimensions " + std::to_string(x.size()) +
                         " and " + std::to_string(y.size()));
  }
  Complex sum{};
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw DimensionError("Hermiticity check on a non-square matrix");
  if (!(tol > 0.0)) throw DomainError("Hermiticity tolerance must be positive");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = r; c < m.cols(); ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    }
  }
  return true;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) throw NotHermitianError("eig_hermitian: input matrix is not Hermitian");
  const std::size_t n = m.rows();

  // Work on the Hermitian part so sub-tolerance asymmetries do not leak in.
  std::vector<Complex> a(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = 0.5 * (m(r, c) + std::conj(m(c, r)));
  }
  std::vector<Complex> v(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto at = [n](std::vector<Complex>& x, std::size_t r, std::size_t c) -> Complex& {
    return x[r * n + c];
  };
  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (r != c) sum += std::norm(a[r * n + c]);
      }
    }
    return std::sqrt(sum);
  };

  const double scale = m.frobenius_norm();
  const double target = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_norm() <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex z = at(a, p, q);
        const double r = std::abs(z);
        if (r == 0.0) continue;
        const Complex phase = z / r;  // e^{i theta}
        const double alpha = at(a, p, p).real();
        const double beta = at(a, q, q).real();
        const double theta = (beta - alpha) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = [[c, s], [-s e^{-i theta}, c e^{-i theta}]] acting on columns p, q.
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(a, k, p);
          const Complex akq = at(a, k, q);
          at(a, k, p) = c * akp + jqp * akq;
          at(a, k, q) = s * akp + jqq * akq;
          const Complex vkp = at(v, k, p);
          const Complex vkq = at(v, k, q);
          at(v, k, p) = c * vkp + jqp * vkq;
          at(v, k, q) = s * vkp + jqq * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(a, p, k);
          const Complex aqk = at(a, q, k);
          at(a, p, k) = c * apk + std::conj(jqp) * aqk;
          at(a, q, k) = s * apk + std::conj(jqq) * aqk;
        }
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        at(a, p, p) = at(a, p, p).real();
        at(a, q, q) = at(a, q, q).real();
      }
    }
  }
  if (sweep == kMaxJacobiSweeps && off_norm() > target) {
    throw ConvergenceError("eig_hermitian: Jacobi sweeps did not converge after " +
                           std::to_string(kMaxJacobiSweeps) + " sweeps (off-diagonal norm " +
                           std::to_string(off_norm()) + ", matrix norm " + std::to_string(scale) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i].real() < a[j * n + j].real();
  });

  std::vector<double> values(n);
  std::vector<Complex> vectors(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a[order[k] * n + order[k]].real();
    for (std::size_t r = 0; r < n; ++r) vectors[r * n + k] = v[r * n + order[k]];
  }

  // Modified Gram-Schmidt inside blocks of exactly equal eigenvalues.
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && values[end] == values[begin]) ++end;
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t j = begin; j < k; ++j) {
        Complex proj{};
        for (std::size_t r = 0; r < n; ++r) proj += std::conj(vectors[r * n + j]) * vectors[r * n + k];
        for (std::size_t r = 0; r < n; ++r) vectors[r * n + k] -= proj * vectors[r * n + j];
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < n; ++r) norm += std::norm(vectors[r * n + k]);
      norm = std::sqrt(norm);
      for (std::size_t r = 0; r < n; ++r) vectors[r * n + k] /= norm;
    }
    begin = end;
  }

  return EigenDecomposition{std::move(values), ComplexMatrix(n, n, std::move(vectors))};
}

ComplexMatrix spectral_function(const EigenDecomposition& eig, const SpectralMap& f) {
  const std::size_t n = eig.eigenvalues.size();
  std::vector<Complex> fvals(n);
  for (std::size_t k = 0; k < n; ++k) fvals[k] = f(eig.eigenvalues[k]);
  const auto& vecs = eig.eigenvectors;
  std::vector<Complex> e(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum{};
      for (std::size_t k = 0; k < n; ++k) sum += vecs(i, k) * fvals[k] * std::conj(vecs(j, k));
      e[i * n + j] = sum;
    }
  }
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix spectral_function(const ComplexMatrix& m, const SpectralMap& f) {
  return spectral_function(eig_hermitian(m), f);
}

}  // namespace qsl
