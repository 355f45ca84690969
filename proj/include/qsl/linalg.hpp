#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qsl {

using Complex = std::complex<double>;

/// Default absolute, entrywise tolerance for Hermiticity checks. Problem files
/// are human-written, so decimal rounding asymmetries must pass.
inline constexpr double kHermiticityTolerance = 1e-10;

/// Dense complex column vector. Immutable after construction; dimension >= 1
/// and every entry finite.
class ComplexVector {
 public:
  explicit ComplexVector(std::vector<Complex> entries);
  ComplexVector(std::initializer_list<Complex> entries);

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] const Complex& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] std::span<const Complex> entries() const { return entries_; }
  [[nodiscard]] auto begin() const { return entries_.begin(); }
  [[nodiscard]] auto end() const { return entries_.end(); }

  [[nodiscard]] double norm() const;
  [[nodiscard]] ComplexVector scaled(Complex factor) const;

  friend ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
  friend ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);

 private:
  std::vector<Complex> entries_;
};

/// Dense row-major complex matrix. Immutable after construction; every entry
/// finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix outer(const ComplexVector& ket, const ComplexVector& bra);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  [[nodiscard]] std::span<const Complex> entries() const { return entries_; }

  [[nodiscard]] ComplexMatrix adjoint() const;
  [[nodiscard]] ComplexMatrix scaled(Complex factor) const;
  [[nodiscard]] Complex trace() const;
  [[nodiscard]] double frobenius_norm() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] ComplexVector column(std::size_t c) const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

/// Eigen-pairs of a Hermitian matrix. Eigenvalues ascend; column k of
/// `eigenvectors` belongs to eigenvalues[k].
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// <x|y> = sum conj(x_i) y_i.
Complex inner_product(const ComplexVector& x, const ComplexVector& y);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermiticityTolerance);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cyclic complex Jacobi diagonalization.
///
/// Eigenvalues are returned in ascending order. Exactly tied eigenvalues keep
/// the order the sweeps produced and their eigenvectors are re-orthonormalized
/// with modified Gram-Schmidt, so repeated calls on identical input give
/// identical output.
EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol = kHermiticityTolerance);

using SpectralMap = std::function<Complex(double)>;

/// V diag(f(lambda_k)) V^dagger.
ComplexMatrix spectral_function(const EigenDecomposition& eig, const SpectralMap& f);
ComplexMatrix spectral_function(const ComplexMatrix& m, const SpectralMap& f);

}  // namespace qsl
