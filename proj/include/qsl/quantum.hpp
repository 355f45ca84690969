#pragma once

#include <optional>
#include <string>

#include "qsl/linalg.hpp"

namespace qsl {

inline constexpr double kNormalizationTolerance = 1e-9;
/// Largest imaginary residue of <psi|A|psi> attributed to roundoff.
inline constexpr double kImaginaryResidueTolerance = 1e-10;

/// Reduced Planck constant in the caller's unit system. Natural units
/// (hbar = 1) by default.
class PhysicalConstants {
 public:
  explicit PhysicalConstants(double hbar = 1.0);

  static PhysicalConstants natural() { return PhysicalConstants(1.0); }
  /// hbar in J*s.
  static PhysicalConstants si() { return PhysicalConstants(1.054571817e-34); }

  [[nodiscard]] double hbar() const { return hbar_; }

 private:
  double hbar_;
};

/// Normalized pure state. Construction rejects vectors whose norm differs
/// from 1 by more than kNormalizationTolerance; use normalized() to rescale.
class QuantumState {
 public:
  explicit QuantumState(ComplexVector amplitudes, std::optional<std::string> label = std::nullopt);

  /// Computational basis ket |index> in a space of dimension `dim`.
  static QuantumState basis(std::size_t dim, std::size_t index);

  [[nodiscard]] const ComplexVector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] const std::optional<std::string>& label() const { return label_; }
  [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
  std::optional<std::string> label_;
};

/// Rescales `v` to unit norm. Throws DomainError for the zero vector.
QuantumState normalized(const ComplexVector& v, std::optional<std::string> label = std::nullopt);

/// Hermitian operator (Hamiltonian, projector, or any measured quantity).
class Observable {
 public:
  explicit Observable(ComplexMatrix matrix, double tol = kHermiticityTolerance);

  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  [[nodiscard]] std::size_t dimension() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

Observable pauli_x();
Observable pauli_y();
Observable pauli_z();

/// <a|b>.
Complex overlap(const QuantumState& a, const QuantumState& b);

/// <psi|A|psi>. Imaginary residue up to kImaginaryResidueTolerance (scaled by
/// the operator magnitude) is dropped; anything larger throws NotHermitianError.
double expectation(const Observable& a, const QuantumState& psi);

/// sqrt(<A^2> - <A>^2), evaluated as ||(A - <A>) psi||.
double std_dev(const Observable& a, const QuantumState& psi);

/// |psi><psi|.
Observable projector(const QuantumState& psi);

/// |<a|b>|^2, clamped into [0, 1].
double fidelity(const QuantumState& a, const QuantumState& b);

struct RobertsonTerms {
  double lhs;  ///< dS * dR
  double rhs;  ///< |<[R, S]>| / 2
};

RobertsonTerms robertson_check(const Observable& r, const Observable& s, const QuantumState& psi);

/// d<R>/dt = <[R, H]> / (i hbar), returned as the real number it is for
/// Hermitian R and H.
double ehrenfest_rhs(const Observable& r, const Observable& h, const QuantumState& psi,
                     const PhysicalConstants& k);

}  // namespace qsl
