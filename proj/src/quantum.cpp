#include "qsl/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

void require_same_dimension(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": dimensions " + std::to_string(a) + " and " +
                         std::to_string(b) + " differ");
  }
}

Complex raw_expectation(const ComplexMatrix& a, const ComplexVector& x) {
  return inner_product(x, a * x);
}

}  // namespace

PhysicalConstants::PhysicalConstants(double hbar) : hbar_(hbar) {
  if (!std::isfinite(hbar) || hbar <= 0.0) throw DomainError("hbar must be finite and positive");
}

QuantumState::QuantumState(ComplexVector amplitudes, std::optional<std::string> label)
    : amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormalizationTolerance) {
    throw DomainError("state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  std::vector<Complex> e(dim, Complex{});
  e[index] = 1.0;
  return QuantumState(ComplexVector(std::move(e)));
}

QuantumState normalized(const ComplexVector& v, std::optional<std::string> label) {
  const double norm = v.norm();
  if (norm == 0.0) throw DomainError("cannot normalize the zero vector");
  return QuantumState(v.scaled(1.0 / norm), std::move(label));
}

Observable::Observable(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) throw DimensionError("observable matrix must be square");
  if (!is_hermitian(matrix_, tol)) throw NotHermitianError("observable matrix is not Hermitian");
}

Observable pauli_x() { return Observable(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}); }
Observable pauli_y() {
  return Observable(ComplexMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
}
Observable pauli_z() { return Observable(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}); }

Complex overlap(const QuantumState& a, const QuantumState& b) {
  return inner_product(a.amplitudes(), b.amplitudes());
}

double expectation(const Observable& a, const QuantumState& psi) {
  require_same_dimension(a.dimension(), psi.dimension(), "expectation");
  const Complex value = raw_expectation(a.matrix(), psi.amplitudes());
  const double allowed = kImaginaryResidueTolerance * std::max(1.0, a.matrix().max_abs());
  if (std::abs(value.imag()) > allowed) {
    throw NotHermitianError("expectation has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

double std_dev(const Observable& a, const QuantumState& psi) {
  const double mean = expectation(a, psi);
  const ComplexVector a_psi = a.matrix() * psi.amplitudes();
  // ||(A - <A>) psi||^2 equals <A^2> - <A>^2 but cannot go negative.
  double radicand = 0.0;
  for (std::size_t i = 0; i < psi.dimension(); ++i) {
    radicand += std::norm(a_psi[i] - mean * psi.amplitudes()[i]);
  }
  return std::sqrt(radicand);
}

Observable projector(const QuantumState& psi) {
  return Observable(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  require_same_dimension(a.dimension(), b.dimension(), "fidelity");
  return std::clamp(std::norm(overlap(a, b)), 0.0, 1.0);
}

RobertsonTerms robertson_check(const Observable& r, const Observable& s, const QuantumState& psi) {
  require_same_dimension(r.dimension(), s.dimension(), "robertson_check");
  require_same_dimension(r.dimension(), psi.dimension(), "robertson_check");
  // <[R, S]> = <R psi|S psi> - <S psi|R psi> = 2i Im<R psi|S psi>.
  const Complex rs = inner_product(r.matrix() * psi.amplitudes(), s.matrix() * psi.amplitudes());
  return RobertsonTerms{std_dev(s, psi) * std_dev(r, psi), std::abs(rs.imag())};
}

double ehrenfest_rhs(const Observable& r, const Observable& h, const QuantumState& psi,
                     const PhysicalConstants& k) {
  require_same_dimension(r.dimension(), h.dimension(), "ehrenfest_rhs");
  require_same_dimension(r.dimension(), psi.dimension(), "ehrenfest_rhs");
  // <[R, H]> = 2i Im<R psi|H psi>, so <[R, H]> / (i hbar) = 2 Im<R psi|H psi> / hbar.
  const Complex rh = inner_product(r.matrix() * psi.amplitudes(), h.matrix() * psi.amplitudes());
  return 2.0 * rh.imag() / k.hbar();
}

}  // namespace qsl
