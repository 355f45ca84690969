#include "qsl/farhi_gutmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsl/errors.hpp"

namespace qsl {

FgModel fg_model(double e_a, double e_b, double s) {
  if (!std::isfinite(e_a) || !(e_a > 0.0)) throw DomainError("E_a must be positive");
  if (!std::isfinite(e_b) || !(e_b > 0.0)) throw DomainError("E_b must be positive");
  if (!std::isfinite(s) || !(s > 0.0) || s > 1.0) throw DomainError("overlap s must lie in (0, 1]");

  FgModel m;
  m.e_a_ = e_a;
  m.e_b_ = e_b;
  m.s_ = s;
  m.e_ = e_a + e_b;
  m.x_ = e_a - e_b;
  const double r = m.x_ / m.e_;
  const double c2 = 1.0 - s * s;
  // s <= mu <= 1 holds exactly; the clamp only absorbs an ulp of rounding.
  m.mu_ = std::clamp(std::sqrt(s * s + r * r * c2), s, 1.0);
  m.lambda_ = s * s - r * c2;
  return m;
}

FgBasis fg_basis_states(const FgModel& model) {
  const double s = model.s();
  QuantumState b(ComplexVector{1.0, 0.0}, "b");
  if (s == 1.0) return FgBasis{QuantumState(ComplexVector{1.0, 0.0}, "a"), b, true};
  return FgBasis{QuantumState(ComplexVector{s, std::sqrt(1.0 - s * s)}, "a"), b, false};
}

Observable fg_hamiltonian(const FgModel& model) {
  const double half_e = 0.5 * model.e();
  const double mu = model.mu();
  const double lambda = model.lambda();
  // mu^2 - lambda^2 >= 0 algebraically; clamp the roundoff.
  const double off = half_e * std::sqrt(std::max(0.0, mu * mu - lambda * lambda));
  return Observable(ComplexMatrix{{half_e * (1.0 + lambda), off}, {off, half_e * (1.0 - lambda)}});
}

Observable fg_hamiltonian_projected(const FgModel& model) {
  const FgBasis basis = fg_basis_states(model);
  const ComplexMatrix pa = ComplexMatrix::outer(basis.a.amplitudes(), basis.a.amplitudes());
  const ComplexMatrix pb = ComplexMatrix::outer(basis.b.amplitudes(), basis.b.amplitudes());
  return Observable(pa.scaled(model.e_a()) + pb.scaled(model.e_b()));
}

FgDiagonalization fg_diagonalize(const FgModel& model) {
  const double half_e = 0.5 * model.e();
  const double ratio = model.lambda() / model.mu();
  const double plus = std::sqrt(std::max(0.0, 1.0 + ratio)) / std::numbers::sqrt2;
  const double minus = std::sqrt(std::max(0.0, 1.0 - ratio)) / std::numbers::sqrt2;
  return FgDiagonalization{{half_e * (1.0 + model.mu()), half_e * (1.0 - model.mu())},
                           ComplexMatrix{{plus, minus}, {minus, -plus}}};
}

double fg_probability(const FgModel& model, double t, const PhysicalConstants& k) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be finite and non-negative");
  const double s = model.s();
  const double mu = model.mu();
  const double sn = std::sin(mu * model.e() * t / (2.0 * k.hbar()));
  return s * s * ((1.0 / (mu * mu) - 1.0) * sn * sn + 1.0);
}

double fg_pmax(const FgModel& model) {
  const double ratio = model.s() / model.mu();
  return ratio * ratio;
}

double fg_tmin(const FgModel& model, const PhysicalConstants& k) {
  return std::numbers::pi * k.hbar() / (model.e() * model.mu());
}

}  // namespace qsl
