#pragma once

#include <array>

#include "qsl/linalg.hpp"
#include "qsl/quantum.hpp"

namespace qsl {

/// Two-state analog search model H = E_a |a><a| + E_b |b><b| with real
/// overlap s = <a|b>.
///
/// Derived quantities:
///   E = E_a + E_b,  x = E_a - E_b,
///   mu     = sqrt(s^2 + (x/E)^2 (1 - s^2)),
///   lambda = s^2 - (x/E)(1 - s^2).
/// Always s <= mu <= 1 and mu^2 - lambda^2 = s^2 (1 - s^2)(1 + x/E)^2.
class FgModel {
 public:
  [[nodiscard]] double e_a() const { return e_a_; }
  [[nodiscard]] double e_b() const { return e_b_; }
  [[nodiscard]] double s() const { return s_; }
  [[nodiscard]] double e() const { return e_; }
  [[nodiscard]] double x() const { return x_; }
  [[nodiscard]] double mu() const { return mu_; }
  [[nodiscard]] double lambda() const { return lambda_; }

 private:
  friend FgModel fg_model(double e_a, double e_b, double s);
  FgModel() = default;

  double e_a_ = 0.0;
  double e_b_ = 0.0;
  double s_ = 0.0;
  double e_ = 0.0;
  double x_ = 0.0;
  double mu_ = 0.0;
  double lambda_ = 0.0;
};

/// Requires e_a > 0, e_b > 0 and 0 < s <= 1. s = 0 leaves the target
/// unreachable and is rejected.
FgModel fg_model(double e_a, double e_b, double s);

/// |a> and |b> as coordinates in the orthonormal basis {|b>, |b'>} with
/// |b'> = (|a> - s|b>) / sqrt(1 - s^2).
struct FgBasis {
  QuantumState a;
  QuantumState b;
  /// s == 1: |b'> does not exist and a = b = (1, 0).
  bool degenerate = false;
};

FgBasis fg_basis_states(const FgModel& model);

/// Closed form (E/2) [[1 + lambda, sqrt(mu^2 - lambda^2)], [sqrt(mu^2 - lambda^2), 1 - lambda]].
Observable fg_hamiltonian(const FgModel& model);

/// E_a |a><a| + E_b |b><b| assembled from the basis coordinates. Independent
/// route to fg_hamiltonian.
Observable fg_hamiltonian_projected(const FgModel& model);

struct FgDiagonalization {
  /// (E/2)(1 + mu), (E/2)(1 - mu).
  std::array<double, 2> eigenvalues;
  /// (1/sqrt 2) [[sqrt(1 + lambda/mu), sqrt(1 - lambda/mu)],
  ///             [sqrt(1 - lambda/mu), -sqrt(1 + lambda/mu)]]; real orthogonal.
  ComplexMatrix u;
};

FgDiagonalization fg_diagonalize(const FgModel& model);

/// P_t = s^2 [(1/mu^2 - 1) sin^2(mu E t / (2 hbar)) + 1].
double fg_probability(const FgModel& model, double t, const PhysicalConstants& k);

/// (s / mu)^2.
double fg_pmax(const FgModel& model);

/// pi hbar / (E mu), the first time P_t reaches fg_pmax.
double fg_tmin(const FgModel& model, const PhysicalConstants& k);

}  // namespace qsl
