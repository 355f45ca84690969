#pragma once

#include <optional>
#include <vector>

#include "qsl/linalg.hpp"
#include "qsl/quantum.hpp"

namespace qsl {

inline constexpr double kUnitarityTolerance = 1e-9;

/// U(t) = exp(-i H t / hbar) for a time-independent H, with t0 fixed at 0.
class Propagator {
 public:
  /// Throws DomainError if `matrix` deviates from unitarity by more than
  /// kUnitarityTolerance (entrywise max of U^dagger U - I).
  Propagator(ComplexMatrix matrix, double t, double hbar);

  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] double hbar() const { return hbar_; }

 private:
  ComplexMatrix matrix_;
  double t_;
  double hbar_;
};

Propagator propagator(const Observable& h, double t, const PhysicalConstants& k);

QuantumState evolve(const Observable& h, const QuantumState& psi0, double t, const PhysicalConstants& k);

/// |<target|U(t)|psi0>|^2. With target == psi0 this is the survival
/// probability.
double transition_probability(const Observable& h, const QuantumState& psi0, const QuantumState& target,
                              double t, const PhysicalConstants& k);

/// The amplitude <target|U(t)|psi0> in the eigenbasis of H:
///   A(t) = sum_k w_k exp(-i lambda_k t / hbar),  w_k = <target|v_k><v_k|psi0>.
/// One eigendecomposition serves every time point.
class TransitionAmplitude {
 public:
  TransitionAmplitude(const Observable& h, const QuantumState& psi0, const QuantumState& target,
                      const PhysicalConstants& k);

  [[nodiscard]] Complex amplitude(double t) const;
  [[nodiscard]] double probability(double t) const;
  /// dP/dt = 2 Re(conj(A) dA/dt).
  [[nodiscard]] double probability_rate(double t) const;

 private:
  std::vector<double> frequencies_;  // lambda_k / hbar
  std::vector<Complex> weights_;
};

struct ProbabilitySeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// P_t on the uniform grid t_i = t_max * i / (n_points - 1).
ProbabilitySeries scan_probability(const Observable& h, const QuantumState& psi0, const QuantumState& target,
                                   double t_max, int n_points, const PhysicalConstants& k);

struct HittingResult {
  std::optional<double> time;
  /// P_t at `time`; when the search fails, the largest-approach value seen
  /// on the grid (closest to the level).
  double achieved = 0.0;
  bool converged = false;
};

enum class HitMode {
  reach_level,  ///< inf{t >= 0 : P_t = level}
  vanish,       ///< inf{t >= 0 : P_t = 0}
};

struct HittingOptions {
  int grid_points = 2048;
  int bisection_iterations = 80;
  /// A local extremum of P_t within this distance of the level counts as a hit.
  double tolerance = 1e-9;
  /// Acceptance threshold for HitMode::vanish.
  double vanish_epsilon = 1e-10;
};

/// 4 * pi hbar / (2 dH): four orthogonalization periods of the speed limit.
/// Throws StationaryStateError when delta_h is not positive.
double default_t_max(double delta_h, const PhysicalConstants& k);

/// Earliest time at which the transition probability attains `level`.
///
/// P_t is sampled on a coarse grid. A sign change of P_t - level is refined
/// by bisection. A grid interval where P_t turns back towards `level`
/// (derivative sign change) is refined to the extremum by bisection on dP/dt;
/// an extremum within `tolerance` of the level is a tangential hit. Levels
/// that P_t can only touch (the maximum of a Rabi cycle, or 0) are therefore
/// found to near machine precision in time.
///
/// If the initial state is stationary (dH = 0) the probability never changes
/// and the result is decided at t = 0 without a scan. When `t_max` is empty
/// default_t_max() is used.
HittingResult first_hitting_time(const Observable& h, const QuantumState& psi0, const QuantumState& target,
                                 double level, HitMode mode, std::optional<double> t_max,
                                 const PhysicalConstants& k, const HittingOptions& options = {});

/// Classical fixed-step RK4 on d psi/dt = -i H psi / hbar. The result is not
/// renormalized: norm drift measures step adequacy, so a raw vector is
/// returned instead of a QuantumState.
ComplexVector rk4_evolve(const Observable& h, const QuantumState& psi0, double t, int steps,
                         const PhysicalConstants& k);

/// dH below this (relative to the Hamiltonian scale) is treated as zero.
bool is_stationary(const Observable& h, const QuantumState& psi);

}  // namespace qsl
