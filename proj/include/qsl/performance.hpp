#pragma once

#include <optional>
#include <string_view>

#include "qsl/farhi_gutmann.hpp"
#include "qsl/quantum.hpp"

namespace qsl {

/// Default fidelity above which a run counts as having reached its target.
inline constexpr double kDefaultFidelityThreshold = 1.0 - 1e-6;

/// Outcome of one control run: how long it took and what it reached.
/// An empty t_cqs means the run never converged (t_CQS -> infinity).
class ControlRun {
 public:
  /// Throws DomainError if t_cqs is present but not positive, if the
  /// fidelity lies outside [0, 1], or if a converged run carries neither an
  /// achieved state nor an achieved fidelity.
  ControlRun(std::optional<double> t_cqs, std::optional<QuantumState> achieved_state,
             std::optional<double> achieved_fidelity);

  /// Converged run that reached its target exactly (fidelity 1).
  static ControlRun completed(double t_cqs);
  static ControlRun with_fidelity(double t_cqs, double achieved_fidelity);
  static ControlRun with_state(double t_cqs, QuantumState achieved_state);
  static ControlRun non_converged();

  [[nodiscard]] const std::optional<double>& t_cqs() const { return t_cqs_; }
  [[nodiscard]] const std::optional<QuantumState>& achieved_state() const { return achieved_state_; }
  [[nodiscard]] const std::optional<double>& achieved_fidelity() const { return achieved_fidelity_; }
  [[nodiscard]] bool converged() const { return t_cqs_.has_value(); }

 private:
  std::optional<double> t_cqs_;
  std::optional<QuantumState> achieved_state_;
  std::optional<double> achieved_fidelity_;
};

enum class EtaKind { ratio, bhattacharyya, orthogonal, offset, general, farhi_gutmann, partial_fidelity };

std::string_view to_string(EtaKind kind);

struct EtaReport {
  double eta = 0.0;
  double t_min = 0.0;
  std::optional<double> t_cqs;
  EtaKind kind = EtaKind::ratio;
  /// The raw ratio t_min / t_cqs exceeded 1 and was clamped.
  bool clamped = false;
};

/// eta = t_min / t_cqs, 0 for a non-converged run, clamped into [0, 1].
EtaReport eta(double t_min, const ControlRun& run, EtaKind kind = EtaKind::ratio);

/// Exact-target grading: t_min = hbar arccos|<psi_g|psi_i>| / dH with dH
/// evaluated on psi_i. Throws StationaryStateError when dH = 0.
EtaReport eta_bhattacharyya(const Observable& h, const QuantumState& psi_i, const QuantumState& psi_g,
                            const ControlRun& run, const PhysicalConstants& k);

/// t_min = pi hbar / (2 dH).
EtaReport eta_orthogonal(double delta_h, const ControlRun& run, const PhysicalConstants& k);

/// t_min = hbar (pi - 2 phi) / (2 dH).
EtaReport eta_offset(double delta_h, double phi, const ControlRun& run, const PhysicalConstants& k);

/// t_min = pi hbar / (E mu).
EtaReport eta_fg(const FgModel& model, const ControlRun& run, const PhysicalConstants& k);

/// t_min = hbar arccos|<b|a>| / dH.
EtaReport eta_general(const QuantumState& a, const QuantumState& b, double delta_h, const ControlRun& run,
                      const PhysicalConstants& k);

/// Grades a run that may have missed its target.
///
/// A run whose fidelity with psi_g reaches `fidelity_threshold` is graded as
/// an exact transition (eta_bhattacharyya). Otherwise the bound is the one
/// for reaching what the run actually reached:
///  - with an achieved state, t_min = hbar arccos sqrt(P) / dH where
///    P = |<psi_i|achieved>|^2;
///  - with only a fidelity F, the achieved state lies within angle
///    arccos sqrt(F) of psi_g, so t_min = hbar max(0, phi_ig - arccos sqrt F) / dH.
/// Both carry kind partial_fidelity.
EtaReport grade_run(const Observable& h, const QuantumState& psi_i, const QuantumState& psi_g,
                    const ControlRun& run, double fidelity_threshold, const PhysicalConstants& k);

}  // namespace qsl
