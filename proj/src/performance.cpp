#include "qsl/performance.hpp"

#include <algorithm>
#include <cmath>

#include "qsl/bounds.hpp"
#include "qsl/errors.hpp"

namespace qsl {
namespace {

double spread_on_initial(const Observable& h, const QuantumState& psi_i) {
  if (h.dimension() != psi_i.dimension()) throw DimensionError("Hamiltonian and state dimensions differ");
  const double delta_h = std_dev(h, psi_i);
  if (!(delta_h > 1e-12 * h.matrix().max_abs())) {
    throw StationaryStateError("initial state is stationary under H (zero energy spread)");
  }
  return delta_h;
}

}  // namespace

ControlRun::ControlRun(std::optional<double> t_cqs, std::optional<QuantumState> achieved_state,
                       std::optional<double> achieved_fidelity)
    : t_cqs_(t_cqs), achieved_state_(std::move(achieved_state)), achieved_fidelity_(achieved_fidelity) {
  if (t_cqs_ && (!std::isfinite(*t_cqs_) || *t_cqs_ <= 0.0)) {
    throw DomainError("t_cqs must be finite and positive");
  }
  if (achieved_fidelity_ &&
      (!std::isfinite(*achieved_fidelity_) || *achieved_fidelity_ < 0.0 || *achieved_fidelity_ > 1.0)) {
    throw DomainError("achieved fidelity must lie in [0, 1]");
  }
  if (t_cqs_ && !achieved_state_ && !achieved_fidelity_) {
    throw DomainError("a converged run needs an achieved state or an achieved fidelity");
  }
}

ControlRun ControlRun::completed(double t_cqs) { return ControlRun(t_cqs, std::nullopt, 1.0); }

ControlRun ControlRun::with_fidelity(double t_cqs, double achieved_fidelity) {
  return ControlRun(t_cqs, std::nullopt, achieved_fidelity);
}

ControlRun ControlRun::with_state(double t_cqs, QuantumState achieved_state) {
  return ControlRun(t_cqs, std::move(achieved_state), std::nullopt);
}

ControlRun ControlRun::non_converged() { return ControlRun(std::nullopt, std::nullopt, std::nullopt); }

std::string_view to_string(EtaKind kind) {
  switch (kind) {
    case EtaKind::ratio: return "ratio";
    case EtaKind::bhattacharyya: return "bhattacharyya";
    case EtaKind::orthogonal: return "orthogonal";
    case EtaKind::offset: return "offset";
    case EtaKind::general: return "general";
    case EtaKind::farhi_gutmann: return "farhi_gutmann";
    case EtaKind::partial_fidelity: return "partial_fidelity";
  }
  return "unknown";
}

EtaReport eta(double t_min, const ControlRun& run, EtaKind kind) {
  if (!std::isfinite(t_min) || t_min < 0.0) throw DomainError("t_min must be finite and non-negative");
  EtaReport report;
  report.t_min = t_min;
  report.t_cqs = run.t_cqs();
  report.kind = kind;
  if (!run.converged()) return report;
  const double raw = t_min / *run.t_cqs();
  report.clamped = raw > 1.0;
  report.eta = std::min(raw, 1.0);
  return report;
}

EtaReport eta_bhattacharyya(const Observable& h, const QuantumState& psi_i, const QuantumState& psi_g,
                            const ControlRun& run, const PhysicalConstants& k) {
  const double delta_h = spread_on_initial(h, psi_i);
  return eta(general_transition_bound(psi_i, psi_g, delta_h, k).t_min, run, EtaKind::bhattacharyya);
}

EtaReport eta_orthogonal(double delta_h, const ControlRun& run, const PhysicalConstants& k) {
  return eta(orthogonal_bound(delta_h, k).t_min, run, EtaKind::orthogonal);
}

EtaReport eta_offset(double delta_h, double phi, const ControlRun& run, const PhysicalConstants& k) {
  return eta(offset_bound(delta_h, phi, k).t_min, run, EtaKind::offset);
}

EtaReport eta_fg(const FgModel& model, const ControlRun& run, const PhysicalConstants& k) {
  return eta(fg_tmin(model, k), run, EtaKind::farhi_gutmann);
}

EtaReport eta_general(const QuantumState& a, const QuantumState& b, double delta_h, const ControlRun& run,
                      const PhysicalConstants& k) {
  return eta(general_transition_bound(a, b, delta_h, k).t_min, run, EtaKind::general);
}

EtaReport grade_run(const Observable& h, const QuantumState& psi_i, const QuantumState& psi_g,
                    const ControlRun& run, double fidelity_threshold, const PhysicalConstants& k) {
  if (!std::isfinite(fidelity_threshold) || fidelity_threshold < 0.0 || fidelity_threshold > 1.0) {
    throw DomainError("fidelity threshold must lie in [0, 1]");
  }
  if (!run.converged()) return eta_bhattacharyya(h, psi_i, psi_g, run, k);

  const double delta_h = spread_on_initial(h, psi_i);
  const double achieved =
      run.achieved_fidelity() ? *run.achieved_fidelity() : fidelity(*run.achieved_state(), psi_g);
  if (achieved >= fidelity_threshold) return eta_bhattacharyya(h, psi_i, psi_g, run, k);

  if (run.achieved_state()) {
    const double p = fidelity(psi_i, *run.achieved_state());
    return eta(bhattacharyya_time(delta_h, p, k).t_min, run, EtaKind::partial_fidelity);
  }
  const double angle = std::max(0.0, overlap_angle(psi_i, psi_g) - std::acos(std::sqrt(achieved)));
  return eta(k.hbar() * angle / delta_h, run, EtaKind::partial_fidelity);
}

}  // namespace qsl
