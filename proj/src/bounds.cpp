#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Roundoff allowance on the envelope window edges.
constexpr double kWindowSlack = 1e-12;

void require_positive_spread(double delta_h) {
  if (!std::isfinite(delta_h)) throw DomainError("energy spread must be finite");
  if (!(delta_h > 0.0)) {
    throw StationaryStateError("energy spread is zero: the state is stationary and no bound exists");
  }
}

void require_angle(double phi) {
  if (!std::isfinite(phi) || phi < 0.0 || phi > kHalfPi) {
    throw DomainError("angle phi must lie in [0, pi/2]");
  }
}

// Every bound is hbar * angle / dH with the angle computed first, so bounds
// that agree in angle agree bit for bit.
BoundReport make_report(BoundKind kind, double angle, double delta_h, std::optional<double> parameter,
                        const PhysicalConstants& k) {
  BoundReport r;
  r.kind = kind;
  r.delta_h = delta_h;
  r.hbar = k.hbar();
  r.parameter = parameter;
  r.t_min = k.hbar() * angle / delta_h;
  std::ostringstream summary;
  summary.precision(17);
  summary << "dH=" << delta_h << " hbar=" << k.hbar();
  if (parameter) summary << (kind == BoundKind::bhattacharyya ? " p=" : " phi=") << *parameter;
  r.inputs_summary = summary.str();
  return r;
}

}  // namespace

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::bhattacharyya: return "bhattacharyya";
    case BoundKind::orthogonal: return "orthogonal";
    case BoundKind::offset: return "offset";
    case BoundKind::general: return "general";
  }
  return "unknown";
}

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  for (auto kind : {BoundKind::bhattacharyya, BoundKind::orthogonal, BoundKind::offset, BoundKind::general}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

BoundReport bhattacharyya_time(double delta_h, double p_target, const PhysicalConstants& k) {
  require_positive_spread(delta_h);
  if (!std::isfinite(p_target) || p_target < 0.0 || p_target > 1.0) {
    throw DomainError("target probability must lie in [0, 1]");
  }
  return make_report(BoundKind::bhattacharyya, std::acos(std::sqrt(p_target)), delta_h, p_target, k);
}

BoundReport orthogonal_bound(double delta_h, const PhysicalConstants& k) {
  require_positive_spread(delta_h);
  return make_report(BoundKind::orthogonal, kHalfPi, delta_h, std::nullopt, k);
}

BoundReport offset_bound(double delta_h, double phi, const PhysicalConstants& k) {
  require_positive_spread(delta_h);
  require_angle(phi);
  return make_report(BoundKind::offset, 0.5 * (std::numbers::pi - 2.0 * phi), delta_h, phi, k);
}

double overlap_angle(const QuantumState& a, const QuantumState& b) {
  return std::acos(std::clamp(std::abs(overlap(b, a)), 0.0, 1.0));
}

BoundReport general_transition_bound(const QuantumState& a, const QuantumState& b, double delta_h,
                                     const PhysicalConstants& k) {
  require_positive_spread(delta_h);
  if (a.dimension() != b.dimension()) throw DimensionError("general_transition_bound: dimensions differ");
  const double phi = overlap_angle(a, b);
  return make_report(BoundKind::general, phi, delta_h, phi, k);
}

BoundReport recompute(const BoundReport& report) {
  const PhysicalConstants k(report.hbar);
  switch (report.kind) {
    case BoundKind::bhattacharyya: return bhattacharyya_time(report.delta_h, report.parameter.value(), k);
    case BoundKind::orthogonal: return orthogonal_bound(report.delta_h, k);
    case BoundKind::offset: return offset_bound(report.delta_h, report.parameter.value(), k);
    case BoundKind::general: {
      require_positive_spread(report.delta_h);
      const double phi = report.parameter.value();
      require_angle(phi);
      return make_report(BoundKind::general, phi, report.delta_h, phi, k);
    }
  }
  throw DomainError("unknown bound kind");
}

double envelope_window(double delta_h, const PhysicalConstants& k) {
  if (!std::isfinite(delta_h) || delta_h < 0.0) throw DomainError("energy spread must be non-negative");
  if (delta_h == 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi * k.hbar() / (2.0 * delta_h);
}

double mt_envelope(double delta_h, double t, const PhysicalConstants& k) {
  return offset_envelope(delta_h, 0.0, t, k);
}

double offset_envelope(double delta_h, double phi, double t, const PhysicalConstants& k) {
  if (!std::isfinite(delta_h) || delta_h < 0.0) throw DomainError("energy spread must be non-negative");
  require_angle(phi);
  if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be finite and non-negative");
  const double arg = delta_h * t / k.hbar() + phi;
  if (arg > kHalfPi * (1.0 + kWindowSlack)) {
    throw DomainError("time lies past the first zero of the envelope, where the bound no longer applies");
  }
  if (arg >= kHalfPi) return 0.0;
  const double c = std::cos(arg);
  return c * c;
}

}  // namespace qsl
