#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qsl/quantum.hpp"

namespace qsl {

enum class BoundKind { bhattacharyya, orthogonal, offset, general };

std::string_view to_string(BoundKind kind);
std::optional<BoundKind> parse_bound_kind(std::string_view name);

/// A minimum transition time together with everything needed to recompute it.
struct BoundReport {
  double t_min = 0.0;
  BoundKind kind = BoundKind::bhattacharyya;
  double delta_h = 0.0;
  double hbar = 1.0;
  /// Kind-specific input: target probability (bhattacharyya), angle phi
  /// (offset, general); unset for orthogonal.
  std::optional<double> parameter;
  std::string inputs_summary;
};

/// Rebuilds a report from its stored inputs. Bit-identical to the original.
BoundReport recompute(const BoundReport& report);

/// t >= (hbar / dH) arccos sqrt(p).
BoundReport bhattacharyya_time(double delta_h, double p_target, const PhysicalConstants& k);

/// t >= pi hbar / (2 dH) for reaching an orthogonal state.
BoundReport orthogonal_bound(double delta_h, const PhysicalConstants& k);

/// Reaching a state orthogonal to |c> from |a>, where |<c|a>| = cos(phi):
/// t >= hbar (pi - 2 phi) / (2 dH).
BoundReport offset_bound(double delta_h, double phi, const PhysicalConstants& k);

/// General transition |a> -> |b>: t >= hbar phi / dH with phi = arccos|<b|a>|.
BoundReport general_transition_bound(const QuantumState& a, const QuantumState& b, double delta_h,
                                     const PhysicalConstants& k);

/// arccos|<b|a>| with the modulus clamped into [0, 1]; lies in [0, pi/2].
double overlap_angle(const QuantumState& a, const QuantumState& b);

/// Lower envelope cos^2(dH t / hbar) of the survival probability. Only valid
/// up to the first zero, t <= pi hbar / (2 dH); later times throw DomainError.
double mt_envelope(double delta_h, double t, const PhysicalConstants& k);

/// Lower envelope cos^2(dH t / hbar + phi) for a start at P(0) = cos^2(phi).
/// Requires 0 <= dH t / hbar + phi <= pi/2.
double offset_envelope(double delta_h, double phi, double t, const PhysicalConstants& k);

/// Largest t for which mt_envelope is defined; +inf when delta_h == 0.
double envelope_window(double delta_h, const PhysicalConstants& k);

}  // namespace qsl
