#include "qsl/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
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

void require_time(double t, const char* op) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError(std::string(op) + ": time must be finite and non-negative");
  }
}

}  // namespace

Propagator::Propagator(ComplexMatrix matrix, double t, double hbar)
    : matrix_(std::move(matrix)), t_(t), hbar_(hbar) {
  require_time(t, "Propagator");
  if (!matrix_.is_square()) throw DimensionError("propagator matrix must be square");
  const double defect = max_abs_diff(matrix_.adjoint() * matrix_, ComplexMatrix::identity(matrix_.rows()));
  if (defect > kUnitarityTolerance) {
    throw DomainError("propagator is not unitary (defect " + std::to_string(defect) + ")");
  }
}

Propagator propagator(const Observable& h, double t, const PhysicalConstants& k) {
  require_time(t, "propagator");
  if (t == 0.0) return Propagator(ComplexMatrix::identity(h.dimension()), 0.0, k.hbar());
  const double scale = t / k.hbar();
  auto u = spectral_function(h.matrix(), [scale](double lambda) {
    return std::polar(1.0, -lambda * scale);
  });
  return Propagator(std::move(u), t, k.hbar());
}

QuantumState evolve(const Observable& h, const QuantumState& psi0, double t, const PhysicalConstants& k) {
  require_same_dimension(h.dimension(), psi0.dimension(), "evolve");
  const Propagator u = propagator(h, t, k);
  return QuantumState(u.matrix() * psi0.amplitudes(), psi0.label());
}

double transition_probability(const Observable& h, const QuantumState& psi0, const QuantumState& target,
                              double t, const PhysicalConstants& k) {
  require_same_dimension(psi0.dimension(), target.dimension(), "transition_probability");
  return fidelity(target, evolve(h, psi0, t, k));
}

// ---------------------------------------------------------------------------

TransitionAmplitude::TransitionAmplitude(const Observable& h, const QuantumState& psi0,
                                         const QuantumState& target, const PhysicalConstants& k) {
  require_same_dimension(h.dimension(), psi0.dimension(), "TransitionAmplitude");
  require_same_dimension(h.dimension(), target.dimension(), "TransitionAmplitude");
  const EigenDecomposition eig = eig_hermitian(h.matrix());
  const std::size_t n = h.dimension();
  frequencies_.reserve(n);
  weights_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexVector v = eig.eigenvectors.column(j);
    frequencies_.push_back(eig.eigenvalues[j] / k.hbar());
    weights_.push_back(inner_product(target.amplitudes(), v) * inner_product(v, psi0.amplitudes()));
  }
}

Complex TransitionAmplitude::amplitude(double t) const {
  Complex sum{};
  for (std::size_t j = 0; j < weights_.size(); ++j) sum += weights_[j] * std::polar(1.0, -frequencies_[j] * t);
  return sum;
}

double TransitionAmplitude::probability(double t) const { return std::norm(amplitude(t)); }

double TransitionAmplitude::probability_rate(double t) const {
  Complex a{};
  Complex da{};
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const Complex term = weights_[j] * std::polar(1.0, -frequencies_[j] * t);
    a += term;
    da += Complex(0.0, -frequencies_[j]) * term;
  }
  return 2.0 * (std::conj(a) * da).real();
}

ProbabilitySeries scan_probability(const Observable& h, const QuantumState& psi0, const QuantumState& target,
                                   double t_max, int n_points, const PhysicalConstants& k) {
  if (!std::isfinite(t_max) || t_max <= 0.0) throw DomainError("scan_probability: t_max must be positive");
  if (n_points < 2) throw DomainError("scan_probability: need at least 2 grid points");
  const TransitionAmplitude amp(h, psi0, target, k);
  ProbabilitySeries series;
  series.times.resize(static_cast<std::size_t>(n_points));
  series.values.resize(static_cast<std::size_t>(n_points));
  const double last = static_cast<double>(n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double t = (i == n_points - 1) ? t_max : t_max * (static_cast<double>(i) / last);
    series.times[static_cast<std::size_t>(i)] = t;
    series.values[static_cast<std::size_t>(i)] = std::clamp(amp.probability(t), 0.0, 1.0);
  }
  return series;
}

// ---------------------------------------------------------------------------

bool is_stationary(const Observable& h, const QuantumState& psi) {
  return std_dev(h, psi) <= 1e-12 * h.matrix().max_abs();
}

double default_t_max(double delta_h, const PhysicalConstants& k) {
  if (!(delta_h > 0.0) || !std::isfinite(delta_h)) {
    throw StationaryStateError("no default search window: energy spread is zero");
  }
  return 4.0 * (std::numbers::pi * k.hbar() / (2.0 * delta_h));
}

namespace {
constexpr double kTouchOvershoot = 64.0 * std::numeric_limits<double>::epsilon();
}  // namespace

HittingResult first_hitting_time(const Observable& h, const QuantumState& psi0, const QuantumState& target,
                                 double level, HitMode mode, std::optional<double> t_max,
                                 const PhysicalConstants& k, const HittingOptions& options) {
  if (mode == HitMode::vanish) level = 0.0;
  if (!std::isfinite(level) || level < 0.0 || level > 1.0) {
    throw DomainError("first_hitting_time: level must lie in [0, 1]");
  }
  if (options.grid_points < 2 || options.bisection_iterations < 1) {
    throw DomainError("first_hitting_time: need at least 2 grid points and 1 bisection step");
  }
  if (t_max && (!std::isfinite(*t_max) || *t_max <= 0.0)) {
    throw DomainError("first_hitting_time: t_max must be finite and positive");
  }
  const double tol = mode == HitMode::vanish ? options.vanish_epsilon : options.tolerance;

  const TransitionAmplitude amp(h, psi0, target, k);
  auto reported = [&](double t) { return std::clamp(amp.probability(t), 0.0, 1.0); };
  const double p0 = reported(0.0);
  if (std::abs(p0 - level) <= tol) return HittingResult{0.0, p0, true};
  if (is_stationary(h, psi0)) return HittingResult{std::nullopt, p0, false};

  const double horizon = t_max ? *t_max : default_t_max(std_dev(h, psi0), k);
  // Orient so that the search always looks for g(t) = dir * (P_t - level) to
  // climb from negative to zero.
  const double dir = p0 < level ? 1.0 : -1.0;
  auto gap = [&](double t) { return dir * (amp.probability(t) - level); };
  auto slope = [&](double t) { return dir * amp.probability_rate(t); };

  auto bisect_crossing = [&](double lo, double hi) {
    for (int it = 0; it < options.bisection_iterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (gap(mid) >= 0.0 ? hi : lo) = mid;
    }
    return HittingResult{hi, reported(hi), true};
  };
  auto bisect_extremum = [&](double lo, double hi) {
    for (int it = 0; it < options.bisection_iterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (slope(mid) > 0.0 ? lo : hi) = mid;
    }
    return gap(lo) >= gap(hi) ? lo : hi;
  };

  double closest = p0;
  double closest_gap = std::abs(p0 - level);
  auto note = [&](double t, double g) {
    if (-g < closest_gap) {
      closest_gap = -g;
      closest = reported(t);
    }
  };

  const int n = options.grid_points;
  const double last = static_cast<double>(n - 1);
  double t_left = 0.0;
  double slope_left = slope(0.0);
  for (int i = 1; i < n; ++i) {
    const double t_right = (i == n - 1) ? horizon : horizon * (static_cast<double>(i) / last);
    const double gap_right = gap(t_right);
    const double slope_right = slope(t_right);
    if (slope_left >= 0.0 && slope_right <= 0.0 && !(slope_left == 0.0 && slope_right == 0.0)) {
      const double t_star = bisect_extremum(t_left, t_right);
      const double gap_star = gap(t_star);
      // An overshoot of a few ulps is a touch blurred by roundoff; the
      // crossing it would produce is anywhere in the flat top of the peak.
      if (gap_star > kTouchOvershoot) return bisect_crossing(t_left, t_star);
      if (gap_star >= -tol) return HittingResult{t_star, reported(t_star), true};
      note(t_star, gap_star);
    }
    if (gap_right >= 0.0) return bisect_crossing(t_left, t_right);
    note(t_right, gap_right);
    t_left = t_right;
    slope_left = slope_right;
  }
  return HittingResult{std::nullopt, closest, false};
}

ComplexVector rk4_evolve(const Observable& h, const QuantumState& psi0, double t, int steps,
                         const PhysicalConstants& k) {
  require_same_dimension(h.dimension(), psi0.dimension(), "rk4_evolve");
  if (steps < 1) throw DomainError("rk4_evolve: steps must be at least 1");
  if (!std::isfinite(t)) throw DomainError("rk4_evolve: time must be finite");

  const std::size_t n = h.dimension();
  const auto& m = h.matrix();
  const Complex factor(0.0, -1.0 / k.hbar());
  auto rhs = [&](const std::vector<Complex>& x, std::vector<Complex>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex sum{};
      for (std::size_t j = 0; j < n; ++j) sum += m(i, j) * x[j];
      out[i] = factor * sum;
    }
  };

  std::vector<Complex> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    rhs(psi, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + dt * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return ComplexVector(std::move(psi));
}

}  // namespace qsl
