#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsl/farhi_gutmann.hpp"
#include "qsl/quantum.hpp"

namespace qsl {

using FgProbabilityFn = std::function<double(const FgModel&, double, const PhysicalConstants&)>;

struct CheckOptions {
  std::uint64_t seed = 42;
  int cases = 50;
  /// Closed form under test in the Farhi-Gutmann suite. Replaceable so the
  /// suite itself can be tested against a corrupted formula.
  FgProbabilityFn fg_probability = qsl::fg_probability;
};

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
  /// JSON description of the first failing case, enough to reproduce it.
  std::optional<std::string> failure;

  [[nodiscard]] bool ok() const { return passed == total; }
};

/// Randomized cross-checks between the closed-form results and brute-force
/// propagation:
///   ehrenfest       finite-difference d<R>/dt vs ehrenfest_rhs
///   robertson       dS dR >= |<[R, S]>| / 2
///   mt_inequality   |d<R>/dt| <= (2 / hbar) dH dR
///   mt_envelope     survival probability >= cos^2(dH t / hbar)
///   bhattacharyya   first hitting time >= (hbar / dH) arccos sqrt(p)
///   fg_closed_form  closed-form P_t vs spectral propagation
///   sup_over_c      offset bounds over c orthogonal to b never exceed hbar phi / dH
/// Deterministic for a given seed. Throws DomainError if cases < 1.
std::vector<SuiteResult> run_checks(const CheckOptions& options);

}  // namespace qsl
