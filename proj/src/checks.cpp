#include "qsl/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsl/bounds.hpp"
#include "qsl/errors.hpp"
#include "qsl/io.hpp"
#include "qsl/propagation.hpp"
#include "qsl/random.hpp"

namespace qsl {
namespace {

constexpr std::size_t kMinDim = 2;
constexpr std::size_t kMaxDim = 6;

std::string system_json(const char* suite, int index, const Observable& h, const QuantumState& psi,
                        const std::string& extra) {
  io::JsonObject obj;
  obj.text("suite", suite).integer("case", index);
  obj.raw("hamiltonian", io::complex_matrix(h.matrix()));
  obj.raw("initial_state", io::complex_array(psi.amplitudes()));
  if (!extra.empty()) obj.raw("detail", extra);
  return obj.str();
}

// Runs `body(rng, index)` for every case; the body returns a failure
// description or nothing.
template <typename Body>
SuiteResult run_suite(const char* name, std::uint64_t seed, int cases, Body body) {
  SuiteResult result;
  result.name = name;
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    ++result.total;
    std::optional<std::string> failure;
    try {
      failure = body(rng, i);
    } catch (const std::exception& e) {
      failure = io::JsonObject().text("suite", name).integer("case", i).text("exception", e.what()).str();
    }
    if (failure) {
      if (!result.failure) result.failure = std::move(failure);
    } else {
      ++result.passed;
    }
  }
  return result;
}

std::size_t random_dim(Rng& rng) { return uniform_index(rng, kMinDim, kMaxDim); }

}  // namespace

std::vector<SuiteResult> run_checks(const CheckOptions& options) {
  if (options.cases < 1) throw DomainError("check needs at least one case per suite");
  const PhysicalConstants k;
  const int n = options.cases;
  std::vector<SuiteResult> results;

  results.push_back(run_suite("ehrenfest", options.seed + 1, n, [&](Rng& rng, int i) -> std::optional<std::string> {
    const std::size_t dim = random_dim(rng);
    const Observable h = random_hermitian(dim, rng);
    const Observable r = random_hermitian(dim, rng);
    const QuantumState psi = random_state(dim, rng);
    const double step = 1e-5;
    const Observable minus_h(h.matrix().scaled(-1.0));
    const double ahead = expectation(r, evolve(h, psi, step, k));
    const double behind = expectation(r, evolve(minus_h, psi, step, k));
    const double fd = (ahead - behind) / (2.0 * step);
    const double rhs = ehrenfest_rhs(r, h, psi, k);
    if (std::abs(fd - rhs) <= 1e-6) return std::nullopt;
    return system_json("ehrenfest", i, h, psi,
                       io::JsonObject().raw("observable", io::complex_matrix(r.matrix()))
                           .number("finite_difference", fd).number("ehrenfest_rhs", rhs).str());
  }));

  results.push_back(run_suite("robertson", options.seed + 2, n, [&](Rng& rng, int i) -> std::optional<std::string> {
    const std::size_t dim = random_dim(rng);
    const Observable r = random_hermitian(dim, rng);
    const Observable s = random_hermitian(dim, rng);
    const QuantumState psi = random_state(dim, rng);
    const RobertsonTerms terms = robertson_check(r, s, psi);
    if (terms.lhs >= terms.rhs - 1e-10) return std::nullopt;
    return system_json("robertson", i, s, psi,
                       io::JsonObject().raw("r", io::complex_matrix(r.matrix()))
                           .number("lhs", terms.lhs).number("rhs", terms.rhs).str());
  }));

  results.push_back(run_suite("mt_inequality", options.seed + 3, n, [&](Rng& rng, int i) -> std::optional<std::string> {
    const std::size_t dim = random_dim(rng);
    const Observable h = random_hermitian(dim, rng);
    const Observable r = random_hermitian(dim, rng);
    const QuantumState psi = random_state(dim, rng);
    const double rate = std::abs(ehrenfest_rhs(r, h, psi, k));
    const double bound = 2.0 / k.hbar() * std_dev(h, psi) * std_dev(r, psi);
    if (rate <= bound + 1e-10) return std::nullopt;
    return system_json("mt_inequality", i, h, psi,
                       io::JsonObject().raw("r", io::complex_matrix(r.matrix()))
                           .number("rate", rate).number("bound", bound).str());
  }));

  results.push_back(run_suite("mt_envelope", options.seed + 4, n, [&](Rng& rng, int i) -> std::optional<std::string> {
    const std::size_t dim = random_dim(rng);
    const Observable h = random_hermitian(dim, rng);
    const QuantumState psi = random_state(dim, rng);
    const double delta_h = std_dev(h, psi);
    const ProbabilitySeries series = scan_probability(h, psi, psi, envelope_window(delta_h, k), 256, k);
    for (std::size_t j = 0; j < series.times.size(); ++j) {
      const double env = mt_envelope(delta_h, series.times[j], k);
      if (series.values[j] < env - 1e-9) {
        return system_json("mt_envelope", i, h, psi,
                           io::JsonObject().number("t", series.times[j]).number("survival", series.values[j])
                               .number("envelope", env).str());
      }
    }
    return std::nullopt;
  }));

  results.push_back(run_suite("bhattacharyya", options.seed + 5, n, [&](Rng& rng, int i) -> std::optional<std::string> {
    const std::size_t dim = random_dim(rng);
    const Observable h = random_hermitian(dim, rng);
    const QuantumState psi = random_state(dim, rng);
    const double delta_h = std_dev(h, psi);
    const double horizon = default_t_max(delta_h, k);
    const ProbabilitySeries series = scan_probability(h, psi, psi, horizon, 512, k);
    for (int probe = 0; probe < 4; ++probe) {
      const double p = series.values[uniform_index(rng, 1, series.values.size() - 1)];
      const HittingResult hit = first_hitting_time(h, psi, psi, p, HitMode::reach_level, horizon, k);
      if (!hit.converged) continue;
      const double bound = bhattacharyya_time(delta_h, p, k).t_min;
      if (*hit.time < bound - 1e-6) {
        return system_json("bhattacharyya", i, h, psi,
                           io::JsonObject().number("level", p).number("hit_time", *hit.time)
                               .number("bound", bound).str());
      }
    }
    return std::nullopt;
  }));

  results.push_back(run_suite("fg_closed_form", options.seed + 6, n, [&](Rng& rng, int) -> std::optional<std::string> {
    const FgModel model = fg_model(uniform(rng, 0.1, 5.0), uniform(rng, 0.1, 5.0), uniform(rng, 0.05, 0.95));
    const FgBasis basis = fg_basis_states(model);
    const TransitionAmplitude amp(fg_hamiltonian_projected(model), basis.a, basis.b, k);
    const double horizon = 3.0 * fg_tmin(model, k);
    for (int j = 0; j < 64; ++j) {
      const double t = horizon * j / 63.0;
      const double closed = options.fg_probability(model, t, k);
      const double brute = amp.probability(t);
      if (std::abs(closed - brute) > 1e-9) {
        return io::JsonObject().text("suite", "fg_closed_form").number("e_a", model.e_a())
            .number("e_b", model.e_b()).number("s", model.s()).number("t", t)
            .number("closed_form", closed).number("propagated", brute).str();
      }
    }
    return std::nullopt;
  }));

  results.push_back(run_suite("sup_over_c", options.seed + 7, n, [&](Rng& rng, int i) -> std::optional<std::string> {
    const std::size_t dim = random_dim(rng);
    const Observable h = random_hermitian(dim, rng);
    const QuantumState a = random_state(dim, rng);
    const QuantumState b = random_state(dim, rng);
    const double delta_h = std_dev(h, a);
    const double general = general_transition_bound(a, b, delta_h, k).t_min;
    double best = 0.0;
    for (int j = 0; j < 32; ++j) {
      const QuantumState c = random_state_orthogonal_to(b, rng);
      best = std::max(best, offset_bound(delta_h, overlap_angle(a, c), k).t_min);
    }
    // The maximizer lies in span{a, b}: c* = a - <b|a> b, normalized.
    const QuantumState c_star = normalized(a.amplitudes() - b.amplitudes().scaled(overlap(b, a)));
    const double attained = offset_bound(delta_h, overlap_angle(a, c_star), k).t_min;
    if (best <= general + 1e-9 && std::abs(attained - general) <= 1e-9) return std::nullopt;
    return system_json("sup_over_c", i, h, a,
                       io::JsonObject().raw("b", io::complex_array(b.amplitudes())).number("general", general)
                           .number("sampled_max", best).number("maximizer", attained).str());
  }));

  return results;
}

}  // namespace qsl
