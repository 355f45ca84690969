#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsl/bounds.hpp"
#include "qsl/errors.hpp"
#include "qsl/performance.hpp"
#include "qsl/propagation.hpp"
#include "qsl/random.hpp"

using namespace qsl;

namespace {
constexpr double kPi = std::numbers::pi;
const PhysicalConstants kNatural;
const QuantumState kUp = QuantumState::basis(2, 0);
const QuantumState kDown = QuantumState::basis(2, 1);
}  // namespace

TEST_CASE("ControlRun validation") {
  CHECK_THROWS_AS(ControlRun(0.0, std::nullopt, 1.0), DomainError);
  CHECK_THROWS_AS(ControlRun(-1.0, std::nullopt, 1.0), DomainError);
  CHECK_THROWS_AS(ControlRun(1.0, std::nullopt, 1.5), DomainError);
  CHECK_THROWS_AS(ControlRun(1.0, std::nullopt, std::nullopt), DomainError);
  CHECK_NOTHROW(ControlRun(std::nullopt, std::nullopt, std::nullopt));

  CHECK(ControlRun::completed(2.0).achieved_fidelity() == 1.0);
  CHECK_FALSE(ControlRun::non_converged().converged());
  CHECK(ControlRun::with_state(1.0, kDown).achieved_state().has_value());
}

TEST_CASE("eta") {
  CHECK(eta(1.0, ControlRun::completed(2.0)).eta == 0.5);
  const auto lost = eta(1.0, ControlRun::non_converged());
  CHECK(lost.eta == 0.0);
  CHECK_FALSE(lost.t_cqs.has_value());
  CHECK_FALSE(lost.clamped);
  CHECK(eta(kPi / 2.0, ControlRun::completed(kPi / 2.0)).eta == 1.0);

  const auto fast = eta(2.0, ControlRun::completed(1.0));
  CHECK(fast.eta == 1.0);
  CHECK(fast.clamped);
  CHECK_FALSE(eta(1.0, ControlRun::completed(1.0)).clamped);

  CHECK(eta(0.0, ControlRun::completed(3.0)).eta == 0.0);
  CHECK_THROWS_AS(eta(-1.0, ControlRun::completed(1.0)), DomainError);
}

TEST_CASE("eta is strictly decreasing in t_cqs") {
  Rng rng(151);
  for (int trial = 0; trial < 1000; ++trial) {
    const double t_min = uniform(rng, 1e-3, 10.0);
    const double t1 = uniform(rng, t_min, 100.0);
    const double t2 = uniform(rng, t_min, 100.0);
    if (t1 == t2) continue;
    const double e1 = eta(t_min, ControlRun::completed(t1)).eta;
    const double e2 = eta(t_min, ControlRun::completed(t2)).eta;
    CHECK((t1 < t2) == (e1 > e2));
    CHECK(e1 >= 0.0);
    CHECK(e1 <= 1.0);
  }
}

TEST_CASE("eta_bhattacharyya") {
  const Observable h = pauli_x();
  const auto same = eta_bhattacharyya(h, kUp, kUp, ControlRun::completed(1.0), kNatural);
  CHECK(same.eta == 0.0);
  CHECK(same.t_min == 0.0);

  CHECK(eta_bhattacharyya(h, kUp, kDown, ControlRun::completed(kPi / 2.0), kNatural).eta ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eta_bhattacharyya(h, kUp, kDown, ControlRun::completed(kPi), kNatural).eta ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta_bhattacharyya(h, kUp, kDown, ControlRun::completed(kPi), kNatural).kind == EtaKind::bhattacharyya);

  CHECK_THROWS_AS(eta_bhattacharyya(pauli_z(), kUp, kDown, ControlRun::completed(1.0), kNatural),
                  StationaryStateError);
  CHECK_THROWS_AS(eta_bhattacharyya(pauli_z(), kUp, kDown, ControlRun::non_converged(), kNatural),
                  StationaryStateError);
}

TEST_CASE("eta_orthogonal") {
  CHECK(eta_orthogonal(1.0, ControlRun::completed(kPi / 2.0), kNatural).eta == 1.0);
  CHECK(eta_orthogonal(1.0, ControlRun::completed(kPi), kNatural).eta == 0.5);
  CHECK(eta_orthogonal(1.0, ControlRun::non_converged(), kNatural).eta == 0.0);
  CHECK_THROWS_AS(eta_orthogonal(0.0, ControlRun::completed(1.0), kNatural), StationaryStateError);
}

TEST_CASE("eta_offset") {
  CHECK(eta_offset(1.0, kPi / 4.0, ControlRun::completed(kPi / 2.0), kNatural).eta ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta_offset(1.0, 0.0, ControlRun::completed(kPi), kNatural).eta ==
        eta_orthogonal(1.0, ControlRun::completed(kPi), kNatural).eta);
}

TEST_CASE("eta_fg") {
  const FgModel sym = fg_model(1.0, 1.0, 0.5);
  CHECK(eta_fg(sym, ControlRun::completed(fg_tmin(sym, kNatural)), kNatural).eta == 1.0);
  CHECK(eta_fg(sym, ControlRun::completed(2.0 * kPi), kNatural).eta == doctest::Approx(0.5).epsilon(1e-15));
  const auto impossible = eta_fg(sym, ControlRun::completed(1.0), kNatural);
  CHECK(impossible.eta == 1.0);
  CHECK(impossible.clamped);
  CHECK(impossible.kind == EtaKind::farhi_gutmann);

  Rng rng(157);
  for (int trial = 0; trial < 50; ++trial) {
    const FgModel m = fg_model(uniform(rng, 0.1, 5.0), uniform(rng, 0.1, 5.0), uniform(rng, 0.05, 0.95));
    const FgBasis basis = fg_basis_states(m);
    const auto hit =
        first_hitting_time(fg_hamiltonian(m), basis.a, basis.b, fg_pmax(m), HitMode::reach_level, std::nullopt,
                           kNatural);
    REQUIRE(hit.converged);
    CHECK(std::abs(eta_fg(m, ControlRun::completed(*hit.time), kNatural).eta - 1.0) <= 1e-6);
  }
}

TEST_CASE("eta_general") {
  const QuantumState half(ComplexVector{0.5, std::sqrt(0.75)});
  CHECK(eta_general(kUp, half, 1.0, ControlRun::completed(2.0 * kPi / 3.0), kNatural).eta ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eta_general(kUp, kUp, 1.0, ControlRun::completed(1.0), kNatural).eta == 0.0);

  Rng rng(163);
  for (int trial = 0; trial < 100; ++trial) {
    const double delta_h = uniform(rng, 0.1, 10.0);
    const ControlRun run = ControlRun::completed(uniform(rng, 0.1, 20.0));
    const QuantumState a = random_state(3, rng);
    const QuantumState b = random_state_orthogonal_to(a, rng);
    // Random orthogonal pairs carry roundoff in |<b|a>|, so use the exact basis pair.
    CHECK(eta_general(kUp, kDown, delta_h, run, kNatural).eta == eta_orthogonal(delta_h, run, kNatural).eta);
    CHECK(eta_general(a, b, delta_h, run, kNatural).eta ==
          doctest::Approx(eta_orthogonal(delta_h, run, kNatural).eta).epsilon(1e-12));
  }
}

TEST_CASE("grade_run") {
  const Observable h = pauli_x();
  const ControlRun exact = ControlRun::with_fidelity(kPi, 1.0);
  const auto graded = grade_run(h, kUp, kDown, exact, kDefaultFidelityThreshold, kNatural);
  const auto direct = eta_bhattacharyya(h, kUp, kDown, exact, kNatural);
  CHECK(graded.eta == direct.eta);
  CHECK(graded.kind == EtaKind::bhattacharyya);

  const auto partial = grade_run(h, kUp, kDown, ControlRun::with_fidelity(kPi / 4.0, 0.5),
                                 kDefaultFidelityThreshold, kNatural);
  CHECK(partial.kind == EtaKind::partial_fidelity);
  CHECK(partial.t_min == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(partial.eta == doctest::Approx(1.0).epsilon(1e-15));

  const QuantumState midway = normalized(ComplexVector{1.0, Complex(0.0, -1.0)});
  const auto by_state =
      grade_run(h, kUp, kDown, ControlRun::with_state(kPi / 4.0, midway), kDefaultFidelityThreshold, kNatural);
  CHECK(by_state.kind == EtaKind::partial_fidelity);
  CHECK(by_state.t_min == doctest::Approx(kPi / 4.0).epsilon(1e-15));

  const auto stayed =
      grade_run(h, kUp, kDown, ControlRun::with_state(1.0, kUp), kDefaultFidelityThreshold, kNatural);
  CHECK(stayed.t_min == 0.0);
  CHECK(stayed.eta == 0.0);
  const auto nothing =
      grade_run(h, kUp, kDown, ControlRun::with_fidelity(1.0, 0.0), kDefaultFidelityThreshold, kNatural);
  CHECK(nothing.t_min == 0.0);
  CHECK(nothing.eta == 0.0);

  CHECK(grade_run(h, kUp, kDown, ControlRun::non_converged(), kDefaultFidelityThreshold, kNatural).eta == 0.0);
  CHECK_THROWS_AS(grade_run(h, kUp, kDown, exact, 1.5, kNatural), DomainError);
}

TEST_CASE("runs that follow the dynamics never report a super-unity ratio") {
  const PhysicalConstants k(0.9);
  Rng rng(167);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = uniform_index(rng, 2, 6);
    const Observable h = random_hermitian(dim, rng);
    const QuantumState psi = random_state(dim, rng);
    const double t_star = uniform(rng, 0.05, 3.0);
    const QuantumState reached = evolve(h, psi, t_star, k);
    const auto report = grade_run(h, psi, reached, ControlRun::with_state(t_star, reached),
                                  kDefaultFidelityThreshold, k);
    CHECK(report.t_min / t_star <= 1.0 + 1e-6);
  }
}
