#pragma once

#include <cstdint>
#include <random>

#include "qsl/quantum.hpp"

namespace qsl {

/// All randomized checks draw from a 64-bit Mersenne Twister seeded
/// explicitly, so a seed reproduces a run exactly.
using Rng = std::mt19937_64;

/// (G + G^dagger) / 2 with G having i.i.d. standard complex Gaussian entries,
/// multiplied by `scale`.
Observable random_hermitian(std::size_t dim, Rng& rng, double scale = 1.0);

/// Uniform (Haar) random pure state.
QuantumState random_state(std::size_t dim, Rng& rng);

/// Random pure state orthogonal to `b`. Requires dimension >= 2.
QuantumState random_state_orthogonal_to(const QuantumState& b, Rng& rng);

double uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

}  // namespace qsl
