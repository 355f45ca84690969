#include "qsl/random.hpp"

#include <vector>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

Observable random_hermitian(std::size_t dim, Rng& rng, double scale) {
  std::vector<Complex> g(dim * dim);
  for (auto& z : g) z = gaussian(rng);
  std::vector<Complex> h(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) h[r * dim + c] = 0.5 * scale * (g[r * dim + c] + std::conj(g[c * dim + r]));
  }
  return Observable(ComplexMatrix(dim, dim, std::move(h)));
}

QuantumState random_state(std::size_t dim, Rng& rng) {
  std::vector<Complex> v(dim);
  for (auto& z : v) z = gaussian(rng);
  return normalized(ComplexVector(std::move(v)));
}

QuantumState random_state_orthogonal_to(const QuantumState& b, Rng& rng) {
  if (b.dimension() < 2) throw DimensionError("no orthogonal complement in dimension 1");
  for (;;) {
    const QuantumState v = random_state(b.dimension(), rng);
    const ComplexVector rest = v.amplitudes() - b.amplitudes().scaled(overlap(b, v));
    if (rest.norm() > 1e-6) {
      // A second projection removes the residue left by the first.
      const QuantumState once = normalized(rest);
      return normalized(once.amplitudes() - b.amplitudes().scaled(overlap(b, once)));
    }
  }
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> dist(lo, hi);
  return dist(rng);
}

}  // namespace qsl
