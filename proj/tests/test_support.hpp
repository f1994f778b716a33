#pragma once

#include <cmath>
#include <random>

#include "dduet/field.hpp"
#include "dduet/grid.hpp"
#include "dduet/norms.hpp"

namespace testing_support {

using dduet::cplx;

/// Gaussian white noise in physical space.
template <dduet::PeriodicGrid G>
dduet::Field<G> white_noise(const G& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  dduet::Field<G> f(grid);
  for (auto& v : f.values()) v = cplx(normal(rng), normal(rng));
  return f;
}

/// Random field with spectrum decaying like <xi>^{-decay}, Nyquist slots zeroed.
template <dduet::PeriodicGrid G>
dduet::Field<G> smooth_noise(const G& grid, std::uint64_t seed, double decay = 2.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  dduet::Field<G> f(grid, dduet::Representation::Spectral);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const cplx z(normal(rng), normal(rng));
    f[k] = grid.is_nyquist(k) ? cplx(0.0) : z * std::pow(1.0 + grid.xi_squared(k), -0.5 * decay) *
                                                 std::sqrt(grid.volume());
  }
  return dduet::to_physical(f);
}

template <dduet::PeriodicGrid G>
dduet::Field<G> smooth_real_noise(const G& grid, std::uint64_t seed, double decay = 2.0) {
  return dduet::real_part(smooth_noise(grid, seed, decay));
}

template <dduet::PeriodicGrid G>
dduet::WavePair<G> random_pair(const G& grid, std::uint64_t seed, double decay = 1.0) {
  return dduet::WavePair<G>(smooth_real_noise(grid, seed, decay),
                            smooth_real_noise(grid, seed + 7919, decay));
}

template <dduet::PeriodicGrid G>
double max_diff(const dduet::Field<G>& a, const dduet::Field<G>& b) {
  const auto pa = dduet::to_physical(a);
  const auto pb = dduet::to_physical(b);
  double m = 0.0;
  for (std::size_t j = 0; j < pa.size(); ++j) m = std::max(m, std::abs(pa[j] - pb[j]));
  return m;
}

template <dduet::PeriodicGrid G>
double l2_diff(const dduet::Field<G>& a, const dduet::Field<G>& b) {
  return dduet::l2_norm(dduet::to_physical(a) - dduet::to_physical(b));
}

}  // namespace testing_support
