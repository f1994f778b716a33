#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "dduet/error.hpp"
#include "dduet/field.hpp"

namespace dduet {

namespace detail {

// sum_k weight(|xi_k|) |f^_k|^2 * prod(dxi/(2 pi)).
template <PeriodicGrid G, class Weight>
double weighted_spectral_sum(const Field<G>& f, Weight&& weight) {
  const Field<G> s = to_spectral(f);
  const G& grid = f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double m2 = std::norm(s[k]);
    if (m2 == 0.0) continue;
    sum += weight(grid.xi_abs(k)) * m2;
  }
  return sum / grid.volume();
}

}  // namespace detail

/// (sum |f_j|^2 cell_volume)^{1/2}.
template <PeriodicGrid G>
double l2_norm(const Field<G>& f) {
  const Field<G> p = to_physical(f);
  double sum = 0.0;
  for (const auto& v : p.values()) sum += std::norm(v);
  return std::sqrt(sum * f.grid().cell_volume());
}

/// L^r norm by the rectangle rule; r = infinity gives the max modulus.
template <PeriodicGrid G>
double lr_norm(const Field<G>& f, double r) {
  require(r >= 1.0, ErrorCode::InvalidArgument, "L^r exponent must be >= 1");
  const Field<G> p = to_physical(f);
  if (std::isinf(r)) return max_abs(p);
  double sum = 0.0;
  for (const auto& v : p.values()) sum += std::pow(std::abs(v), r);
  return std::pow(sum * f.grid().cell_volume(), 1.0 / r);
}

/// ||f||_{H^s} = (int <xi>^{2s} |f^|^2 dxi/(2 pi))^{1/2}.
template <PeriodicGrid G>
double sobolev_norm(const Field<G>& f, double s) {
  return std::sqrt(
      detail::weighted_spectral_sum(f, [s](double a) { return std::pow(1.0 + a * a, s); }));
}

/// Flat weight on |xi| <= 1 and |xi|^{2s} above.
template <PeriodicGrid G>
double a_norm(const Field<G>& f, double s) {
  return std::sqrt(detail::weighted_spectral_sum(
      f, [s](double a) { return is_low_frequency(a) ? 1.0 : std::pow(a, 2.0 * s); }));
}

/// Wave-pair norm (||n||_{A^{-1/2}}^2 + ||n_t||_{A^{-3/2}}^2)^{1/2}.
template <PeriodicGrid G>
double w_norm(const WavePair<G>& p) {
  return std::hypot(a_norm(p.n, -0.5), a_norm(p.nt, -1.5));
}

/// Klein-Gordon pair norm (||n||_{L^2}^2 + ||n_t||_{H^{-1}}^2)^{1/2}.
template <PeriodicGrid G>
double g_norm(const WavePair<G>& p) {
  return std::hypot(sobolev_norm(p.n, 0.0), sobolev_norm(p.nt, -1.0));
}

template <PeriodicGrid G>
struct Snapshot {
  double time;
  Field<G> field;
};

/// L^q_t L^r_x over time-ordered snapshots: composite trapezoid in t of
/// ||f(t)||_{L^r}^q, then the q-th root. q = infinity takes the max.
template <PeriodicGrid G>
double spacetime_norm(const std::vector<Snapshot<G>>& snapshots, double q, double r) {
  require(!snapshots.empty(), ErrorCode::EmptyTrajectory, "no snapshots");
  require(q >= 1.0, ErrorCode::InvalidArgument, "time exponent must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& s : snapshots) m = std::max(m, lr_norm(s.field, r));
    return m;
  }
  require(snapshots.size() >= 2, ErrorCode::EmptyTrajectory,
          "finite time exponent needs at least two snapshots");
  double integral = 0.0;
  double prev = std::pow(lr_norm(snapshots.front().field, r), q);
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    const double dt = snapshots[i].time - snapshots[i - 1].time;
    require(dt > 0.0, ErrorCode::InvalidArgument, "snapshot times must increase");
    const double cur = std::pow(lr_norm(snapshots[i].field, r), q);
    integral += 0.5 * dt * (prev + cur);
    prev = cur;
  }
  return std::pow(integral, 1.0 / q);
}

}  // namespace dduet
