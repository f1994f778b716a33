#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "dduet/error.hpp"
#include "dduet/field.hpp"
#include "dduet/norms.hpp"

namespace dduet {

/// Time-ordered samples of some state on one local interval.
template <class T>
struct Trajectory {
  std::vector<double> times;
  std::vector<T> states;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  double start() const { return times.front(); }
  double end() const { return times.back(); }

  void push_back(double t, T state) {
    require(times.empty() || t > times.back(), ErrorCode::InvalidArgument,
            "trajectory times must be strictly increasing");
    times.push_back(t);
    states.push_back(std::move(state));
  }
};

// ---------------------------------------------------------------------------
// Free groups
// ---------------------------------------------------------------------------

/// Schrodinger group e^{it Laplacian}: u^(xi) -> e^{-it|xi|^2} u^(xi).
template <PeriodicGrid G>
Field<G> schrodinger_group(const Field<G>& u0, double t) {
  const G& grid = u0.grid();
  Field<G> s = to_spectral(u0);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] *= std::polar(1.0, -t * grid.xi_squared(k));
  return to_physical(s);
}

/// Per-mode evolution matrix of n'' + lambda n = 0 acting on (n, n').
struct ModeRotation {
  double a11, a12, a21, a22;

  static ModeRotation make(double lambda, double t) {
    if (lambda > 0.0) {
      const double w = std::sqrt(lambda);
      const double c = std::cos(w * t), s = std::sin(w * t);
      return {c, s / w, -w * s, c};
    }
    if (lambda < 0.0) {
      const double w = std::sqrt(-lambda);
      const double c = std::cosh(w * t), s = std::sinh(w * t);
      return {c, s / w, w * s, c};
    }
    return {1.0, t, 0.0, 1.0};
  }

  std::pair<cplx, cplx> apply(cplx n, cplx nt) const {
    return {a11 * n + a12 * nt, a21 * n + a22 * nt};
  }
};

/// Klein-Gordon flow for n'' + ab (1 - Laplacian) n = 0. ab = 1 is the group
/// G(t) = cos(t<D>) n0 + sin(t<D>)<D>^{-1} n1; ab < 0 gives the hyperbolic flow.
template <PeriodicGrid G>
WavePair<G> kg_group(const WavePair<G>& p, double t, double alpha_beta = 1.0) {
  const G& grid = p.grid();
  Field<G> n = to_spectral(p.n);
  Field<G> nt = to_spectral(p.nt);
  for (std::size_t k = 0; k < n.size(); ++k) {
    const auto rot = ModeRotation::make(alpha_beta * (1.0 + grid.xi_squared(k)), t);
    std::tie(n[k], nt[k]) = rot.apply(n[k], nt[k]);
  }
  return WavePair<G>(to_physical(n), to_physical(nt));
}

// ---------------------------------------------------------------------------
// Reduced 1d wave components
// ---------------------------------------------------------------------------

/// W+ and W- data at t = 0 plus the persistent forcing n_{1L}/2.
struct ReducedWaveTriple {
  Field<Grid1D> n_plus;   // n0/2 - nu/2
  Field<Grid1D> n_minus;  // n0/2 + nu/2
  Field<Grid1D> n1_low;   // half the low-frequency part of n1
};

/// nu^ = n1H^ / (i xi) on |xi| > 1, zero elsewhere.
inline Field<Grid1D> velocity_potential_high(const Field<Grid1D>& n1) {
  return apply_multiplier(n1, [](double xi) {
    return is_low_frequency(std::abs(xi)) ? cplx(0.0) : cplx(1.0) / cplx(0.0, xi);
  });
}

inline ReducedWaveTriple split_wave_data(const WavePair<Grid1D>& p) {
  const Field<Grid1D> nu = real_part(velocity_potential_high(p.nt));
  return {real_part(0.5 * (p.n - nu)), real_part(0.5 * (p.n + nu)), real_part(0.5 * low_pass(p.nt))};
}

namespace detail {

// sign (1 - e^{-i sign xi t}) / (i xi), with the xi -> 0 limit t: the per-mode
// integral over the characteristic segment.
inline cplx low_forcing_kernel(double xi, double t, int sign) {
  if (xi == 0.0) return cplx(t, 0.0);
  const cplx e = std::polar(1.0, -sign * xi * t);
  return static_cast<double>(sign) * (1.0 - e) / cplx(0.0, xi);
}

}  // namespace detail

/// W_+(t) (sign = +1) or W_-(t) (sign = -1): the component translated along x -/+ t
/// plus the integral of n_{1L}/2 over the characteristic segment.
inline Field<Grid1D> wave_reduced_group(const ReducedWaveTriple& tr, double t, int sign) {
  require(sign == 1 || sign == -1, ErrorCode::InvalidArgument, "sign must be +1 or -1");
  const Grid1D& grid = tr.n_plus.grid();
  Field<Grid1D> base = to_spectral(sign > 0 ? tr.n_plus : tr.n_minus);
  const Field<Grid1D> low = to_spectral(tr.n1_low);
  for (std::size_t k = 0; k < base.size(); ++k) {
    const double xi = grid.wavevector(k);
    base[k] = base[k] * std::polar(1.0, -sign * xi * t) + low[k] * detail::low_forcing_kernel(xi, t, sign);
  }
  return real_part(base);
}

/// Free 1d wave flow built from the reduced components:
/// n = W+ + W-, dn/dt = n_{1L} - d/dx (W+ - W-).
inline WavePair<Grid1D> wave_group(const WavePair<Grid1D>& p, double t) {
  const ReducedWaveTriple tr = split_wave_data(p);
  const Field<Grid1D> wp = wave_reduced_group(tr, t, +1);
  const Field<Grid1D> wm = wave_reduced_group(tr, t, -1);
  return WavePair<Grid1D>(wp + wm, 2.0 * tr.n1_low - to_physical(derivative(wp - wm)));
}

// ---------------------------------------------------------------------------
// Retarded Duhamel operators (trapezoid rule over trajectory snapshots)
// ---------------------------------------------------------------------------

namespace detail {

template <PeriodicGrid G>
struct QuadratureNode {
  double time;
  double weight;
  Field<G> value;  // spectral
};

// Composite trapezoid nodes for int_{t0}^{t} z(t') dt'. A t strictly between
// snapshots adds a final partial panel with z(t) linearly interpolated.
template <PeriodicGrid G>
std::vector<QuadratureNode<G>> trapezoid_nodes(const Trajectory<Field<G>>& z, double t) {
  require(!z.empty(), ErrorCode::EmptyTrajectory, "Duhamel integrand has no snapshots");
  const double t0 = z.start(), t1 = z.end();
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  require(t >= t0 - slack && t <= t1 + slack, ErrorCode::OutOfSpan,
          "time " + std::to_string(t) + " outside trajectory span");
  std::vector<QuadratureNode<G>> nodes;
  if (z.size() == 1 || t <= t0 + slack) return nodes;

  std::size_t last = 0;
  while (last + 1 < z.size() && z.times[last + 1] <= t + slack) ++last;
  for (std::size_t j = 0; j <= last; ++j) {
    double w = 0.0;
    if (j > 0) w += 0.5 * (z.times[j] - z.times[j - 1]);
    if (j < last) w += 0.5 * (z.times[j + 1] - z.times[j]);
    nodes.push_back({z.times[j], w, to_spectral(z.states[j])});
  }
  const double tail = t - z.times[last];
  if (tail > slack && last + 1 < z.size()) {
    const double theta = tail / (z.times[last + 1] - z.times[last]);
    Field<G> zt = (1.0 - theta) * to_spectral(z.states[last]) + theta * to_spectral(z.states[last + 1]);
    nodes.back().weight += 0.5 * tail;
    nodes.push_back({t, 0.5 * tail, std::move(zt)});
  }
  return nodes;
}

}  // namespace detail

/// int_{t0}^{t} U(t - t') z(t') dt'.
template <PeriodicGrid G>
Field<G> schrodinger_duhamel(const Trajectory<Field<G>>& z, double t) {
  require(!z.empty(), ErrorCode::EmptyTrajectory, "Duhamel integrand has no snapshots");
  const G& grid = z.states.front().grid();
  Field<G> acc(grid, Representation::Spectral);
  for (const auto& node : detail::trapezoid_nodes(z, t)) {
    for (std::size_t k = 0; k < acc.size(); ++k)
      acc[k] += node.weight * std::polar(1.0, -(t - node.time) * grid.xi_squared(k)) * node.value[k];
  }
  return to_physical(acc);
}

/// W_{+/-} *_R z (t) = 1/2 int_{t0}^{t} z(t', x -/+ (t - t')) dt'.
inline Field<Grid1D> wave_duhamel_component(const Trajectory<Field<Grid1D>>& z, double t, int sign) {
  require(sign == 1 || sign == -1, ErrorCode::InvalidArgument, "sign must be +1 or -1");
  require(!z.empty(), ErrorCode::EmptyTrajectory, "Duhamel integrand has no snapshots");
  const Grid1D& grid = z.states.front().grid();
  Field<Grid1D> acc(grid, Representation::Spectral);
  for (const auto& node : detail::trapezoid_nodes(z, t)) {
    for (std::size_t k = 0; k < acc.size(); ++k)
      acc[k] += 0.5 * node.weight * std::polar(1.0, -sign * grid.wavevector(k) * (t - node.time)) *
                node.value[k];
  }
  return to_physical(acc);
}

/// Zero-data solution of (d_t^2 - d_x^2) n = d_x z, returned with dn/dt.
/// n = W_- *z - W_+ *z and dn/dt = d_x (W_- *z + W_+ *z).
inline WavePair<Grid1D> wave_duhamel(const Trajectory<Field<Grid1D>>& z, double t) {
  const Field<Grid1D> plus = wave_duhamel_component(z, t, +1);
  const Field<Grid1D> minus = wave_duhamel_component(z, t, -1);
  return WavePair<Grid1D>(minus - plus, to_physical(derivative(minus + plus)));
}

/// Zero-data solution of n'' + ab (1 - Laplacian) n = z, returned with dn/dt.
/// For ab = 1 this is int sin((t-t')<D>)<D>^{-1} z(t') dt'.
template <PeriodicGrid G>
WavePair<G> kg_duhamel(const Trajectory<Field<G>>& z, double t, double alpha_beta = 1.0) {
  require(!z.empty(), ErrorCode::EmptyTrajectory, "Duhamel integrand has no snapshots");
  const G& grid = z.states.front().grid();
  Field<G> n(grid, Representation::Spectral), nt(grid, Representation::Spectral);
  for (const auto& node : detail::trapezoid_nodes(z, t)) {
    for (std::size_t k = 0; k < n.size(); ++k) {
      const auto rot = ModeRotation::make(alpha_beta * (1.0 + grid.xi_squared(k)), t - node.time);
      n[k] += node.weight * rot.a12 * node.value[k];
      nt[k] += node.weight * rot.a22 * node.value[k];
    }
  }
  return WavePair<G>(to_physical(n), to_physical(nt));
}

}  // namespace dduet
