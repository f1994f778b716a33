#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dduet/error.hpp"
#include "dduet/field.hpp"
#include "dduet/norms.hpp"
#include "dduet/picard.hpp"
#include "dduet/propagators.hpp"

namespace dduet::zakharov {

/// (u, n, dn/dt) at one time on a 1d grid.
struct ZakharovState {
  double time = 0.0;
  Field<Grid1D> u;
  WavePair<Grid1D> wave;

  ZakharovState() = default;
  ZakharovState(double t, Field<Grid1D> u_in, WavePair<Grid1D> w)
      : time(t), u(to_physical(u_in)), wave(std::move(w)) {
    require(u.grid() == wave.grid(), ErrorCode::DimsMismatch, "u and n live on different grids");
  }

  const Grid1D& grid() const { return u.grid(); }
};

/// Coupling sign s in i u_t + u_xx = s n u. s = -1 is the Hamiltonian
/// variant with alpha = beta = gamma = -1; the wave equation is unchanged.
struct Model {
  double coupling_sign = 1.0;
};

/// M[u] = int |u|^2 dx.
inline double mass(const Field<Grid1D>& u) {
  const double l2 = l2_norm(u);
  return l2 * l2;
}

/// int (|u_x|^2 + s (n^2/2 + nu^2/2 + n |u|^2)) dx with nu_x = dn/dt, nu^(0) = 0.
inline double hamiltonian(const ZakharovState& s, const Model& model = {}) {
  const Grid1D& g = s.grid();
  const Field<Grid1D> nt = to_physical(s.wave.nt);
  double mean = 0.0;
  for (const auto& v : nt.values()) mean += v.real();
  mean /= static_cast<double>(nt.size());
  const double scale = std::max(1.0, max_abs(nt));
  require(std::abs(mean) <= 1e-12 * scale, ErrorCode::NonzeroMeanVelocity,
          "dn/dt has nonzero mean " + std::to_string(mean));

  const Field<Grid1D> nu = apply_multiplier(nt, [](double xi) {
    return xi == 0.0 ? cplx(0.0) : cplx(1.0) / cplx(0.0, xi);
  });
  const Field<Grid1D> u = to_physical(s.u);
  const Field<Grid1D> n = to_physical(s.wave.n);
  double cubic = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) cubic += n[j].real() * std::norm(u[j]);
  cubic *= g.dx();
  const double kinetic = std::pow(l2_norm(derivative(u)), 2);
  const double quadratic = 0.5 * std::pow(l2_norm(n), 2) + 0.5 * std::pow(l2_norm(nu), 2);
  return kinetic + model.coupling_sign * (quadratic + cubic);
}

/// Picard iteration of the reduced integral equations on [t0, t0 + T]:
///   u   = U(t) u0 - i U *_R [s n u]
///   n+  = W+(t)(n0, n1) - W+ *_R (d_x |u|^2)
///   n-  = W-(t)(n0, n1) + W- *_R (d_x |u|^2)
/// with n = n+ + n-, both products dealiased, and the Duhamel integrals taken by
/// the trapezoid rule on M uniform substeps.
inline LocalSolution<ZakharovState> local_solve(const ZakharovState& s0, double T,
                                                const PicardParams& p = {}, const Model& model = {}) {
  p.validate();
  require(T > 0.0 && std::isfinite(T), ErrorCode::InvalidArgument, "local step must be positive");
  const Grid1D& g = s0.grid();
  const std::size_t N = g.size();
  const int M = p.substeps;
  const double h = T / M;
  using Coeffs = std::vector<cplx>;

  const Field<Grid1D> u0 = to_spectral(s0.u);
  const ReducedWaveTriple tr = split_wave_data(s0.wave);
  const Field<Grid1D> plus0 = to_spectral(tr.n_plus), minus0 = to_spectral(tr.n_minus);
  const Field<Grid1D> low = to_spectral(tr.n1_low);

  Coeffs step_s(N), step_p(N), step_m(N);
  for (std::size_t k = 0; k < N; ++k) {
    step_s[k] = std::polar(1.0, -h * g.xi_squared(k));
    step_p[k] = std::polar(1.0, -h * g.wavevector(k));
    step_m[k] = std::conj(step_p[k]);
  }

  // Free flows at every substep; also the first iterate.
  std::vector<Coeffs> u_free(M + 1, Coeffs(N)), p_free(M + 1, Coeffs(N)), m_free(M + 1, Coeffs(N));
  for (int m = 0; m <= M; ++m) {
    const double t = m * h;
    for (std::size_t k = 0; k < N; ++k) {
      const double xi = g.wavevector(k);
      u_free[m][k] = u0[k] * std::polar(1.0, -t * g.xi_squared(k));
      p_free[m][k] = plus0[k] * std::polar(1.0, -xi * t) + low[k] * detail::low_forcing_kernel(xi, t, +1);
      m_free[m][k] = minus0[k] * std::polar(1.0, xi * t) + low[k] * detail::low_forcing_kernel(xi, t, -1);
    }
  }
  std::vector<Coeffs> u_it = u_free, p_it = p_free, m_it = m_free;

  std::vector<Coeffs> forcing_u(M + 1, Coeffs(N)), forcing_n(M + 1, Coeffs(N));
  detail::ContractionMonitor monitor(p);
  LocalSolution<ZakharovState> out;
  while (true) {
    for (int m = 0; m <= M; ++m) {
      Field<Grid1D> us(g, u_it[m], Representation::Spectral);
      Field<Grid1D> ns(g, Representation::Spectral);
      for (std::size_t k = 0; k < N; ++k) ns[k] = p_it[m][k] + m_it[m][k];
      const Field<Grid1D> up = to_physical(dealias(us));
      const Field<Grid1D> np = to_physical(dealias(ns));
      Field<Grid1D> prod(g), dens(g);
      for (std::size_t j = 0; j < N; ++j) {
        prod[j] = model.coupling_sign * np[j].real() * up[j];
        dens[j] = std::norm(up[j]);
      }
      const Field<Grid1D> zs = dealias(prod), rs = dealias(dens);
      for (std::size_t k = 0; k < N; ++k) {
        forcing_u[m][k] = zs[k];
        forcing_n[m][k] = cplx(0.0, g.wavevector(k)) * rs[k];
      }
    }

    double du2 = 0.0, u2 = 0.0, dn2 = 0.0, n2 = 0.0;
    Coeffs acc_u(N, 0.0), acc_p(N, 0.0), acc_m(N, 0.0);
    for (int m = 0; m <= M; ++m) {
      Coeffs next_u = u_free[m], next_p = p_free[m], next_m = m_free[m];
      if (m > 0) {
        for (std::size_t k = 0; k < N; ++k) {
          acc_u[k] = step_s[k] * (acc_u[k] + 0.5 * h * forcing_u[m - 1][k]) + 0.5 * h * forcing_u[m][k];
          acc_p[k] = step_p[k] * (acc_p[k] + 0.5 * h * forcing_n[m - 1][k]) + 0.5 * h * forcing_n[m][k];
          acc_m[k] = step_m[k] * (acc_m[k] + 0.5 * h * forcing_n[m - 1][k]) + 0.5 * h * forcing_n[m][k];
          next_u[k] -= cplx(0.0, 1.0) * acc_u[k];
          next_p[k] -= 0.5 * acc_p[k];
          next_m[k] += 0.5 * acc_m[k];
        }
      }
      detail::accumulate_change(next_u, u_it[m], du2, u2);
      Coeffs n_new(N), n_old(N);
      for (std::size_t k = 0; k < N; ++k) {
        n_new[k] = next_p[k] + next_m[k];
        n_old[k] = p_it[m][k] + m_it[m][k];
      }
      detail::accumulate_change(n_new, n_old, dn2, n2);
      u_it[m] = std::move(next_u);
      p_it[m] = std::move(next_p);
      m_it[m] = std::move(next_m);
    }
    const double increment =
        std::max(detail::relative_change(du2, u2), detail::relative_change(dn2, n2));
    if (monitor.record(increment)) break;
  }

  out.iterations = static_cast<int>(monitor.history().size());
  out.increments = monitor.history();
  for (int m = 0; m <= M; ++m) {
    const double t = m == M ? s0.time + T : s0.time + m * h;
    Field<Grid1D> np(g, Representation::Spectral), diff(g, Representation::Spectral);
    for (std::size_t k = 0; k < N; ++k) {
      np[k] = p_it[m][k] + m_it[m][k];
      diff[k] = p_it[m][k] - m_it[m][k];
    }
    const Field<Grid1D> nt = 2.0 * tr.n1_low - to_physical(derivative(diff));
    out.trajectory.push_back(
        t, ZakharovState(t, Field<Grid1D>(g, u_it[m], Representation::Spectral), WavePair<Grid1D>(np, nt)));
  }
  return out;
}

/// Moving soliton with width 1/eta and speed c (|c| < 1), centred at x0 at t = 0.
/// Exact solution of the focusing system (coupling sign +1):
///   u = eta sqrt(2(1-c^2)) sech(eta(x - x0 - ct)) e^{i(cx/2 + (eta^2 - c^2/4)t)},
///   n = -|u|^2/(1 - c^2).
inline ZakharovState soliton_at(double eta, double c, double x0, const Grid1D& grid, double t) {
  require(eta > 0.0, ErrorCode::InvalidArgument, "soliton eta must be positive");
  require(std::abs(c) < 1.0, ErrorCode::InvalidArgument, "soliton speed must satisfy |c| < 1");
  require(eta * grid.dx() <= 0.2, ErrorCode::UnresolvedSoliton,
          "soliton width is not resolved: eta*dx = " + std::to_string(eta * grid.dx()));
  const double a = eta * std::sqrt(2.0 * (1.0 - c * c));
  const double centre = x0 + c * t;
  const double L = grid.length;
  const double edge = std::min(centre, L - centre);
  require(edge > 0.0 && a / std::cosh(eta * edge) <= 1e-12, ErrorCode::UnresolvedSoliton,
          "soliton tails do not decay below 1e-12 inside the period");
  const double omega = eta * eta - 0.25 * c * c;
  auto shifted = [&](double x) { return x - centre; };
  Field<Grid1D> u = Field<Grid1D>::sample(grid, [&](double x) {
    return a / std::cosh(eta * shifted(x)) * std::polar(1.0, 0.5 * c * x + omega * t);
  });
  Field<Grid1D> n = Field<Grid1D>::sample(grid, [&](double x) {
    const double s = 1.0 / std::cosh(eta * shifted(x));
    return -a * a * s * s / (1.0 - c * c);
  });
  // d/dx |u|^2 = -2 a^2 eta sech^2 tanh
  Field<Grid1D> nt = Field<Grid1D>::sample(grid, [&](double x) {
    const double y = eta * shifted(x);
    const double s = 1.0 / std::cosh(y);
    return c * (-2.0 * a * a * eta * s * s * std::tanh(y)) / (1.0 - c * c);
  });
  return ZakharovState(t, std::move(u), WavePair<Grid1D>(std::move(n), std::move(nt)));
}

inline ZakharovState soliton(double eta, double c, double x0, const Grid1D& grid) {
  return soliton_at(eta, c, x0, grid, 0.0);
}

/// Seeded rough data near the L^2 x H^{-1/2} x H^{-3/2} threshold.
struct RoughDataParams {
  double epsilon = 0.01;
  double u_mass = 1.0;  // target int |u0|^2
  double w_norm = 1.0;  // target ||(n0, n1)||_W
};

namespace rough_detail {

// Coefficients |xi|^{-s-1/2} (1 + |xi|)^{-eps} e^{i theta}, zero at xi = 0 and Nyquist.
inline Field<Grid1D> rough_field(const Grid1D& g, double s, double eps, std::mt19937_64& rng,
                                 bool real_valued) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Field<Grid1D> f(g, Representation::Spectral);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double a = g.xi_abs(k);
    const double theta = phase(rng);
    if (a == 0.0 || g.is_nyquist(k)) continue;
    f[k] = std::pow(a, -s - 0.5) * std::pow(1.0 + a, -eps) * std::polar(1.0, theta);
  }
  return real_valued ? real_part(f) : to_physical(f);
}

}  // namespace rough_detail

inline ZakharovState rough_data(const Grid1D& grid, std::uint64_t seed, const RoughDataParams& p = {}) {
  std::mt19937_64 rng(seed);
  Field<Grid1D> u = rough_detail::rough_field(grid, 0.0, p.epsilon, rng, false);
  Field<Grid1D> n0 = rough_detail::rough_field(grid, -0.5, p.epsilon, rng, true);
  Field<Grid1D> n1 = rough_detail::rough_field(grid, -1.5, p.epsilon, rng, true);
  u *= std::sqrt(p.u_mass / mass(u));
  WavePair<Grid1D> w(n0, n1);
  const double scale = p.w_norm / w_norm(w);
  return ZakharovState(0.0, std::move(u), WavePair<Grid1D>(scale * w.n, scale * w.nt));
}

}  // namespace dduet::zakharov
