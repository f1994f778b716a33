#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "dduet/error.hpp"
#include "dduet/field.hpp"
#include "dduet/norms.hpp"
#include "dduet/picard.hpp"
#include "dduet/propagators.hpp"

namespace dduet::kgs {

/// alpha, beta, gamma in
///   i u_t + Laplacian u = -gamma n u,   n_tt + alpha beta (1 - Laplacian) n = -beta gamma |u|^2.
struct Couplings {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;

  friend bool operator==(const Couplings&, const Couplings&) = default;
};

struct KGSState {
  double time = 0.0;
  Field<Grid3D> u;
  WavePair<Grid3D> wave;
  Couplings couplings;

  KGSState() = default;
  KGSState(double t, Field<Grid3D> u_in, WavePair<Grid3D> w, Couplings c)
      : time(t), u(to_physical(u_in)), wave(std::move(w)), couplings(c) {
    require(u.grid() == wave.grid(), ErrorCode::DimsMismatch, "u and n live on different grids");
  }

  const Grid3D& grid() const { return u.grid(); }
};

inline double mass(const Field<Grid3D>& u) {
  const double l2 = l2_norm(u);
  return l2 * l2;
}

/// The four integrals entering both energy functionals.
struct EnergyTerms {
  double gradient;      // int |grad u|^2
  double velocity;      // int |n_t|^2
  double klein_gordon;  // int |<grad> n|^2
  double coupling;      // int n |u|^2
};

inline EnergyTerms energy_terms(const KGSState& s) {
  const Field<Grid3D> u = to_physical(s.u), n = to_physical(s.wave.n);
  double coupling = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) coupling += n[j].real() * std::norm(u[j]);
  const double gradient = dduet::detail::weighted_spectral_sum(s.u, [](double a) { return a * a; });
  return {gradient, std::pow(l2_norm(s.wave.nt), 2), std::pow(sobolev_norm(s.wave.n, 1.0), 2),
          coupling * s.grid().cell_volume()};
}

/// int |grad u|^2 + |n_t|^2/(2 beta) + (alpha/2)|<grad> n|^2 + gamma n |u|^2.
inline double hamiltonian(const KGSState& s) {
  const Couplings& c = s.couplings;
  require(c.beta != 0.0, ErrorCode::ZeroBeta, "Hamiltonian needs beta != 0");
  const EnergyTerms e = energy_terms(s);
  return e.gradient + e.velocity / (2.0 * c.beta) + 0.5 * c.alpha * e.klein_gordon + c.gamma * e.coupling;
}

/// The invariant of the evolution equations as written:
/// int |grad u|^2 - gamma n |u|^2 - |n_t|^2/(2 beta) - (alpha/2)|<grad> n|^2.
inline double conserved_energy(const KGSState& s) {
  const Couplings& c = s.couplings;
  require(c.beta != 0.0, ErrorCode::ZeroBeta, "energy needs beta != 0");
  const EnergyTerms e = energy_terms(s);
  return e.gradient - c.gamma * e.coupling - e.velocity / (2.0 * c.beta) - 0.5 * c.alpha * e.klein_gordon;
}

/// Picard iteration on [t0, t0 + T] of
///   u = U(t) u0 + i U *_R [gamma n u],
///   (n, n_t) = K(t)(n0, n1) + K *_R [-beta gamma |u|^2],
/// where K is the per-mode flow of n'' + alpha beta <xi>^2 n = 0.
inline LocalSolution<KGSState> local_solve(const KGSState& s0, double T, const PicardParams& p = {}) {
  p.validate();
  require(T > 0.0 && std::isfinite(T), ErrorCode::InvalidArgument, "local step must be positive");
  const Grid3D& g = s0.grid();
  const Couplings c = s0.couplings;
  const std::size_t N = g.size();
  const int M = p.substeps;
  const double h = T / M;
  const double ab = c.alpha * c.beta;
  using Coeffs = std::vector<cplx>;

  const Field<Grid3D> u0 = to_spectral(s0.u);
  const Field<Grid3D> n0 = to_spectral(s0.wave.n), n1 = to_spectral(s0.wave.nt);

  Coeffs step_s(N);
  std::vector<ModeRotation> step_w(N);
  for (std::size_t k = 0; k < N; ++k) {
    step_s[k] = std::polar(1.0, -h * g.xi_squared(k));
    step_w[k] = ModeRotation::make(ab * (1.0 + g.xi_squared(k)), h);
  }

  std::vector<Coeffs> u_free(M + 1, Coeffs(N)), n_free(M + 1, Coeffs(N)), nt_free(M + 1, Coeffs(N));
  for (int m = 0; m <= M; ++m) {
    const double t = m * h;
    for (std::size_t k = 0; k < N; ++k) {
      u_free[m][k] = u0[k] * std::polar(1.0, -t * g.xi_squared(k));
      const auto rot = ModeRotation::make(ab * (1.0 + g.xi_squared(k)), t);
      std::tie(n_free[m][k], nt_free[m][k]) = rot.apply(n0[k], n1[k]);
    }
  }
  std::vector<Coeffs> u_it = u_free, n_it = n_free, nt_it = nt_free;

  std::vector<Coeffs> forcing_u(M + 1, Coeffs(N)), forcing_n(M + 1, Coeffs(N));
  dduet::detail::ContractionMonitor monitor(p);
  const cplx I(0.0, 1.0);
  while (true) {
    for (int m = 0; m <= M; ++m) {
      const Field<Grid3D> up = to_physical(dealias(Field<Grid3D>(g, u_it[m], Representation::Spectral)));
      const Field<Grid3D> np = to_physical(dealias(Field<Grid3D>(g, n_it[m], Representation::Spectral)));
      Field<Grid3D> prod(g), dens(g);
      for (std::size_t j = 0; j < N; ++j) {
        prod[j] = c.gamma * np[j].real() * up[j];
        dens[j] = -c.beta * c.gamma * std::norm(up[j]);
      }
      const Field<Grid3D> zs = dealias(prod), fs = dealias(dens);
      std::copy(zs.values().begin(), zs.values().end(), forcing_u[m].begin());
      std::copy(fs.values().begin(), fs.values().end(), forcing_n[m].begin());
    }

    double du2 = 0.0, u2 = 0.0, dn2 = 0.0, n2 = 0.0;
    Coeffs acc_u(N, 0.0), acc_n(N, 0.0), acc_nt(N, 0.0);
    for (int m = 0; m <= M; ++m) {
      Coeffs next_u = u_free[m], next_n = n_free[m], next_nt = nt_free[m];
      if (m > 0) {
        for (std::size_t k = 0; k < N; ++k) {
          acc_u[k] = step_s[k] * (acc_u[k] + 0.5 * h * forcing_u[m - 1][k]) + 0.5 * h * forcing_u[m][k];
          std::tie(acc_n[k], acc_nt[k]) = step_w[k].apply(acc_n[k], acc_nt[k] + 0.5 * h * forcing_n[m - 1][k]);
          acc_nt[k] += 0.5 * h * forcing_n[m][k];
          next_u[k] += I * acc_u[k];
          next_n[k] += acc_n[k];
          next_nt[k] += acc_nt[k];
        }
      }
      dduet::detail::accumulate_change(next_u, u_it[m], du2, u2);
      dduet::detail::accumulate_change(next_n, n_it[m], dn2, n2);
      u_it[m] = std::move(next_u);
      n_it[m] = std::move(next_n);
      nt_it[m] = std::move(next_nt);
    }
    const double increment = std::max(dduet::detail::relative_change(du2, u2),
                                      dduet::detail::relative_change(dn2, n2));
    if (monitor.record(increment)) break;
  }

  LocalSolution<KGSState> out;
  out.iterations = static_cast<int>(monitor.history().size());
  out.increments = monitor.history();
  for (int m = 0; m <= M; ++m) {
    const double t = m == M ? s0.time + T : s0.time + m * h;
    out.trajectory.push_back(
        t, KGSState(t, Field<Grid3D>(g, u_it[m], Representation::Spectral),
                    WavePair<Grid3D>(Field<Grid3D>(g, n_it[m], Representation::Spectral),
                                     Field<Grid3D>(g, nt_it[m], Representation::Spectral)),
                    c));
  }
  return out;
}

/// u = A e^{i k.x} with k an integer wave-index vector, n = -gamma A^2/alpha, n_t = 0.
/// Exact solution u(t) = A e^{i(k.x - omega t)}.
inline KGSState plane_wave(double amplitude, std::array<int, 3> k, const Grid3D& grid, Couplings c) {
  require(c.alpha != 0.0, ErrorCode::DegenerateCouplings, "plane wave needs alpha != 0");
  for (int a = 0; a < 3; ++a)
    require(std::abs(k[a]) < grid.n[a] / 2, ErrorCode::InvalidArgument, "wave index outside the grid");
  const std::array<double, 3> xi{grid.dxi(0) * k[0], grid.dxi(1) * k[1], grid.dxi(2) * k[2]};
  auto u = Field<Grid3D>::sample(grid, [&](const std::array<double, 3>& x) {
    return amplitude * std::polar(1.0, xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2]);
  });
  const double level = -c.gamma * amplitude * amplitude / c.alpha;
  auto n = Field<Grid3D>::sample(grid, [level](const std::array<double, 3>&) { return level; });
  return KGSState(0.0, std::move(u), WavePair<Grid3D>(std::move(n), Field<Grid3D>(grid)), c);
}

/// omega = |xi|^2 + gamma^2 A^2 / alpha for the plane wave above.
inline double plane_wave_frequency(double amplitude, std::array<int, 3> k, const Grid3D& grid, Couplings c) {
  double xi2 = 0.0;
  for (int a = 0; a < 3; ++a) xi2 += std::pow(grid.dxi(a) * k[a], 2);
  return xi2 + c.gamma * c.gamma * amplitude * amplitude / c.alpha;
}

/// Least-squares slope of the unwrapped phase of samples z(t) ~ e^{-i omega t};
/// returns omega.
inline double fit_frequency(const std::vector<double>& times, const std::vector<cplx>& samples) {
  require(times.size() == samples.size() && times.size() >= 2, ErrorCode::InvalidArgument,
          "frequency fit needs at least two samples");
  std::vector<double> phase(samples.size());
  phase[0] = std::arg(samples[0]);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    double d = std::arg(samples[i]) - std::arg(samples[i - 1]);
    d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
    phase[i] = phase[i - 1] + d;
  }
  double tm = 0.0, pm = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    tm += times[i];
    pm += phase[i];
  }
  tm /= times.size();
  pm /= times.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    num += (times[i] - tm) * (phase[i] - pm);
    den += (times[i] - tm) * (times[i] - tm);
  }
  return -num / den;
}

struct StrichartzReport {
  double l10_3;             // ||u||_{L^{10/3}_t L^{10/3}_x}
  double l8_l12_5;          // ||u||_{L^8_t L^{12/5}_x}
  double linf_l2;           // ||u||_{L^inf_t L^2_x}
  double density_l1_hm1;    // || |u|^2 ||_{L^1_t H^{-1}_x}
  double embedding_constant;  // density_l1_hm1 / (T^{3/4} ||u||_{L^8 L^{12/5}}^2)
};

inline StrichartzReport strichartz_report(const Trajectory<KGSState>& tr) {
  require(!tr.empty(), ErrorCode::EmptyTrajectory, "no snapshots");
  std::vector<Snapshot<Grid3D>> snaps;
  snaps.reserve(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) snaps.push_back({tr.times[i], tr.states[i].u});
  const double inf = std::numeric_limits<double>::infinity();
  StrichartzReport r{};
  r.linf_l2 = spacetime_norm(snaps, inf, 2.0);
  if (tr.size() < 2) {
    r.l10_3 = r.l8_l12_5 = r.density_l1_hm1 = 0.0;
    r.embedding_constant = 0.0;
    return r;
  }
  r.l10_3 = spacetime_norm(snaps, 10.0 / 3.0, 10.0 / 3.0);
  r.l8_l12_5 = spacetime_norm(snaps, 8.0, 12.0 / 5.0);
  std::vector<double> density(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const Field<Grid3D> u = to_physical(tr.states[i].u);
    Field<Grid3D> rho(u.grid());
    for (std::size_t j = 0; j < u.size(); ++j) rho[j] = std::norm(u[j]);
    density[i] = sobolev_norm(rho, -1.0);
  }
  for (std::size_t i = 1; i < tr.size(); ++i)
    r.density_l1_hm1 += 0.5 * (tr.times[i] - tr.times[i - 1]) * (density[i] + density[i - 1]);
  const double T = tr.end() - tr.start();
  const double denom = std::pow(T, 0.75) * r.l8_l12_5 * r.l8_l12_5;
  r.embedding_constant = denom > 0.0 ? r.density_l1_hm1 / denom : 0.0;
  return r;
}

/// Seeded rough data near the L^2 x L^2 x H^{-1} threshold.
struct RoughDataParams {
  double epsilon = 0.01;
  double u_mass = 1.0;  // target int |u0|^2
  double g_norm = 1.0;  // target ||(n0, n1)||_G
};

namespace rough_detail {

// Coefficients |xi|^{-s-3/2} (1 + |xi|)^{-eps} e^{i theta}, zero at xi = 0 and on Nyquist planes.
inline Field<Grid3D> rough_field(const Grid3D& g, double s, double eps, std::mt19937_64& rng,
                                 bool real_valued) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Field<Grid3D> f(g, Representation::Spectral);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double a = g.xi_abs(k);
    const double theta = phase(rng);
    if (a == 0.0 || g.is_nyquist(k)) continue;
    f[k] = std::pow(a, -s - 1.5) * std::pow(1.0 + a, -eps) * std::polar(1.0, theta);
  }
  return real_valued ? real_part(f) : to_physical(f);
}

}  // namespace rough_detail

inline KGSState rough_data(const Grid3D& grid, std::uint64_t seed, Couplings c = {},
                           const RoughDataParams& p = {}) {
  std::mt19937_64 rng(seed);
  Field<Grid3D> u = rough_detail::rough_field(grid, 0.0, p.epsilon, rng, false);
  Field<Grid3D> n0 = rough_detail::rough_field(grid, 0.0, p.epsilon, rng, true);
  Field<Grid3D> n1 = rough_detail::rough_field(grid, -1.0, p.epsilon, rng, true);
  u *= std::sqrt(p.u_mass / mass(u));
  WavePair<Grid3D> w(n0, n1);
  const double scale = p.g_norm / g_norm(w);
  return KGSState(0.0, std::move(u), WavePair<Grid3D>(scale * w.n, scale * w.nt), c);
}

}  // namespace dduet::kgs
