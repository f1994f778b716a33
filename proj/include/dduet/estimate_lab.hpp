#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dduet/error.hpp"
#include "dduet/fft.hpp"
#include "dduet/grid.hpp"

namespace dduet::lab {

using cplx = std::complex<double>;

/// [lambda]_+ : lambda if positive, eps if zero, 0 if negative.
inline double lambda_plus(double lambda, double eps) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  if (lambda > 0.0) return lambda;
  if (lambda == 0.0) return eps;
  return 0.0;
}

/// Uniform (xi, tau) lattice on [-Xi, Xi) x [-Theta, Theta):
///   xi_i = (i - N_xi/2) dxi, dxi = 2 Xi / N_xi, and likewise for tau.
struct SpaceTimeLattice {
  int n_xi = 16;
  double xi_max = 4.0;
  int n_tau = 16;
  double tau_max = 16.0;

  SpaceTimeLattice() = default;
  SpaceTimeLattice(int nx, double xmax, int nt, double tmax)
      : n_xi(nx), xi_max(xmax), n_tau(nt), tau_max(tmax) {
    require(nx >= 2 && nx % 2 == 0 && nt >= 2 && nt % 2 == 0, ErrorCode::InvalidArgument,
            "lattice point counts must be even and >= 2");
    require(xmax > 0.0 && tmax > 0.0, ErrorCode::InvalidArgument, "lattice extents must be positive");
  }

  /// The sweep lattice for size N: N x N points, Xi = sqrt(N)/2, Theta = N/4 = Xi^2.
  static SpaceTimeLattice square(int n) { return {n, 0.5 * std::sqrt(double(n)), n, 0.25 * n}; }

  double dxi() const { return 2.0 * xi_max / n_xi; }
  double dtau() const { return 2.0 * tau_max / n_tau; }
  double xi(int i) const { return (i - n_xi / 2) * dxi(); }
  double tau(int j) const { return (j - n_tau / 2) * dtau(); }
  std::size_t size() const { return std::size_t(n_xi) * std::size_t(n_tau); }
  std::size_t index(int i, int j) const { return std::size_t(i) * std::size_t(n_tau) + std::size_t(j); }

  friend bool operator==(const SpaceTimeLattice&, const SpaceTimeLattice&) = default;
};

/// Complex values on a lattice, xi-major.
struct LatticeFunction {
  SpaceTimeLattice lattice;
  std::vector<cplx> values;

  LatticeFunction() = default;
  explicit LatticeFunction(const SpaceTimeLattice& l) : lattice(l), values(l.size(), cplx(0.0)) {}
  LatticeFunction(const SpaceTimeLattice& l, std::vector<cplx> v) : lattice(l), values(std::move(v)) {
    require(values.size() == lattice.size(), ErrorCode::DimsMismatch, "lattice value count mismatch");
    for (const auto& z : values)
      require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::InvalidArgument,
              "lattice function has non-finite entries");
  }

  template <class Fn>
  static LatticeFunction sample(const SpaceTimeLattice& l, Fn&& fn) {
    LatticeFunction f(l);
    for (int i = 0; i < l.n_xi; ++i)
      for (int j = 0; j < l.n_tau; ++j) f.values[l.index(i, j)] = cplx(fn(l.xi(i), l.tau(j)));
    return f;
  }

  cplx operator()(int i, int j) const { return values[lattice.index(i, j)]; }

  /// (sum |v|^2 dxi dtau)^{1/2}
  double l2_norm() const {
    double s = 0.0;
    for (const auto& z : values) s += std::norm(z);
    return std::sqrt(s * lattice.dxi() * lattice.dtau());
  }
};

enum class Dispersion { Schrodinger, WavePlus, WaveMinus };

/// Distance to the characteristic: tau + xi^2, tau + xi, tau - xi.
inline double sigma(double xi, double tau, Dispersion d) {
  switch (d) {
    case Dispersion::Schrodinger: return tau + xi * xi;
    case Dispersion::WavePlus: return tau + xi;
    case Dispersion::WaveMinus: return tau - xi;
  }
  return tau;
}

inline double xsb_weight(double xi, double tau, Dispersion d) { return bracket(sigma(xi, tau, d)); }

enum class RangePolicy { Enforce, Override };

/// Exponents on <sigma>, <sigma_1>, <sigma_2> in the trilinear denominators.
struct ExponentTriple {
  double e0 = 1.0 / 3.0;
  double e1 = 1.0 / 3.0;
  double e2 = 1.0 / 3.0;

  /// S and S': <sigma>^b <sigma_1>^{c1} <sigma_2>^{b1}.
  static ExponentTriple schrodinger(double b, double b1, double c1, RangePolicy p = RangePolicy::Enforce) {
    return checked({b, c1, b1}, p);
  }
  /// W: <sigma>^c <sigma_1>^{b1} <sigma_2>^{b1}.
  static ExponentTriple wave(double c, double b1, RangePolicy p = RangePolicy::Enforce) {
    return checked({c, b1, b1}, p);
  }

  /// b + b1 + c1 for S, S'; c + 2 b1 for W. The estimates need this >= 1.
  double sum() const { return e0 + e1 + e2; }

 private:
  static ExponentTriple checked(ExponentTriple t, RangePolicy p) {
    if (p == RangePolicy::Enforce) {
      for (double e : {t.e0, t.e1, t.e2})
        require(e > 0.25 && e < 0.5, ErrorCode::HypothesisViolated,
                "exponent " + std::to_string(e) + " outside (1/4, 1/2)");
    }
    return t;
  }
};

enum class FormKind { S, Sprime, W };
enum class Method { Direct, Fast };

inline const char* to_string(FormKind k) {
  switch (k) {
    case FormKind::S: return "S";
    case FormKind::Sprime: return "Sprime";
    case FormKind::W: return "W";
  }
  return "?";
}

/// xi-weight of each form: <xi>^{1/2}, |xi|^{1/2}, |xi| <xi>^{-1/2}.
inline double form_weight(double xi, FormKind k) {
  switch (k) {
    case FormKind::S: return std::sqrt(bracket(xi));
    case FormKind::Sprime: return std::sqrt(std::abs(xi));
    case FormKind::W: return std::abs(xi) / std::sqrt(bracket(xi));
  }
  return 0.0;
}

namespace detail {

struct Weighted {
  std::vector<cplx> a, b1, b2;
};

// Folds the xi-weight and the three Bourgain denominators into the data.
// v carries the reduced-wave phase tau + xi, v1 and v2 the Schrodinger phase.
inline Weighted weigh(const LatticeFunction& v, const LatticeFunction& v1, const LatticeFunction& v2,
                      const ExponentTriple& e, FormKind kind) {
  const SpaceTimeLattice& l = v.lattice;
  Weighted w{std::vector<cplx>(l.size()), std::vector<cplx>(l.size()), std::vector<cplx>(l.size())};
  for (int i = 0; i < l.n_xi; ++i) {
    const double xi = l.xi(i);
    for (int j = 0; j < l.n_tau; ++j) {
      const double tau = l.tau(j);
      const std::size_t k = l.index(i, j);
      w.a[k] = v.values[k] * form_weight(xi, kind) * std::pow(xsb_weight(xi, tau, Dispersion::WavePlus), -e.e0);
      w.b1[k] = v1.values[k] * std::pow(xsb_weight(xi, tau, Dispersion::Schrodinger), -e.e1);
      w.b2[k] = v2.values[k] * std::pow(xsb_weight(xi, tau, Dispersion::Schrodinger), -e.e2);
    }
  }
  return w;
}

inline cplx direct_sum(const Weighted& w, const SpaceTimeLattice& l) {
  const int nx = l.n_xi, nt = l.n_tau;
  cplx total = 0.0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < nt; ++j) {
      const cplx a = w.a[l.index(i, j)];
      if (a == cplx(0.0)) continue;
      cplx inner = 0.0;
      for (int i2 = 0; i2 < nx; ++i2) {
        const int i1 = i + i2 - nx / 2;
        if (i1 < 0 || i1 >= nx) continue;
        for (int j2 = 0; j2 < nt; ++j2) {
          const int j1 = j + j2 - nt / 2;
          if (j1 < 0 || j1 >= nt) continue;
          inner += w.b1[l.index(i1, j1)] * w.b2[l.index(i2, j2)];
        }
      }
      total += a * inner;
    }
  }
  return total;
}

// C(p) = sum_m b1(p + m - N/2) b2(m) for every lattice point p, by zero-padded
// 2d FFT cross-correlation on a 2N_xi x 2N_tau array.
inline cplx fast_sum(const Weighted& w, const SpaceTimeLattice& l) {
  const int nx = l.n_xi, nt = l.n_tau;
  const int px = 2 * nx, pt = 2 * nt;
  const std::vector<int> dims{px, pt};
  std::vector<cplx> f1(std::size_t(px) * pt, 0.0), f2(std::size_t(px) * pt, 0.0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nt; ++j) {
      f1[std::size_t(i) * pt + j] = w.b1[l.index(i, j)];
      f2[std::size_t(i) * pt + j] = std::conj(w.b2[l.index(i, j)]);
    }
  auto g1 = fft::transform(f1, dims, fft::Direction::Forward);
  const auto g2 = fft::transform(f2, dims, fft::Direction::Forward);
  for (std::size_t k = 0; k < g1.size(); ++k) g1[k] *= std::conj(g2[k]);
  const auto corr = fft::transform(g1, dims, fft::Direction::Backward);
  const double scale = 1.0 / (double(px) * double(pt));

  cplx total = 0.0;
  for (int i = 0; i < nx; ++i) {
    const int sx = ((i - nx / 2) % px + px) % px;
    for (int j = 0; j < nt; ++j) {
      const int st = ((j - nt / 2) % pt + pt) % pt;
      total += w.a[l.index(i, j)] * corr[std::size_t(sx) * pt + st] * scale;
    }
  }
  return total;
}

}  // namespace detail

/// |sum_* v(xi,tau) v1(xi1,tau1) v2(xi2,tau2) w(xi) / (<sigma>^e0 <sigma1>^e1 <sigma2>^e2)| (dxi dtau)^2
/// over lattice points with xi1 = xi + xi2, tau1 = tau + tau2.
inline double trilinear_form(const LatticeFunction& v, const LatticeFunction& v1, const LatticeFunction& v2,
                             const ExponentTriple& exps, FormKind kind, Method method = Method::Fast) {
  require(v.lattice == v1.lattice && v.lattice == v2.lattice, ErrorCode::LatticeMismatch,
          "trilinear form arguments live on different lattices");
  const SpaceTimeLattice& l = v.lattice;
  const auto w = detail::weigh(v, v1, v2, exps, kind);
  const cplx s = method == Method::Direct ? detail::direct_sum(w, l) : detail::fast_sum(w, l);
  const double cell = l.dxi() * l.dtau();
  return std::abs(s) * cell * cell;
}

/// |form| / (|v| |v1| |v2|); zero when any argument vanishes.
inline double form_ratio(const LatticeFunction& v, const LatticeFunction& v1, const LatticeFunction& v2,
                         const ExponentTriple& exps, FormKind kind, Method method = Method::Fast) {
  const double denom = v.l2_norm() * v1.l2_norm() * v2.l2_norm();
  if (denom == 0.0) return 0.0;
  return trilinear_form(v, v1, v2, exps, kind, method) / denom;
}

enum class Family { Gaussian, Characteristic, RandomPhase };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::Characteristic: return "characteristic";
    case Family::RandomPhase: return "random_phase";
  }
  return "?";
}

/// Seeded test functions:
///   Gaussian        unit-width bump centred near the characteristic of `d`,
///   Characteristic  nonnegative amplitudes on <sigma> <= 2 (|sigma| <= sqrt 3),
///   RandomPhase     complex Gaussian entries.
inline LatticeFunction make_test_function(const SpaceTimeLattice& l, Family family, Dispersion d,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  switch (family) {
    case Family::Gaussian: {
      const double xi0 = uniform(rng);
      const double tau0 = -sigma(xi0, 0.0, d) + uniform(rng);
      return LatticeFunction::sample(l, [&](double xi, double tau) {
        return std::exp(-0.5 * (xi - xi0) * (xi - xi0) - 0.125 * (tau - tau0) * (tau - tau0));
      });
    }
    case Family::Characteristic: {
      LatticeFunction f(l);
      for (int i = 0; i < l.n_xi; ++i)
        for (int j = 0; j < l.n_tau; ++j) {
          const double amp = 1.0 + 0.5 * uniform(rng);
          if (std::abs(sigma(l.xi(i), l.tau(j), d)) <= std::sqrt(3.0)) f.values[l.index(i, j)] = amp;
        }
      return f;
    }
    case Family::RandomPhase: {
      std::normal_distribution<double> normal;
      LatticeFunction f(l);
      for (auto& z : f.values) z = cplx(normal(rng), normal(rng));
      return f;
    }
  }
  return LatticeFunction(l);
}

struct SweepConfig {
  FormKind kind = FormKind::S;
  std::vector<ExponentTriple> triples;
  std::vector<int> lattice_sizes{64, 128, 256};
  Family family = Family::Characteristic;
  int samples = 3;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepRow {
  std::size_t triple_index = 0;
  ExponentTriple exps;
  int lattice = 0;
  double ratio = 0.0;   // max over samples of |form| / product of norms
  double growth = std::numeric_limits<double>::quiet_NaN();  // ratio / ratio at the previous lattice
  int side = 0;         // sign of (exponent sum - 1)
};

/// One row per (triple, lattice), ordered by triple then lattice. Cells run on
/// worker threads; results are merged by cell index.
inline std::vector<SweepRow> exponent_sweep(const SweepConfig& cfg) {
  require(!cfg.triples.empty() && !cfg.lattice_sizes.empty(), ErrorCode::InvalidArgument,
          "sweep needs at least one triple and one lattice size");
  require(cfg.samples >= 1, ErrorCode::InvalidArgument, "sweep needs at least one sample");
  const std::size_t nl = cfg.lattice_sizes.size();
  const std::size_t cells = cfg.triples.size() * nl;
  std::vector<SweepRow> rows(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    rows[c].triple_index = c / nl;
    rows[c].exps = cfg.triples[c / nl];
    rows[c].lattice = cfg.lattice_sizes[c % nl];
    const double excess = rows[c].exps.sum() - 1.0;
    rows[c].side = std::abs(excess) <= 1e-12 ? 0 : (excess > 0 ? 1 : -1);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const auto lattice = SpaceTimeLattice::square(rows[c].lattice);
      double best = 0.0;
      for (int s = 0; s < cfg.samples; ++s) {
        const std::uint64_t base = cfg.seed + 3 * std::uint64_t(s);
        const auto v = make_test_function(lattice, cfg.family, Dispersion::WavePlus, base);
        const auto v1 = make_test_function(lattice, cfg.family, Dispersion::Schrodinger, base + 1);
        const auto v2 = make_test_function(lattice, cfg.family, Dispersion::Schrodinger, base + 2);
        best = std::max(best, form_ratio(v, v1, v2, rows[c].exps, cfg.kind));
      }
      rows[c].ratio = best;
    }
  };
  unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, cells));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t c = 0; c < cells; ++c)
    if (c % nl > 0 && rows[c - 1].ratio > 0.0) rows[c].growth = rows[c].ratio / rows[c - 1].ratio;
  return rows;
}

struct Lemma42Result {
  double alpha = 0.0;
  double sup_ratio = 0.0;   // sup_s I(s) <s>^alpha
  double argmax_s = 0.0;
  double tail_bound = 0.0;  // largest analytic bound on the discarded tails
  bool finite = false;
  std::vector<double> ratios;
};

/// I(s) = int <y - s>^{-2a+} <y + s>^{-2a-} dy, integrated adaptively on
/// [-R, R] with R = domain_scale * 16 (max|s| + 1). For |y| > R the integrand is
/// at most (|y| - |s|)^{-2A}, A = a+ + a-, so the tails add at most
/// 2 (R - |s|)^{1-2A} / (2A - 1).
inline double lemma42_integral(double a_plus, double a_minus, double s, double R) {
  auto f = [&](double y) {
    return std::pow(bracket(y - s), -2.0 * a_plus) * std::pow(bracket(y + s), -2.0 * a_minus);
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double as = std::abs(s);
  std::vector<double> cuts{-R, -as, 0.0, as, R};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) total += Quad::integrate(f, cuts[k], cuts[k + 1], 20, 1e-13);
  return total;
}

inline Lemma42Result lemma42_check(double a_plus, double a_minus, std::span<const double> s_values, double eps,
                                   double domain_scale = 1.0) {
  require(0.0 <= a_minus && a_minus <= a_plus && a_plus + a_minus > 0.5, ErrorCode::HypothesisViolated,
          "need 0 <= a- <= a+ and a+ + a- > 1/2");
  require(!s_values.empty() && domain_scale > 0.0, ErrorCode::InvalidArgument, "need s values and a domain");
  Lemma42Result r;
  r.alpha = 2.0 * a_minus - lambda_plus(1.0 - 2.0 * a_plus, eps);
  double s_max = 0.0;
  for (double s : s_values) s_max = std::max(s_max, std::abs(s));
  const double R = domain_scale * 16.0 * (s_max + 1.0);
  const double A = a_plus + a_minus;
  r.tail_bound = 2.0 * std::pow(R - s_max, 1.0 - 2.0 * A) / (2.0 * A - 1.0);
  for (double s : s_values) {
    const double ratio = lemma42_integral(a_plus, a_minus, s, R) * std::pow(bracket(s), r.alpha);
    r.ratios.push_back(ratio);
    if (ratio > r.sup_ratio) {
      r.sup_ratio = ratio;
      r.argmax_s = s;
    }
  }
  r.finite = std::isfinite(r.sup_ratio);
  return r;
}

struct Lemma41Result {
  std::vector<double> convolution;  // f*g on the doubled grid y_m = (m - 2K) dy
  bool nonnegative = false;
  bool even = false;
  bool nonincreasing = false;
  bool pass() const { return nonnegative && even && nonincreasing; }
};

namespace detail {

inline bool is_nonneg_even_nonincreasing(std::span<const double> f, double tol) {
  const std::size_t n = f.size();
  const std::size_t mid = n / 2;
  for (std::size_t k = 0; k < n; ++k) {
    if (f[k] < -tol) return false;
    if (std::abs(f[k] - f[n - 1 - k]) > tol) return false;
    if (k >= mid && k + 1 < n && f[k + 1] > f[k] + tol) return false;
  }
  return true;
}

}  // namespace detail

/// Samples f, g on the symmetric odd grid y_k = (k - K) dy, k = 0..2K. Checks the
/// hypotheses on the samples, then whether the discrete convolution is again
/// nonnegative, even, and nonincreasing on y >= 0, to 1e-10 relative.
inline Lemma41Result lemma41_check(std::span<const double> f, std::span<const double> g, double dy) {
  require(f.size() == g.size() && f.size() % 2 == 1 && f.size() >= 3, ErrorCode::InvalidArgument,
          "samples must share an odd length >= 3");
  require(dy > 0.0, ErrorCode::InvalidArgument, "spacing must be positive");
  auto scale = [](std::span<const double> h) {
    double m = 0.0;
    for (double x : h) m = std::max(m, std::abs(x));
    return m;
  };
  require(detail::is_nonneg_even_nonincreasing(f, 1e-12 * scale(f)) &&
              detail::is_nonneg_even_nonincreasing(g, 1e-12 * scale(g)),
          ErrorCode::PreconditionViolated, "inputs must be nonnegative, even and nonincreasing for y > 0");
  const std::size_t n = f.size();
  Lemma41Result r;
  r.convolution.assign(2 * n - 1, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) r.convolution[a + b] += f[a] * g[b] * dy;
  const double tol = 1e-10 * scale(r.convolution);
  const auto& h = r.convolution;
  r.nonnegative = std::all_of(h.begin(), h.end(), [&](double x) { return x >= -tol; });
  r.even = true;
  for (std::size_t k = 0; k < h.size(); ++k) r.even = r.even && std::abs(h[k] - h[h.size() - 1 - k]) <= tol;
  r.nonincreasing = true;
  for (std::size_t k = h.size() / 2; k + 1 < h.size(); ++k) r.nonincreasing = r.nonincreasing && h[k + 1] <= h[k] + tol;
  return r;
}

}  // namespace dduet::lab
