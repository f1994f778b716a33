#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dduet/field.hpp"
#include "dduet/grid.hpp"
#include "dduet/norms.hpp"
#include "test_support.hpp"

using namespace dduet;
using testing_support::max_diff;
using testing_support::smooth_noise;
using testing_support::white_noise;

namespace {

constexpr double kPi = std::numbers::pi;

Field<Grid1D> plane_mode(const Grid1D& g, int m) {
  const double xi = g.dxi() * m;
  return Field<Grid1D>::sample(g, [xi](double x) { return std::polar(1.0, xi * x); });
}

}  // namespace

TEST(Grid, SpacingTimesPointsIsPeriod) {
  const Grid1D g(256, 100.0);
  EXPECT_EQ(g.dx() * g.n, 100.0);
  EXPECT_DOUBLE_EQ(g.wavevector(1), 2.0 * kPi / 100.0);
  EXPECT_EQ(g.wave_index(128), -128);
  EXPECT_EQ(g.wave_index(255), -1);
}

TEST(Grid, FrequenciesSymmetricExceptNyquist) {
  const Grid1D g(64, 7.0);
  for (std::size_t k = 1; k < g.size(); ++k) {
    if (g.is_nyquist(k)) continue;
    EXPECT_DOUBLE_EQ(g.wavevector(k), -g.wavevector(g.size() - k));
  }
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(Grid1D(100, 1.0), Error);
  EXPECT_THROW(Grid1D(64, -1.0), Error);
  EXPECT_THROW(Grid3D({16, 12, 16}, {1.0, 1.0, 1.0}), Error);
}

TEST(Grid3D, FlattenRoundTrip) {
  const Grid3D g({4, 8, 16}, {1.0, 2.0, 3.0});
  for (std::size_t s = 0; s < g.size(); ++s) {
    const auto idx = g.unflatten(s);
    EXPECT_EQ(g.flatten(idx[0], idx[1], idx[2]), s);
  }
  EXPECT_DOUBLE_EQ(g.dx(1) * 8, 2.0);
}

TEST(Transform, FourierModeHasSingleCoefficient) {
  const Grid1D g(64, 2.0 * kPi);
  const auto s = to_spectral(plane_mode(g, 5));
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double expected = g.wave_index(k) == 5 ? g.length : 0.0;
    EXPECT_NEAR(std::abs(s[k]), expected, 1e-12);
  }
}

TEST(Transform, ConstantConcentratesAtZero) {
  const Grid1D g(32, 10.0);
  const auto s = to_spectral(Field<Grid1D>::sample(g, [](double) { return 1.0; }));
  EXPECT_NEAR(s[0].real(), 10.0, 1e-12);
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_NEAR(std::abs(s[k]), 0.0, 1e-12);
}

TEST(Transform, RoundTripRandom) {
  for (int n : {16, 128, 1024}) {
    const Grid1D g(n, 37.0);
    const auto f = white_noise(g, 11 + n);
    const auto back = to_physical(to_spectral(f));
    EXPECT_LE(max_diff(f, back), 10 * std::numeric_limits<double>::epsilon() * n * max_abs(f));
    EXPECT_LE(max_diff(f, back), 1e-12 * max_abs(f));
  }
}

TEST(Transform, RoundTripRandom3D) {
  const Grid3D g({8, 16, 4}, {1.0, 2.0, 3.0});
  const auto f = white_noise(g, 5);
  EXPECT_LE(max_diff(f, to_physical(to_spectral(f))), 1e-12 * max_abs(f));
}

TEST(Transform, ConversionsAreIdempotent) {
  const Grid1D g(16, 1.0);
  const auto f = white_noise(g, 1);
  EXPECT_EQ(to_physical(f).values()[3], f.values()[3]);
  const auto s = to_spectral(f);
  EXPECT_EQ(to_spectral(s).values()[3], s.values()[3]);
}

TEST(Transform, ParsevalOnEveryTestSize) {
  for (int n : {8, 16, 32, 64, 128, 256, 512, 1024}) {
    const Grid1D g(n, 100.0);
    const auto f = white_noise(g, n);
    const auto s = to_spectral(f);
    double physical = 0.0, spectral = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) physical += std::norm(f[j]) * g.dx();
    for (std::size_t k = 0; k < s.size(); ++k) spectral += std::norm(s[k]) * g.dxi() / (2.0 * kPi);
    EXPECT_NEAR(physical, spectral, 1e-12 * physical) << "n=" << n;
  }
  const Grid3D g3({8, 8, 16}, {3.0, 4.0, 5.0});
  const auto f = white_noise(g3, 3);
  double physical = 0.0;
  for (const auto& v : f.values()) physical += std::norm(v) * g3.cell_volume();
  EXPECT_NEAR(std::pow(l2_norm(to_spectral(f)), 2), physical, 1e-12 * physical);
  EXPECT_NEAR(std::pow(sobolev_norm(f, 0.0), 2), physical, 1e-12 * physical);
}

TEST(Multiplier, IdentitySymbol) {
  const Grid1D g(64, 5.0);
  const auto f = white_noise(g, 2);
  EXPECT_LE(max_diff(f, apply_multiplier(f, [](double) { return 1.0; })), 1e-12 * max_abs(f));
}

TEST(Multiplier, DerivativeOfSine) {
  const Grid1D g(64, 2.0 * kPi);
  const auto f = Field<Grid1D>::sample(g, [](double x) { return std::sin(3.0 * x); });
  const auto expected = Field<Grid1D>::sample(g, [](double x) { return 3.0 * std::cos(3.0 * x); });
  EXPECT_LE(max_diff(derivative(f), expected), 1e-12);
}

TEST(Multiplier, DerivativeOfPeriodicAnalytic) {
  const Grid1D g(128, 2.0 * kPi);
  const auto f = Field<Grid1D>::sample(g, [](double x) { return std::exp(std::cos(x)); });
  const auto expected =
      Field<Grid1D>::sample(g, [](double x) { return -std::sin(x) * std::exp(std::cos(x)); });
  EXPECT_LE(max_diff(derivative(f), expected), 1e-12);
}

TEST(Multiplier, LowThenHighIsZero) {
  const Grid1D g(256, 2.0 * kPi);  // |xi| = 1 is a grid mode here
  const auto f = white_noise(g, 4);
  EXPECT_LE(max_abs(to_physical(high_pass(low_pass(f)))), 1e-14);
  const auto split = to_physical(low_pass(f)) + to_physical(high_pass(f));
  EXPECT_LE(max_diff(split, f), 1e-12 * max_abs(f));
  // the |xi| = 1 mode goes to the low part
  const auto mode = plane_mode(g, 1);
  EXPECT_LE(max_diff(low_pass(mode), mode), 1e-12);
  EXPECT_NEAR(a_norm(mode, 2.0), l2_norm(mode), 1e-10 * l2_norm(mode));
}

TEST(Multiplier, NonFiniteSymbolRejected) {
  const Grid1D g(16, 1.0);
  const auto f = white_noise(g, 1);
  try {
    apply_multiplier(f, [](double xi) { return 1.0 / xi; });
    FAIL() << "expected NonFiniteSymbol";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteSymbol);
  }
}

TEST(Multiplier, DealiasedDensityIsRealAndTruncated) {
  const Grid1D g(64, 10.0);
  const auto u = white_noise(g, 9);
  const auto rho = dealiased_density(u);
  EXPECT_EQ(max_imag(rho), 0.0);
  const auto s = to_spectral(rho);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!g.keeps_dealiased(k)) EXPECT_LE(std::abs(s[k]), 1e-14 * max_abs(s));
}

TEST(SobolevNorm, SingleMode) {
  const Grid1D g(64, 9.0);
  const auto f = plane_mode(g, 4);
  const double xi = g.wavevector(4);
  for (double s : {-1.5, -0.5, 0.0, 0.5, 2.0})
    EXPECT_NEAR(std::pow(sobolev_norm(f, s), 2), std::pow(1.0 + xi * xi, s) * g.length,
                1e-12 * std::pow(1.0 + xi * xi, s) * g.length);
}

TEST(SobolevNorm, ZeroOrderIsL2) {
  const Grid1D g(128, 13.0);
  const auto f = white_noise(g, 21);
  EXPECT_NEAR(sobolev_norm(f, 0.0), l2_norm(f), 1e-12 * l2_norm(f));
}

TEST(SobolevNorm, FirstOrderMatchesPhysicalSpace) {
  // Random trigonometric polynomial; f and f' are evaluated pointwise from
  // their coefficients, so the oracle never touches a transform.
  const Grid1D g(128, 11.0);
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal;
  std::vector<std::pair<double, cplx>> terms;
  for (int m = -20; m <= 20; ++m) terms.emplace_back(g.dxi() * m, cplx(normal(rng), normal(rng)));
  auto eval = [&](double x, bool derivative_of) {
    cplx v = 0.0;
    for (const auto& [xi, a] : terms)
      v += (derivative_of ? cplx(0.0, xi) : cplx(1.0)) * a * std::polar(1.0, xi * x);
    return v;
  };
  double f2 = 0.0, df2 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    f2 += std::norm(eval(g.position(j), false)) * g.dx();
    df2 += std::norm(eval(g.position(j), true)) * g.dx();
  }
  const auto f = Field<Grid1D>::sample(g, [&](double x) { return eval(x, false); });
  EXPECT_NEAR(std::pow(sobolev_norm(f, 1.0), 2), f2 + df2, 1e-10 * (f2 + df2));
}

TEST(ANorm, LowFrequencySupportGivesL2) {
  const Grid1D g(64, 40.0);
  const auto f = low_pass(white_noise(g, 3));
  for (double s : {-3.0, -0.5, 0.0, 1.0, 4.0}) EXPECT_NEAR(a_norm(f, s), l2_norm(f), 1e-12 * l2_norm(f));
}

TEST(ANorm, SingleHighMode) {
  const Grid1D g(64, 2.0 * kPi);
  const auto f = plane_mode(g, 7);
  for (double s : {-1.5, -0.5, 0.5, 1.0})
    EXPECT_NEAR(a_norm(f, s), std::pow(7.0, s) * std::sqrt(g.length), 1e-12 * std::pow(7.0, s) * std::sqrt(g.length));
}

TEST(ANorm, EquivalentToSobolevOnRandomFields) {
  const Grid1D g(128, 30.0);
  for (int seed = 0; seed < 100; ++seed) {
    const auto f = smooth_noise(g, 1000 + seed, 0.5);
    for (double s : {-1.5, -0.5, 0.5, 1.0}) {
      const double a = a_norm(f, s), h = sobolev_norm(f, s);
      const double band = std::pow(2.0, std::abs(s) / 2.0);
      EXPECT_LE(a, band * h * (1 + 1e-12));
      EXPECT_GE(a, h / band * (1 - 1e-12));
      if (s <= 0) EXPECT_GE(a, h * (1 - 1e-12));
      if (s >= 0) EXPECT_LE(a, h * (1 + 1e-12));
    }
  }
}

TEST(ANorm, MatchesSobolevOnHighBandUpToExactWeightRatio) {
  const Grid1D g(64, 2.0 * kPi);
  const auto f = high_pass(white_noise(g, 8));
  for (double s : {-1.0, 0.5}) {
    double num = 0.0;  // rebuild the A^s norm from the Sobolev weights
    const auto spec = to_spectral(f);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const double xi2 = g.xi_squared(k);
      if (xi2 == 0.0) continue;
      num += std::pow(1.0 + xi2, s) * std::pow(xi2 / (1.0 + xi2), s) * std::norm(spec[k]);
    }
    EXPECT_NEAR(a_norm(f, s), std::sqrt(num / g.volume()), 1e-12 * a_norm(f, s));
  }
}

TEST(WNorm, ZeroPair) {
  EXPECT_EQ(w_norm(WavePair<Grid1D>::zero(Grid1D(32, 1.0))), 0.0);
}

TEST(WNorm, CosineMode) {
  const Grid1D g(64, 2.0 * kPi);
  const double k = 5.0;
  const WavePair<Grid1D> p(Field<Grid1D>::sample(g, [k](double x) { return std::cos(k * x); }),
                           Field<Grid1D>(g));
  EXPECT_NEAR(w_norm(p), std::sqrt(g.length / (2.0 * k)), 1e-12);
}

TEST(WNorm, TriangleInequality) {
  const Grid1D g(64, 20.0);
  for (int seed = 0; seed < 30; ++seed) {
    const auto a = testing_support::random_pair(g, 3 * seed);
    const auto b = testing_support::random_pair(g, 3 * seed + 1);
    const WavePair<Grid1D> sum(a.n + b.n, a.nt + b.nt);
    EXPECT_LE(w_norm(sum), w_norm(a) + w_norm(b) + 1e-12);
    EXPECT_LE(g_norm(sum), g_norm(a) + g_norm(b) + 1e-12);
  }
}

TEST(GNorm, OneModeCases) {
  const Grid1D g(64, 2.0 * kPi);
  EXPECT_EQ(g_norm(WavePair<Grid1D>::zero(g)), 0.0);
  const auto f = testing_support::smooth_real_noise(g, 12);
  EXPECT_NEAR(g_norm(WavePair<Grid1D>(f, Field<Grid1D>(g))), l2_norm(f), 1e-12 * l2_norm(f));
  // e^{ikx} is complex; the pair stores real parts, so use cos(kx) = two conjugate modes
  const double k = 3.0;
  const WavePair<Grid1D> p(Field<Grid1D>(g), Field<Grid1D>::sample(g, [k](double x) { return std::cos(k * x); }));
  EXPECT_NEAR(g_norm(p), std::sqrt(g.length / 2.0 / (1.0 + k * k)), 1e-12);
  EXPECT_NEAR(sobolev_norm(plane_mode(g, 3), -1.0), std::sqrt(g.length / (1.0 + k * k)), 1e-12);
}

TEST(Norms, PositivelyHomogeneous) {
  const Grid1D g(128, 17.0);
  const auto f = white_noise(g, 31);
  const cplx c(-2.5, 1.25);
  const double ac = std::abs(c);
  EXPECT_NEAR(l2_norm(c * f), ac * l2_norm(f), 1e-12 * ac * l2_norm(f));
  EXPECT_NEAR(sobolev_norm(c * f, -0.7), ac * sobolev_norm(f, -0.7), 1e-12 * ac * sobolev_norm(f, -0.7));
  EXPECT_NEAR(a_norm(c * f, 1.3), ac * a_norm(f, 1.3), 1e-12 * ac * a_norm(f, 1.3));
  EXPECT_NEAR(lr_norm(c * f, 3.3), ac * lr_norm(f, 3.3), 1e-12 * ac * lr_norm(f, 3.3));
  const auto p = testing_support::random_pair(g, 4);
  const WavePair<Grid1D> q(-3.0 * p.n, -3.0 * p.nt);
  EXPECT_NEAR(w_norm(q), 3.0 * w_norm(p), 1e-12 * w_norm(q));
  EXPECT_NEAR(g_norm(q), 3.0 * g_norm(p), 1e-12 * g_norm(q));
}

TEST(SpacetimeNorm, ConstantInTime) {
  const Grid1D g(64, 3.0);
  const auto f = white_noise(g, 6);
  const double T = 2.5;
  std::vector<Snapshot<Grid1D>> snaps;
  for (int i = 0; i <= 10; ++i) snaps.push_back({T * i / 10.0, f});
  for (auto [q, r] : {std::pair{2.0, 2.0}, {10.0 / 3.0, 10.0 / 3.0}, {8.0, 2.4}}) {
    const double A = lr_norm(f, r);
    EXPECT_NEAR(spacetime_norm(snaps, q, r), A * std::pow(T, 1.0 / q), 1e-12 * A);
  }
  EXPECT_NEAR(spacetime_norm(snaps, std::numeric_limits<double>::infinity(), 2.0), l2_norm(f), 1e-14);
}

TEST(SpacetimeNorm, L2L2MatchesDoubleSum) {
  const Grid1D g(32, 4.0);
  std::vector<Snapshot<Grid1D>> snaps;
  const int steps = 8;
  const double dt = 0.125;
  double direct = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const auto f = white_noise(g, 100 + i);
    snaps.push_back({i * dt, f});
    double inner = 0.0;
    for (const auto& v : f.values()) inner += std::norm(v) * g.dx();
    direct += (i == 0 || i == steps ? 0.5 : 1.0) * dt * inner;
  }
  EXPECT_NEAR(spacetime_norm(snaps, 2.0, 2.0), std::sqrt(direct), 1e-12 * std::sqrt(direct));
}

TEST(SpacetimeNorm, SingleSnapshotNeedsInfiniteExponent) {
  const Grid1D g(16, 1.0);
  std::vector<Snapshot<Grid1D>> one{{0.0, white_noise(g, 1)}};
  try {
    spacetime_norm(one, 2.0, 2.0);
    FAIL() << "expected EmptyTrajectory";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyTrajectory);
  }
  EXPECT_THROW(spacetime_norm(std::vector<Snapshot<Grid1D>>{}, 2.0, 2.0), Error);
}
