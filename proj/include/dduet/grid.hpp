#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "dduet/error.hpp"

namespace dduet {

namespace detail {

constexpr bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Signed wave index of an FFT-ordered slot; the Nyquist slot maps to -n/2.
constexpr int signed_index(int slot, int n) { return slot < n / 2 ? slot : slot - n; }

inline void validate_axis(int n, double length, const char* axis) {
  require(is_power_of_two(n), ErrorCode::InvalidArgument,
          std::string("grid size along ") + axis + " must be a power of two, got " + std::to_string(n));
  require(length > 0.0 && std::isfinite(length), ErrorCode::InvalidArgument,
          std::string("grid period along ") + axis + " must be positive");
}

}  // namespace detail

/// Uniform periodic grid on [0, L) with n points.
struct Grid1D {
  static constexpr int dimension = 1;
  using Wavevector = double;

  int n = 1024;
  double length = 100.0;

  Grid1D() = default;
  Grid1D(int points, double period) : n(points), length(period) {
    detail::validate_axis(n, length, "x");
  }

  std::size_t size() const { return static_cast<std::size_t>(n); }
  std::vector<int> dims() const { return {n}; }
  double dx() const { return length / n; }
  double dxi() const { return 2.0 * std::numbers::pi / length; }
  double cell_volume() const { return dx(); }
  double volume() const { return length; }

  double position(std::size_t j) const { return static_cast<double>(j) * dx(); }
  int wave_index(std::size_t slot) const { return detail::signed_index(static_cast<int>(slot), n); }
  Wavevector wavevector(std::size_t slot) const { return dxi() * wave_index(slot); }
  double xi_abs(std::size_t slot) const { return std::abs(wavevector(slot)); }
  double xi_squared(std::size_t slot) const {
    const double xi = wavevector(slot);
    return xi * xi;
  }

  bool is_nyquist(std::size_t slot) const { return static_cast<int>(slot) == n / 2; }
  /// 2/3 rule: keep |k| <= n/3.
  bool keeps_dealiased(std::size_t slot) const { return 3 * std::abs(wave_index(slot)) <= n; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Periodic box [0, Lx) x [0, Ly) x [0, Lz), row-major with z fastest.
struct Grid3D {
  static constexpr int dimension = 3;
  using Wavevector = std::array<double, 3>;

  std::array<int, 3> n{32, 32, 32};
  std::array<double, 3> length{16.0 * std::numbers::pi, 16.0 * std::numbers::pi,
                               16.0 * std::numbers::pi};

  Grid3D() = default;
  Grid3D(std::array<int, 3> points, std::array<double, 3> periods) : n(points), length(periods) {
    detail::validate_axis(n[0], length[0], "x");
    detail::validate_axis(n[1], length[1], "y");
    detail::validate_axis(n[2], length[2], "z");
  }
  /// Cubic grid with equal points and period per axis.
  Grid3D(int points, double period) : Grid3D({points, points, points}, {period, period, period}) {}

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
           static_cast<std::size_t>(n[2]);
  }
  std::vector<int> dims() const { return {n[0], n[1], n[2]}; }
  double dx(int axis) const { return length[axis] / n[axis]; }
  double dxi(int axis) const { return 2.0 * std::numbers::pi / length[axis]; }
  double cell_volume() const { return dx(0) * dx(1) * dx(2); }
  double volume() const { return length[0] * length[1] * length[2]; }

  std::array<std::size_t, 3> unflatten(std::size_t slot) const {
    const auto nz = static_cast<std::size_t>(n[2]);
    const auto ny = static_cast<std::size_t>(n[1]);
    return {slot / (ny * nz), (slot / nz) % ny, slot % nz};
  }
  std::size_t flatten(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * static_cast<std::size_t>(n[1]) + j) * static_cast<std::size_t>(n[2]) + k;
  }

  std::array<double, 3> position(std::size_t slot) const {
    const auto idx = unflatten(slot);
    return {idx[0] * dx(0), idx[1] * dx(1), idx[2] * dx(2)};
  }
  std::array<int, 3> wave_index(std::size_t slot) const {
    const auto idx = unflatten(slot);
    return {detail::signed_index(static_cast<int>(idx[0]), n[0]),
            detail::signed_index(static_cast<int>(idx[1]), n[1]),
            detail::signed_index(static_cast<int>(idx[2]), n[2])};
  }
  Wavevector wavevector(std::size_t slot) const {
    const auto k = wave_index(slot);
    return {dxi(0) * k[0], dxi(1) * k[1], dxi(2) * k[2]};
  }
  double xi_squared(std::size_t slot) const {
    const auto xi = wavevector(slot);
    return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  }
  double xi_abs(std::size_t slot) const { return std::sqrt(xi_squared(slot)); }

  bool is_nyquist(std::size_t slot) const {
    const auto idx = unflatten(slot);
    for (int a = 0; a < 3; ++a)
      if (static_cast<int>(idx[a]) == n[a] / 2) return true;
    return false;
  }
  bool keeps_dealiased(std::size_t slot) const {
    const auto k = wave_index(slot);
    for (int a = 0; a < 3; ++a)
      if (3 * std::abs(k[a]) > n[a]) return false;
    return true;
  }

  friend bool operator==(const Grid3D&, const Grid3D&) = default;
};

template <class G>
concept PeriodicGrid = requires(const G g, std::size_t slot) {
  { G::dimension } -> std::convertible_to<int>;
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.dims() } -> std::convertible_to<std::vector<int>>;
  { g.cell_volume() } -> std::convertible_to<double>;
  { g.volume() } -> std::convertible_to<double>;
  { g.xi_abs(slot) } -> std::convertible_to<double>;
  { g.xi_squared(slot) } -> std::convertible_to<double>;
  { g.wavevector(slot) } -> std::convertible_to<typename G::Wavevector>;
  { g.keeps_dealiased(slot) } -> std::convertible_to<bool>;
};

/// Modes with |xi| <= 1 belong to the low-frequency part (A^s norm, P_L, n_{1L}).
/// The tolerance absorbs roundoff in 2*pi*k/L for periods that make |xi| = 1 a grid mode.
inline bool is_low_frequency(double xi_abs) { return xi_abs <= 1.0 + 1e-12; }

inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace dduet
