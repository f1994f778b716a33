#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dduet/error.hpp"
#include "dduet/fft.hpp"
#include "dduet/grid.hpp"

namespace dduet {

using cplx = std::complex<double>;

enum class Representation { Physical, Spectral };

/// Complex samples on a periodic grid, tagged with their representation.
///
/// Spectral coefficients approximate the continuum transform
/// f^(xi) = int f(x) e^{-i xi x} dx by the rectangle rule, so
/// f^_k = cell_volume * DFT(f)_k and the inverse carries 1/volume
/// (= product of dxi/(2 pi)). Parseval then reads
/// sum |f_j|^2 cell_volume = sum |f^_k|^2 / volume.
template <PeriodicGrid G>
class Field {
 public:
  using grid_type = G;

  Field() = default;
  explicit Field(G grid, Representation rep = Representation::Physical)
      : grid_(std::move(grid)), rep_(rep), values_(grid_.size(), cplx{0.0, 0.0}) {}
  Field(G grid, std::vector<cplx> values, Representation rep)
      : grid_(std::move(grid)), rep_(rep), values_(std::move(values)) {
    require(values_.size() == grid_.size(), ErrorCode::DimsMismatch,
            "field value count does not match grid size");
  }

  /// Samples fn at every grid position (physical representation).
  template <class Fn>
  static Field sample(const G& grid, Fn&& fn) {
    Field f(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) f.values_[j] = cplx(fn(grid.position(j)));
    return f;
  }

  const G& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::Physical; }
  bool is_spectral() const { return rep_ == Representation::Spectral; }
  std::size_t size() const { return values_.size(); }

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  Field& operator+=(const Field& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }
  Field& operator-=(const Field& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
  }
  Field& operator*=(cplx c) {
    for (auto& v : values_) v *= c;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(cplx c, Field a) { return a *= c; }
  friend Field operator*(Field a, cplx c) { return a *= c; }

 private:
  void check_compatible(const Field& other) const {
    require(grid_ == other.grid_, ErrorCode::DimsMismatch, "fields live on different grids");
    require(rep_ == other.rep_, ErrorCode::InvalidArgument,
            "fields are in different representations");
  }

  G grid_{};
  Representation rep_ = Representation::Physical;
  std::vector<cplx> values_;
};

/// Physical to spectral. A field that is already spectral is returned unchanged.
template <PeriodicGrid G>
Field<G> to_spectral(const Field<G>& f) {
  if (f.is_spectral()) return f;
  auto out = fft::transform(f.values(), f.grid().dims(), fft::Direction::Forward);
  const double w = f.grid().cell_volume();
  for (auto& v : out) v *= w;
  return Field<G>(f.grid(), std::move(out), Representation::Spectral);
}

/// Spectral to physical. A field that is already physical is returned unchanged.
template <PeriodicGrid G>
Field<G> to_physical(const Field<G>& f) {
  if (f.is_physical()) return f;
  auto out = fft::transform(f.values(), f.grid().dims(), fft::Direction::Backward);
  const double w = 1.0 / f.grid().volume();
  for (auto& v : out) v *= w;
  return Field<G>(f.grid(), std::move(out), Representation::Physical);
}

/// Multiplies the spectrum by symbol(xi). Result is spectral.
template <PeriodicGrid G, class Symbol>
Field<G> apply_multiplier(const Field<G>& f, Symbol&& symbol) {
  Field<G> out = to_spectral(f);
  const G& grid = f.grid();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const cplx m = cplx(symbol(grid.wavevector(k)));
    require(std::isfinite(m.real()) && std::isfinite(m.imag()), ErrorCode::NonFiniteSymbol,
            "multiplier symbol is not finite on grid mode " + std::to_string(k));
    out[k] *= m;
  }
  return out;
}

/// Multiplier whose symbol depends on the slot only through |xi|.
template <PeriodicGrid G, class Radial>
Field<G> apply_radial_multiplier(const Field<G>& f, Radial&& symbol) {
  Field<G> out = to_spectral(f);
  const G& grid = f.grid();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const cplx m = cplx(symbol(grid.xi_abs(k)));
    require(std::isfinite(m.real()) && std::isfinite(m.imag()), ErrorCode::NonFiniteSymbol,
            "multiplier symbol is not finite on grid mode " + std::to_string(k));
    out[k] *= m;
  }
  return out;
}

/// x-derivative of a 1d field (symbol i*xi).
inline Field<Grid1D> derivative(const Field<Grid1D>& f) {
  return apply_multiplier(f, [](double xi) { return cplx(0.0, xi); });
}

/// Projection onto |xi| <= 1.
template <PeriodicGrid G>
Field<G> low_pass(const Field<G>& f) {
  return apply_radial_multiplier(f, [](double a) { return is_low_frequency(a) ? 1.0 : 0.0; });
}

/// Projection onto |xi| > 1.
template <PeriodicGrid G>
Field<G> high_pass(const Field<G>& f) {
  return apply_radial_multiplier(f, [](double a) { return is_low_frequency(a) ? 0.0 : 1.0; });
}

/// 2/3-rule truncation: zero every mode with |k_axis| > n_axis/3.
template <PeriodicGrid G>
Field<G> dealias(const Field<G>& f) {
  Field<G> out = to_spectral(f);
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!f.grid().keeps_dealiased(k)) out[k] = 0.0;
  return out;
}

/// Drops imaginary parts of a physical field.
template <PeriodicGrid G>
Field<G> real_part(const Field<G>& f) {
  Field<G> out = to_physical(f);
  for (auto& v : out.values()) v = cplx(v.real(), 0.0);
  return out;
}

template <PeriodicGrid G>
double max_abs(const Field<G>& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

template <PeriodicGrid G>
double max_imag(const Field<G>& f) {
  const Field<G> p = to_physical(f);
  double m = 0.0;
  for (const auto& v : p.values()) m = std::max(m, std::abs(v.imag()));
  return m;
}

/// Dealiased pointwise product P(Pa * Pb), physical.
template <PeriodicGrid G>
Field<G> dealiased_product(const Field<G>& a, const Field<G>& b) {
  const Field<G> pa = to_physical(dealias(a));
  const Field<G> pb = to_physical(dealias(b));
  Field<G> prod(a.grid());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = pa[j] * pb[j];
  return to_physical(dealias(prod));
}

/// Dealiased density P(|Pu|^2), physical and real.
template <PeriodicGrid G>
Field<G> dealiased_density(const Field<G>& u) {
  const Field<G> pu = to_physical(dealias(u));
  Field<G> rho(u.grid());
  for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = std::norm(pu[j]);
  return real_part(dealias(rho));
}

/// The wave component (n, dn/dt); both fields real and physical.
template <PeriodicGrid G>
struct WavePair {
  Field<G> n;
  Field<G> nt;

  WavePair() = default;
  WavePair(Field<G> n_in, Field<G> nt_in) : n(real_part(n_in)), nt(real_part(nt_in)) {
    require(n.grid() == nt.grid(), ErrorCode::DimsMismatch, "wave pair fields on different grids");
  }
  static WavePair zero(const G& grid) { return WavePair(Field<G>(grid), Field<G>(grid)); }
  const G& grid() const { return n.grid(); }
};

}  // namespace dduet
