#pragma once

// Periodic grid, Fourier transforms and Fourier multipliers on [-L, L).
//
// Conventions follow the continuum transform
//     û(ξ) = ∫ e^{-ixξ} u(x) dx,      u(x) = (1/2π) ∫ e^{ixξ} û(ξ) dξ,
// discretized as û(ξ_k) = dx · Σ_i e^{-i x_i ξ_k} u(x_i) and
// u(x_i) = (1/2L) · Σ_k e^{i x_i ξ_k} û(ξ_k), with ξ_k = πk/L. Continuum
// formulas therefore hold verbatim on the torus (Parseval carries dx and
// 1/(2L) weights).
//
// Spectra are stored in FFT slot order: slot k holds wavenumber k for
// k < N/2 and k - N otherwise.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace chlab {

using Complex = std::complex<double>;

class GridSpec {
 public:
  /// Throws std::invalid_argument unless L > 0 and N is even and >= 16.
  GridSpec(double half_length, std::size_t points);

  double half_length() const noexcept { return half_length_; }
  std::size_t size() const noexcept { return points_; }
  std::size_t half_size() const noexcept { return points_ / 2 + 1; }
  double spacing() const noexcept { return 2.0 * half_length_ / static_cast<double>(points_); }
  /// ξ_1 = π/L.
  double fundamental() const noexcept;
  /// ξ_max = πN/(2L).
  double nyquist() const noexcept;

  double x(std::size_t i) const noexcept;
  std::ptrdiff_t wavenumber(std::size_t slot) const noexcept;
  double frequency(std::size_t slot) const noexcept;
  /// Largest |wavenumber| kept by a dealiasing rule that zeroes the top
  /// (1 - fraction) of the spectrum.
  std::size_t dealias_cutoff(double fraction = 2.0 / 3.0) const noexcept;

  bool operator==(const GridSpec&) const = default;

 private:
  double half_length_;
  std::size_t points_;
};

GridSpec make_grid(double half_length, std::size_t points);

/// Real grid function. Immutable after construction; samples are finite.
class Field {
 public:
  /// Throws std::invalid_argument on size mismatch or non-finite samples.
  Field(GridSpec grid, std::vector<double> samples);

  static Field zeros(const GridSpec& grid);
  static Field constant(const GridSpec& grid, double value);

  template <typename F>
  static Field from_function(const GridSpec& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
    return Field(grid, std::move(v));
  }

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }
  double max_abs() const noexcept;

  Field operator-() const;
  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(double c, const Field& a);
  friend Field operator*(const Field& a, double c) { return c * a; }

  bool operator==(const Field&) const = default;

 private:
  GridSpec grid_;
  std::vector<double> samples_;
};

/// Pointwise product on the grid, no dealiasing.
Field pointwise_product(const Field& a, const Field& b);

class Spectrum {
 public:
  Spectrum(GridSpec grid, std::vector<Complex> coefficients);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const Complex> coefficients() const noexcept { return coefficients_; }
  Complex operator[](std::size_t slot) const noexcept { return coefficients_[slot]; }
  Complex at_wavenumber(std::ptrdiff_t k) const;

  /// Largest violation of û(-ξ) = conj(û(ξ)) relative to max |û|; the
  /// unpaired Nyquist slot must be real.
  double hermitian_defect() const noexcept;

 private:
  GridSpec grid_;
  std::vector<Complex> coefficients_;
};

Spectrum to_spectrum(const Field& u);
/// Throws std::invalid_argument if the spectrum is not Hermitian to 1e-12.
Field to_field(const Spectrum& u_hat);

using Multiplier = std::function<Complex(double xi)>;

/// Fourier multiplier sampled once on a grid's non-negative half spectrum.
/// The unpaired Nyquist mode keeps only the real part of m.
class MultiplierTable {
 public:
  /// Throws std::invalid_argument if m is non-finite on the grid or breaks
  /// m(-ξ) = conj(m(ξ)) (required for real output).
  MultiplierTable(const GridSpec& grid, const Multiplier& m);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  Field apply(const Field& u) const;

 private:
  GridSpec grid_;
  std::vector<Complex> values_;
};

Field apply_multiplier(const Field& u, const Multiplier& m);
/// Complex-valued variant: no symmetry requirement.
Spectrum apply_multiplier(const Spectrum& u_hat, const Multiplier& m);

/// Spectral derivative, multiplier iξ.
Field derivative(const Field& u);

/// Zero every mode with |wavenumber| > fraction·N/2.
Field dealias(const Field& u, double fraction = 2.0 / 3.0);
/// 2/3-rule product: both factors and the result are dealiased.
Field dealiased_product(const Field& a, const Field& b);

/// max |û| over the top third of the spectrum divided by max |û|.
double resolution_indicator(const Field& u);
/// Spectral energy fraction carried by the top third of the spectrum.
double top_band_energy(const Field& u);
bool is_resolved(const Field& u, double tol = 1e-10);

/// P(u) = -∂_x (1 - ∂_x²)^{-1} (u² + ½ u_x²), products dealiased.
Field nonlocal_P(const Field& u);

/// Rectangle-rule L^p norm; p = +infinity gives max |u_i|. Throws for p < 1.
double lp_norm(const Field& u, double p);

/// Spectrally exact L² norm (discrete Parseval on the half spectrum).
double l2_norm_spectral(const Field& u);

}  // namespace chlab
