#pragma once

// Raw (unscaled) half-spectrum helpers shared inside the core library.
// raw[k] = Σ_i u_i e^{-2πi ik/N}; physical coefficients are û_k = dx·(-1)^k·raw[k].

#include <chlab/spectral.hpp>

#include <span>
#include <vector>

namespace chlab::detail {

std::vector<Complex> raw_half_spectrum(std::span<const double> samples);
std::vector<double> samples_from_raw_half(std::span<const Complex> raw, std::size_t n);
Field field_from_raw_half(const GridSpec& grid, std::span<const Complex> raw);

/// Zero every slot with wavenumber > cutoff.
void zero_above(std::span<Complex> raw, std::size_t cutoff) noexcept;

/// Multiplicity of half-spectrum slot k in the full spectrum.
inline double half_weight(std::size_t k, std::size_t n) noexcept {
  return (k == 0 || 2 * k == n) ? 1.0 : 2.0;
}

/// (1/2L)·Σ|û|² over the full spectrum, from raw half coefficients.
double parseval_sum(const GridSpec& grid, std::span<const Complex> raw) noexcept;

}  // namespace chlab::detail
