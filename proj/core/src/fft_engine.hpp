#pragma once

// Internal FFTW wrapper. Plans are created once per size under a mutex
// (the FFTW planner is not thread-safe) with FFTW_ESTIMATE so that the
// chosen algorithm, and hence every output bit, is identical across runs.
// Execution goes through per-thread aligned work buffers.

#include <complex>
#include <cstddef>
#include <span>

namespace chlab::detail {

using Complex = std::complex<double>;

/// Unnormalized forward real-to-half-complex DFT: out[k] = Σ_i in[i] e^{-2πi ik/N}.
void fft_forward(std::span<const double> in, std::span<Complex> out);

/// Unnormalized inverse: out[i] = Σ_k c_k e^{2πi ik/N} over the full Hermitian
/// extension of the N/2+1 half coefficients (no 1/N factor).
void fft_inverse(std::span<const Complex> in, std::span<double> out);

}  // namespace chlab::detail
