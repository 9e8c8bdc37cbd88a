#include <chlab/spectral.hpp>

#include "fft_engine.hpp"
#include "spectral_detail.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chlab {

// ---------------------------------------------------------------------------
// GridSpec

GridSpec::GridSpec(double half_length, std::size_t points)
    : half_length_(half_length), points_(points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("grid half-length must be positive and finite");
  }
  if (points < 16 || points % 2 != 0) {
    throw std::invalid_argument("grid point count must be even and >= 16, got " +
                                std::to_string(points));
  }
}

double GridSpec::fundamental() const noexcept { return std::numbers::pi / half_length_; }

double GridSpec::nyquist() const noexcept {
  return std::numbers::pi * static_cast<double>(points_) / (2.0 * half_length_);
}

double GridSpec::x(std::size_t i) const noexcept {
  return -half_length_ + static_cast<double>(i) * spacing();
}

std::ptrdiff_t GridSpec::wavenumber(std::size_t slot) const noexcept {
  const auto k = static_cast<std::ptrdiff_t>(slot);
  const auto n = static_cast<std::ptrdiff_t>(points_);
  return 2 * k < n ? k : k - n;
}

double GridSpec::frequency(std::size_t slot) const noexcept {
  return static_cast<double>(wavenumber(slot)) * fundamental();
}

std::size_t GridSpec::dealias_cutoff(double fraction) const noexcept {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(points_ / 2) + 1e-9));
}

GridSpec make_grid(double half_length, std::size_t points) { return {half_length, points}; }

// ---------------------------------------------------------------------------
// Field

Field::Field(GridSpec grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) {
    throw std::invalid_argument("field sample count does not match grid");
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("field samples must be finite");
  }
}

Field Field::zeros(const GridSpec& grid) { return {grid, std::vector<double>(grid.size(), 0.0)}; }

Field Field::constant(const GridSpec& grid, double value) {
  return {grid, std::vector<double>(grid.size(), value)};
}

double Field::max_abs() const noexcept {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

template <typename Op>
Field combine(const Field& a, const Field& b, Op op) {
  require_same_grid(a.grid(), b.grid());
  std::vector<double> out(a.size());
  const auto x = a.samples();
  const auto y = b.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(x[i], y[i]);
  return {a.grid(), std::move(out)};
}

}  // namespace

Field Field::operator-() const { return -1.0 * *this; }

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Field operator-(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Field operator*(double c, const Field& a) {
  std::vector<double> out(a.samples().begin(), a.samples().end());
  for (double& v : out) v *= c;
  return {a.grid(), std::move(out)};
}

Field pointwise_product(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(GridSpec grid, std::vector<Complex> coefficients)
    : grid_(grid), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != grid_.size()) {
    throw std::invalid_argument("spectrum coefficient count does not match grid");
  }
  for (const Complex& c : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("spectrum coefficients must be finite");
    }
  }
}

Complex Spectrum::at_wavenumber(std::ptrdiff_t k) const {
  const auto n = static_cast<std::ptrdiff_t>(grid_.size());
  if (k < -n / 2 || k >= n / 2) throw std::out_of_range("wavenumber outside grid band");
  return coefficients_[static_cast<std::size_t>(k >= 0 ? k : k + n)];
}

double Spectrum::hermitian_defect() const noexcept {
  const std::size_t n = coefficients_.size();
  double peak = 0.0;
  for (const Complex& c : coefficients_) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0.0;
  double defect = std::abs(coefficients_[0].imag());
  defect = std::max(defect, std::abs(coefficients_[n / 2].imag()));
  for (std::size_t k = 1; k < n / 2; ++k) {
    defect = std::max(defect, std::abs(coefficients_[n - k] - std::conj(coefficients_[k])));
  }
  return defect / peak;
}

Spectrum to_spectrum(const Field& u) {
  const GridSpec& g = u.grid();
  const std::size_t n = g.size();
  const auto raw = detail::raw_half_spectrum(u.samples());
  std::vector<Complex> full(n);
  const double dx = g.spacing();
  for (std::size_t k = 0; k <= n / 2; ++k) {
    // e^{-i x_0 ξ_k} = e^{iπk} = (-1)^k for x_0 = -L.
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    full[k] = sign * dx * raw[k];
  }
  for (std::size_t k = 1; k < n / 2; ++k) full[n - k] = std::conj(full[k]);
  return {g, std::move(full)};
}

Field to_field(const Spectrum& u_hat) {
  const double defect = u_hat.hermitian_defect();
  if (defect > 1e-12) {
    throw std::invalid_argument("spectrum is not Hermitian (defect " + std::to_string(defect) +
                                "); real field requested");
  }
  const GridSpec& g = u_hat.grid();
  const std::size_t n = g.size();
  std::vector<Complex> raw(n / 2 + 1);
  const double inv_dx = 1.0 / g.spacing();
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    raw[k] = sign * inv_dx * u_hat[k];
  }
  raw[0] = raw[0].real();
  raw[n / 2] = raw[n / 2].real();
  return detail::field_from_raw_half(g, raw);
}

// ---------------------------------------------------------------------------
// Multipliers

MultiplierTable::MultiplierTable(const GridSpec& grid, const Multiplier& m)
    : grid_(grid), values_(grid.half_size()) {
  const std::size_t n = grid.size();
  double peak = 0.0;
  double defect = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double xi = grid.frequency(k);
    const Complex plus = m(xi);
    const Complex minus = m(-xi);
    if (!std::isfinite(plus.real()) || !std::isfinite(plus.imag()) ||
        !std::isfinite(minus.real()) || !std::isfinite(minus.imag())) {
      throw std::invalid_argument("multiplier is not finite on the grid frequencies");
    }
    peak = std::max({peak, std::abs(plus), std::abs(minus)});
    defect = std::max(defect, std::abs(minus - std::conj(plus)));
    values_[k] = plus;
  }
  const Complex nyq = m(grid.frequency(n / 2));
  if (!std::isfinite(nyq.real())) {
    throw std::invalid_argument("multiplier is not finite on the grid frequencies");
  }
  values_[n / 2] = nyq.real();
  if (defect > 1e-12 * std::max(peak, 1e-300)) {
    throw std::invalid_argument("multiplier breaks Hermitian symmetry; real output impossible");
  }
}

Field MultiplierTable::apply(const Field& u) const {
  require_same_grid(grid_, u.grid());
  auto raw = detail::raw_half_spectrum(u.samples());
  for (std::size_t k = 0; k < raw.size(); ++k) raw[k] *= values_[k];
  return detail::field_from_raw_half(grid_, raw);
}

Field apply_multiplier(const Field& u, const Multiplier& m) {
  return MultiplierTable(u.grid(), m).apply(u);
}

Spectrum apply_multiplier(const Spectrum& u_hat, const Multiplier& m) {
  const GridSpec& g = u_hat.grid();
  std::vector<Complex> out(g.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = u_hat[k] * m(g.frequency(k));
  return {g, std::move(out)};
}

Field derivative(const Field& u) {
  const GridSpec& g = u.grid();
  auto raw = detail::raw_half_spectrum(u.samples());
  const std::size_t n = g.size();
  for (std::size_t k = 0; k < n / 2; ++k) raw[k] *= Complex(0.0, g.frequency(k));
  raw[n / 2] = 0.0;
  return detail::field_from_raw_half(g, raw);
}

Field dealias(const Field& u, double fraction) {
  auto raw = detail::raw_half_spectrum(u.samples());
  detail::zero_above(raw, u.grid().dealias_cutoff(fraction));
  return detail::field_from_raw_half(u.grid(), raw);
}

Field dealiased_product(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid());
  return dealias(pointwise_product(dealias(a), dealias(b)));
}

double resolution_indicator(const Field& u) {
  const auto raw = detail::raw_half_spectrum(u.samples());
  const std::size_t cutoff = u.grid().dealias_cutoff();
  double peak = 0.0;
  double top = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double a = std::abs(raw[k]);
    peak = std::max(peak, a);
    if (k > cutoff) top = std::max(top, a);
  }
  return peak == 0.0 ? 0.0 : top / peak;
}

double top_band_energy(const Field& u) {
  const auto raw = detail::raw_half_spectrum(u.samples());
  const std::size_t n = u.size();
  const std::size_t cutoff = u.grid().dealias_cutoff();
  double total = 0.0;
  double top = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double e = detail::half_weight(k, n) * std::norm(raw[k]);
    total += e;
    if (k > cutoff) top += e;
  }
  return total == 0.0 ? 0.0 : top / total;
}

bool is_resolved(const Field& u, double tol) { return resolution_indicator(u) <= tol; }

Field nonlocal_P(const Field& u) {
  const GridSpec& g = u.grid();
  const std::size_t n = g.size();
  const std::size_t cutoff = g.dealias_cutoff();
  auto raw = detail::raw_half_spectrum(u.samples());
  detail::zero_above(raw, cutoff);
  std::vector<Complex> raw_x(raw.size());
  for (std::size_t k = 0; k < n / 2; ++k) raw_x[k] = raw[k] * Complex(0.0, g.frequency(k));
  const auto v = detail::samples_from_raw_half(raw, n);
  const auto vx = detail::samples_from_raw_half(raw_x, n);
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = v[i] * v[i] + 0.5 * vx[i] * vx[i];
  auto raw_q = detail::raw_half_spectrum(q);
  detail::zero_above(raw_q, cutoff);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double xi = g.frequency(k);
    raw_q[k] *= Complex(0.0, -xi / (1.0 + xi * xi));
  }
  raw_q[n / 2] = 0.0;
  return detail::field_from_raw_half(g, raw_q);
}

double lp_norm(const Field& u, double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("L^p exponent must satisfy p >= 1");
  const double peak = u.max_abs();
  if (std::isinf(p) || peak == 0.0) return peak;
  const double dx = u.grid().spacing();
  double sum = 0.0;
  if (p == 1.0) {
    for (double v : u.samples()) sum += std::abs(v);
    return dx * sum;
  }
  if (p == 2.0) {
    for (double v : u.samples()) sum += v * v;
    return std::sqrt(dx * sum);
  }
  for (double v : u.samples()) sum += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(dx * sum, 1.0 / p);
}

double l2_norm_spectral(const Field& u) {
  const auto raw = detail::raw_half_spectrum(u.samples());
  return std::sqrt(detail::parseval_sum(u.grid(), raw));
}

// ---------------------------------------------------------------------------
// detail

namespace detail {

std::vector<Complex> raw_half_spectrum(std::span<const double> samples) {
  std::vector<Complex> raw(samples.size() / 2 + 1);
  fft_forward(samples, raw);
  return raw;
}

std::vector<double> samples_from_raw_half(std::span<const Complex> raw, std::size_t n) {
  std::vector<double> out(n);
  fft_inverse(raw, out);
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

Field field_from_raw_half(const GridSpec& grid, std::span<const Complex> raw) {
  return {grid, samples_from_raw_half(raw, grid.size())};
}

void zero_above(std::span<Complex> raw, std::size_t cutoff) noexcept {
  for (std::size_t k = cutoff + 1; k < raw.size(); ++k) raw[k] = 0.0;
}

double parseval_sum(const GridSpec& grid, std::span<const Complex> raw) noexcept {
  const std::size_t n = grid.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) sum += half_weight(k, n) * std::norm(raw[k]);
  return sum * grid.spacing() / static_cast<double>(n);
}

}  // namespace detail
}  // namespace chlab
