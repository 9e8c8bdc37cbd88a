#include "fft_engine.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace chlab::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const int size = static_cast<int>(n);
  double* real = fftw_alloc_real(n);
  fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
  if (real == nullptr || cplx == nullptr) throw std::bad_alloc();
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_1d(size, real, cplx, FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_1d(size, cplx, real, FFTW_ESTIMATE);
  fftw_free(real);
  fftw_free(cplx);
  if (p.forward == nullptr || p.inverse == nullptr) {
    throw std::runtime_error("FFTW planning failed");
  }
  return cache.emplace(n, p).first->second;
}

struct FftwDeleter {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

// Aligned buffers owned by the calling thread; c2r destroys its input, so
// the half spectrum is always copied in.
class Workspace {
 public:
  static Workspace& local(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<Workspace>> spaces;
    auto& slot = spaces[n];
    if (!slot) slot.reset(new Workspace(n));
    return *slot;
  }

  double* real() noexcept { return real_.get(); }
  fftw_complex* half() noexcept { return half_.get(); }

 private:
  explicit Workspace(std::size_t n)
      : real_(fftw_alloc_real(n)), half_(fftw_alloc_complex(n / 2 + 1)) {
    if (!real_ || !half_) throw std::bad_alloc();
  }

  std::unique_ptr<double, FftwDeleter> real_;
  std::unique_ptr<fftw_complex, FftwDeleter> half_;
};

}  // namespace

void fft_forward(std::span<const double> in, std::span<Complex> out) {
  const std::size_t n = in.size();
  assert(out.size() == n / 2 + 1);
  const PlanPair& plans = plans_for(n);
  Workspace& ws = Workspace::local(n);
  std::copy(in.begin(), in.end(), ws.real());
  fftw_execute_dft_r2c(plans.forward, ws.real(), ws.half());
  const auto* h = reinterpret_cast<const Complex*>(ws.half());
  std::copy(h, h + out.size(), out.begin());
}

void fft_inverse(std::span<const Complex> in, std::span<double> out) {
  const std::size_t n = out.size();
  assert(in.size() == n / 2 + 1);
  const PlanPair& plans = plans_for(n);
  Workspace& ws = Workspace::local(n);
  auto* h = reinterpret_cast<Complex*>(ws.half());
  std::copy(in.begin(), in.end(), h);
  fftw_execute_dft_c2r(plans.inverse, ws.half(), ws.real());
  std::copy(ws.real(), ws.real() + n, out.begin());
}

}  // namespace chlab::detail
