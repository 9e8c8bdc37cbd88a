#pragma once

// Helpers shared by the experiment translation units.

#include <chlab/experiments.hpp>
#include <chlab/littlewood_paley.hpp>
#include <chlab/thresholds.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace chlab::detail {

/// Runs fn(i) for i in [0, count) on a small thread pool and returns the
/// results in index order. The first exception by index is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(count, hw);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Block norms of one field, reusable for several (σ, r).
class BlockNorms {
 public:
  BlockNorms(const Field& u, double p) : norms_(littlewood_paley(u.grid()).block_norms(u, p)) {}
  double besov(double s, double r) const { return besov_from_block_norms(norms_, s, r); }
  const std::vector<double>& values() const noexcept { return norms_; }

 private:
  std::vector<double> norms_;
};

/// Largest n of the range, and its last (up to) three values.
inline std::vector<std::size_t> top_three(std::size_t count) {
  std::vector<std::size_t> idx;
  for (std::size_t i = count > 3 ? count - 3 : 0; i < count; ++i) idx.push_back(i);
  return idx;
}

/// (max - min)/max of the selected entries.
inline double relative_spread(const std::vector<double>& v, const std::vector<std::size_t>& idx) {
  double lo = v[idx.front()], hi = v[idx.front()];
  for (std::size_t i : idx) {
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
  }
  return hi == 0.0 ? 0.0 : (hi - lo) / hi;
}

inline std::vector<double> as_doubles(const std::vector<int>& v) {
  return {v.begin(), v.end()};
}

/// Fits log2(values) against n into result.fits[name]. When some value is
/// not positive the fit is impossible: a note is added and nullopt returned.
std::optional<LineFit> fit_rate(ExperimentResult& result, const std::string& name,
                                const std::vector<int>& ns, const std::vector<double>& values);

}  // namespace chlab::detail
