#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

// Deterministic parallel reduction. Work items are summed per fixed-size
// chunk with Neumaier compensation and the chunk partials are combined in
// chunk order, so the result is bitwise identical for any worker count.

namespace sfl {

// Compensated (Neumaier) accumulator.
struct Accum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

namespace detail {
inline std::atomic<int>& jobs_knob() {
  static std::atomic<int> j{0};
  return j;
}
}  // namespace detail

inline int max_jobs() {
  const int v = detail::jobs_knob().load(std::memory_order_relaxed);
  if (v > 0) return v;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// n <= 0 restores the hardware default.
inline void set_max_jobs(int n) { detail::jobs_knob().store(n, std::memory_order_relaxed); }

namespace detail {
inline constexpr std::size_t kChunk = 4096;
}

// Sums n_slots accumulators over items [0, n). `eval(i, slots)` must add
// item i's contribution into slots[0..n_slots). Chunk boundaries depend
// only on n, never on the worker count.
template <class Eval>
void deterministic_slot_sum(std::size_t n, std::size_t n_slots, double* out, Eval&& eval) {
  const std::size_t chunk = detail::kChunk;
  const std::size_t n_chunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<double> partial(n_chunks * n_slots, 0.0);
  std::vector<double> scratch_proto(n_slots, 0.0);

  auto run_chunk = [&](std::size_t ci, std::vector<double>& scratch, std::vector<Accum>& acc) {
    for (auto& a : acc) a = Accum{};
    const std::size_t lo = ci * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      for (auto& s : scratch) s = 0.0;
      eval(i, scratch.data());
      for (std::size_t k = 0; k < n_slots; ++k) acc[k].add(scratch[k]);
    }
    for (std::size_t k = 0; k < n_slots; ++k) partial[ci * n_slots + k] = acc[k].value();
  };

  const int jobs = std::min<std::size_t>(std::max(1, max_jobs()), std::max<std::size_t>(1, n_chunks));
  if (jobs <= 1 || n_chunks <= 1) {
    std::vector<double> scratch(n_slots, 0.0);
    std::vector<Accum> acc(n_slots);
    for (std::size_t ci = 0; ci < n_chunks; ++ci) run_chunk(ci, scratch, acc);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&]() {
        std::vector<double> scratch(n_slots, 0.0);
        std::vector<Accum> acc(n_slots);
        for (;;) {
          const std::size_t ci = next.fetch_add(1);
          if (ci >= n_chunks) break;
          run_chunk(ci, scratch, acc);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Ordered combine.
  std::vector<Accum> total(n_slots);
  for (std::size_t ci = 0; ci < n_chunks; ++ci)
    for (std::size_t k = 0; k < n_slots; ++k) total[k].add(partial[ci * n_slots + k]);
  for (std::size_t k = 0; k < n_slots; ++k) out[k] = total[k].value();
}

// Runs f(i) for i in [0, n) on the worker pool; results must be written to
// caller-owned per-index storage. Order of side effects is not defined, so
// only index-disjoint writes are safe.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const int jobs = std::min<std::size_t>(std::max(1, max_jobs()), std::max<std::size_t>(1, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        f(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sfl
