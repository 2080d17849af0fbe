#pragma once

// Symmetric pairwise interaction (SPI) accumulation: sum of f(obj[i], obj[j])
// over all unordered pairs, evaluated either with the triangular i < j loop or
// with the balanced circular schedule from pair_schedule.hpp.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "pairwise/errors.hpp"
#include "pairwise/pair_schedule.hpp"
#include "pairwise/random.hpp"

namespace pairwise {

struct Sphere {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Sphere&, const Sphere&) = default;
};

/// Unit-diameter sphere overlap: 1 if the centers are strictly closer than 1.
/// Tangent spheres do not collide. Throws DomainError on non-finite input.
unsigned collision_indicator(const Sphere& a, const Sphere& b);

enum class Schedule { standard, balanced };

std::string_view to_string(Schedule s) noexcept;
/// Accepts "standard" or "balanced"; throws DomainError otherwise.
Schedule parse_schedule(std::string_view text);

template <class F, class Obj>
concept InteractionFn = std::invocable<const F&, const Obj&, const Obj&> &&
                        std::is_arithmetic_v<std::decay_t<std::invoke_result_t<const F&, const Obj&, const Obj&>>>;

/// Integer contributions accumulate in 64 bits, real ones in double.
template <class R>
using accumulator_t = std::conditional_t<std::is_floating_point_v<R>, double,
                                         std::conditional_t<std::is_signed_v<R>, std::int64_t, std::uint64_t>>;

template <class T>
struct SpiResult {
  T total{};
  /// One partial per worker, reduced in ascending worker order.
  std::vector<T> partials;
  std::uint64_t pairs_evaluated = 0;
  /// Largest inner-loop length of any outer index, i.e. the depth when each
  /// outer index runs on its own thread.
  std::size_t depth_per_worker = 0;
  /// Inner iterations actually executed by each worker.
  std::vector<std::uint64_t> worker_iterations;
};

struct SpiOptions {
#ifdef NDEBUG
  static constexpr std::size_t default_audit_samples = 0;
#else
  static constexpr std::size_t default_audit_samples = 32;
#endif
  /// Random pairs probed with swapped arguments before accumulating.
  std::size_t symmetry_audit_samples = default_audit_samples;
  std::uint64_t audit_seed = 0x5eedULL;
};

/// Depth of one-thread-per-outer-index execution.
std::size_t schedule_depth(Schedule schedule, std::size_t n) noexcept;

/// Half-open range of outer indices owned by `worker` when n indices are
/// split into `workers` contiguous blocks whose sizes differ by at most one.
struct IndexBlock {
  std::size_t begin = 0;
  std::size_t end = 0;
};
IndexBlock contiguous_block(std::size_t n, std::size_t workers, std::size_t worker) noexcept;

/// Relative agreement for real-valued totals: 1e-12 per evaluated pair.
bool totals_agree(double a, double b, std::uint64_t pairs) noexcept;

/// Probes f(a, b) == f(b, a) on `samples` random pairs; throws SymmetryError
/// naming the first asymmetric pair.
template <class Obj, InteractionFn<Obj> F>
void audit_symmetry(std::span<const Obj> objects, const F& f, std::size_t samples, std::uint64_t seed) {
  if (objects.size() < 2) return;
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto i = static_cast<std::size_t>(rng.below(objects.size()));
    const auto j = static_cast<std::size_t>(rng.below(objects.size()));
    const auto ab = std::invoke(f, objects[i], objects[j]);
    const auto ba = std::invoke(f, objects[j], objects[i]);
    if (!(ab == ba)) {
      throw SymmetryError("interaction is not symmetric for pair (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
    }
  }
}

namespace detail {

template <class T>
struct Partial {
  T sum{};
  std::uint64_t iterations = 0;
};

template <class T, class V>
inline void accumulate_checked(T& sum, V value, std::size_t i, std::size_t j) {
  if constexpr (std::is_floating_point_v<V>) {
    if (!std::isfinite(value)) {
      throw AccumulationError(i, j, "non-finite interaction for pair (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
    }
  }
  sum += static_cast<T>(value);
}

/// Accumulates the pairs owned by outer indices [begin, end).
template <class T, class Obj, class F>
Partial<T> accumulate_block(std::span<const Obj> objects, const F& f, Schedule schedule, std::size_t begin,
                            std::size_t end) {
  Partial<T> out;
  const std::size_t n = objects.size();
  if (schedule == Schedule::standard) {
    for (std::size_t i = begin; i < end; ++i) {
      const Obj& a = objects[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        accumulate_checked(out.sum, std::invoke(f, a, objects[j]), i, j);
      }
      out.iterations += n - 1 - i;
    }
    return out;
  }
  for (std::size_t i = begin; i < end; ++i) {
    const Obj& a = objects[i];
    const std::size_t steps = schedule::steps_for(n, i);
    // Split the circular range into the part before and after the wrap.
    const std::size_t tail = std::min(steps, n - 1 - i);
    for (std::size_t j = i + 1; j <= i + tail; ++j) {
      accumulate_checked(out.sum, std::invoke(f, a, objects[j]), i, j);
    }
    for (std::size_t j = 0; j < steps - tail; ++j) {
      accumulate_checked(out.sum, std::invoke(f, a, objects[j]), i, j);
    }
    out.iterations += steps;
  }
  return out;
}

}  // namespace detail

/// Runs the chosen schedule on `workers` threads. Outer indices are split
/// into contiguous blocks; each worker sums its block privately and the
/// partials are added in worker order, so integer totals are identical for
/// any worker count.
///
/// Library errors raised inside a worker are rethrown unchanged; anything
/// else is wrapped in ExecutionError. With several failing workers, the
/// lowest-numbered one wins.
template <class Obj, InteractionFn<Obj> F>
auto spi_parallel(std::span<const Obj> objects, const F& f, std::size_t workers, Schedule schedule,
                  const SpiOptions& options = {})
    -> SpiResult<accumulator_t<std::decay_t<std::invoke_result_t<const F&, const Obj&, const Obj&>>>> {
  using T = accumulator_t<std::decay_t<std::invoke_result_t<const F&, const Obj&, const Obj&>>>;
  if (workers == 0) throw DomainError("at least one worker is required");
  if (options.symmetry_audit_samples > 0) {
    audit_symmetry(objects, f, options.symmetry_audit_samples, options.audit_seed);
  }

  const std::size_t n = objects.size();
  std::vector<detail::Partial<T>> partials(workers);
  std::vector<std::exception_ptr> failures(workers);

  auto run = [&](std::size_t w) {
    try {
      const IndexBlock block = contiguous_block(n, workers, w);
      partials[w] = detail::accumulate_block<T>(objects, f, schedule, block.begin, block.end);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(run, w);
    run(0);
  }

  for (std::size_t w = 0; w < workers; ++w) {
    if (!failures[w]) continue;
    try {
      std::rethrow_exception(failures[w]);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw ExecutionError("worker " + std::to_string(w) + " failed: " + e.what());
    } catch (...) {
      throw ExecutionError("worker " + std::to_string(w) + " failed with an unknown exception");
    }
  }

  SpiResult<T> result;
  result.partials.reserve(workers);
  result.worker_iterations.reserve(workers);
  for (const auto& p : partials) {
    result.total += p.sum;
    result.partials.push_back(p.sum);
    result.worker_iterations.push_back(p.iterations);
    result.pairs_evaluated += p.iterations;
  }
  result.depth_per_worker = schedule_depth(schedule, n);
  return result;
}

/// Triangular i < j loop, one worker, ascending (i, j) order.
template <class Obj, InteractionFn<Obj> F>
auto spi_standard(std::span<const Obj> objects, const F& f, const SpiOptions& options = {}) {
  return spi_parallel(objects, f, 1, Schedule::standard, options);
}

/// Balanced circular schedule, one worker, in pairs() order.
template <class Obj, InteractionFn<Obj> F>
auto spi_balanced(std::span<const Obj> objects, const F& f, const SpiOptions& options = {}) {
  return spi_parallel(objects, f, 1, Schedule::balanced, options);
}

}  // namespace pairwise
