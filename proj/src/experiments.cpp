#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pairwise/bench.hpp"
#include "pairwise/generators.hpp"
#include "pairwise/lattice_counter.hpp"
#include "pairwise/random.hpp"
#include "pairwise/spi_engine.hpp"

namespace pairwise::bench {

namespace {

using Clock = std::chrono::steady_clock;

// Stream tags keep the inputs of different experiments independent.
constexpr std::uint64_t kChainStream = 1;
constexpr std::uint64_t kCloudStream = 2;
constexpr std::uint64_t kSphereStream = 3;

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

std::string format_double(double v) {
  std::string s = std::to_string(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

enum class CountKind { collisions, contacts };

struct LatticeRun {
  std::int64_t wall_ns = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t cells_touched = 0;
  std::uint64_t space_cells = 0;
};

/// One timed execution: allocate once, count every vector, reset sparsely
/// between vectors, reallocate every `realloc_every` vectors.
LatticeRun time_lattice(const std::vector<std::vector<Bead>>& vectors, std::int64_t half_extent,
                        std::size_t realloc_every, CountKind kind) {
  LatticeRun run;
  run.counts.reserve(vectors.size());
  const auto start = Clock::now();
  LatticeSpace space(half_extent);
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    const auto& beads = vectors[v];
    const CountReport report =
        kind == CountKind::collisions ? count_collisions(beads, space) : count_contacts(beads, space);
    run.counts.push_back(report.count);
    run.cells_touched += report.cells_touched;
    if (realloc_every != 0 && (v + 1) % realloc_every == 0) {
      space.reallocate();
    } else {
      space.reset_sparse(beads);
    }
  }
  run.wall_ns = elapsed_ns(start);
  run.space_cells = space.cell_count();
  return run;
}

struct OracleRun {
  std::int64_t wall_ns = 0;
  std::vector<std::uint64_t> counts;
};

OracleRun time_oracle(const std::vector<std::vector<Bead>>& vectors) {
  OracleRun run;
  run.counts.reserve(vectors.size());
  const auto start = Clock::now();
  for (const auto& beads : vectors) run.counts.push_back(oracle_collisions(beads));
  run.wall_ns = elapsed_ns(start);
  return run;
}

std::int64_t tight_extent(const std::vector<std::vector<Bead>>& vectors) {
  std::int64_t a = 0;
  for (const auto& v : vectors) {
    for (const Bead& b : v) {
      a = std::max<std::int64_t>({a, std::abs(b.x), std::abs(b.y), std::abs(b.z)});
    }
  }
  return a;
}

std::vector<std::vector<Bead>> make_chains(const BenchConfig& c, std::size_t n, std::uint64_t rep) {
  std::vector<std::vector<Bead>> out;
  out.reserve(c.vectors);
  for (std::size_t v = 0; v < c.vectors; ++v) {
    out.push_back(random_chain(n, derive_seed(c.seed, {kChainStream, n, rep, v})).beads);
  }
  return out;
}

std::uint64_t sum(const std::vector<std::uint64_t>& xs) {
  std::uint64_t s = 0;
  for (auto x : xs) s += x;
  return s;
}

/// Index of the first differing vector, or npos.
std::size_t first_difference(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return i;
  }
  return a.size() == b.size() ? std::string::npos : std::min(a.size(), b.size());
}

std::string mismatch_text(std::size_t v, std::uint64_t got, std::uint64_t want) {
  return "mismatch(vector " + std::to_string(v) + ": " + std::to_string(got) + " vs " +
         std::to_string(want) + ")";
}

BenchRecord skipped_row(const std::string& experiment, const std::string& algorithm, std::size_t n,
                        std::size_t rep, const std::string& reason) {
  std::string clean = reason;
  std::replace(clean.begin(), clean.end(), '\n', ' ');
  return {experiment, algorithm, n, rep, std::nullopt, "skipped(" + clean + ")", 0, 0};
}

/// Runs warm-up (when enabled) and then reps 0..reps-1. The warm-up uses its
/// own input stream so it never aliases a recorded repetition.
template <class Body>
void for_each_rep(const BenchConfig& c, Body&& body) {
  if (c.warmup) body(c.reps, false);
  for (std::size_t rep = 0; rep < c.reps; ++rep) body(rep, true);
}

std::vector<std::size_t> sorted_sizes(const BenchConfig& c) {
  auto sizes = c.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

double mean_time(const std::vector<BenchRecord>& rows, std::string_view algorithm, std::size_t n) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& r : rows) {
    if (r.algorithm == algorithm && r.n == n && r.wall_ns) {
      total += static_cast<double>(*r.wall_ns);
      ++count;
    }
  }
  return count ? total / static_cast<double>(count) : 0.0;
}

}  // namespace

void BenchConfig::validate() const {
  if (sizes.empty()) throw ConfigError("at least one problem size is required");
  if (reps == 0) throw ConfigError("repetitions must be at least 1");
  if (vectors == 0) throw ConfigError("vectors per execution must be at least 1");
  if (workers == 0) throw ConfigError("workers must be at least 1");
  if (half_extent < 0) throw ConfigError("half-extent must be non-negative");
  if (!(box_edge > 0.0) || !std::isfinite(box_edge)) throw ConfigError("box edge must be positive");
  if (realloc_every.empty()) throw ConfigError("at least one reallocation period is required");
  for (double s : std_devs) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("standard deviations must be positive");
  }
  if (experiment == "locality" && std_devs.empty()) {
    throw ConfigError("the locality sweep needs at least one standard deviation");
  }
}

BenchConfig default_config(std::string_view experiment) {
  BenchConfig c;
  c.experiment = std::string(experiment);
  if (experiment == "linear-vs-quadratic") {
    c.sizes = {64, 128, 256, 512, 1024};
  } else if (experiment == "realloc") {
    c.sizes = {512};
    c.vectors = 1000;
    c.realloc_every = {1, 10, 100, 1000, 0};
  } else if (experiment == "locality") {
    c.sizes = {1000};
    c.std_devs = {1, 2, 4, 8, 16, 32, 64};
  } else if (experiment == "spi") {
    c.sizes = {1001, 2048, 4001, 8192};
    c.vectors = 2;
  } else {
    throw ConfigError("unknown experiment '" + std::string(experiment) + "'");
  }
  return c;
}

RunOutcome run_linear_vs_quadratic(const BenchConfig& c) {
  c.validate();
  RunOutcome out;
  const std::string exp = "linear-vs-quadratic";
  const std::size_t k = c.realloc_every.front();
  for (std::size_t n : sorted_sizes(c)) {
    for_each_rep(c, [&](std::size_t rep, bool record) {
      const auto vectors = make_chains(c, n, rep);
      const std::int64_t a = c.half_extent ? c.half_extent : tight_extent(vectors);
      LatticeRun lattice;
      try {
        lattice = time_lattice(vectors, a, k, CountKind::collisions);
      } catch (const ResourceError& e) {
        if (!record) return;
        out.rows.push_back(skipped_row(exp, "lattice", n, rep, e.what()));
        out.resource_failure = true;
        out.notes.push_back("n=" + std::to_string(n) + ": " + e.what());
        return;
      }
      const OracleRun oracle = time_oracle(vectors);
      const std::size_t diff = first_difference(lattice.counts, oracle.counts);
      std::string lattice_result = std::to_string(sum(lattice.counts));
      if (diff != std::string::npos) {
        out.mismatch = true;
        lattice_result = mismatch_text(diff, lattice.counts[diff], oracle.counts[diff]);
        out.notes.push_back("n=" + std::to_string(n) + " rep=" + std::to_string(rep) + ": lattice " +
                            lattice_result);
      }
      if (!record) return;
      out.rows.push_back({exp, "lattice", n, rep, lattice.wall_ns, lattice_result, lattice.cells_touched,
                          lattice.space_cells});
      out.rows.push_back({exp, "brute-force", n, rep, oracle.wall_ns, std::to_string(sum(oracle.counts)), 0, 0});
    });
  }

  double previous = 0.0;
  for (std::size_t n : sorted_sizes(c)) {
    const double lin = mean_time(out.rows, "lattice", n);
    const double quad = mean_time(out.rows, "brute-force", n);
    if (lin <= 0.0 || quad <= 0.0) continue;
    const double speedup = quad / lin;
    out.notes.push_back("n=" + std::to_string(n) + " speedup " + format_double(speedup));
    if (speedup <= previous) {
      out.notes.push_back("flag: speedup did not increase at n=" + std::to_string(n));
    }
    previous = speedup;
  }
  return out;
}

RunOutcome run_realloc_sweep(const BenchConfig& c) {
  c.validate();
  RunOutcome out;
  const std::string exp = "realloc";
  for (std::size_t n : sorted_sizes(c)) {
    for_each_rep(c, [&](std::size_t rep, bool record) {
      const auto vectors = make_chains(c, n, rep);
      const std::int64_t a = c.half_extent ? c.half_extent : tight_extent(vectors);
      std::optional<std::vector<std::uint64_t>> reference;
      for (std::size_t k : c.realloc_every) {
        const std::string alg = "lattice/realloc-every=" + std::to_string(k);
        LatticeRun run;
        try {
          run = time_lattice(vectors, a, k, CountKind::collisions);
        } catch (const ResourceError& e) {
          if (!record) continue;
          out.rows.push_back(skipped_row(exp, alg, n, rep, e.what()));
          out.resource_failure = true;
          continue;
        }
        std::string result = std::to_string(sum(run.counts));
        if (!reference) {
          // Anchor the first period against brute force; the rest against it.
          std::vector<std::uint64_t> oracle;
          for (const auto& v : vectors) oracle.push_back(oracle_collisions(v));
          reference = std::move(oracle);
        }
        const std::size_t diff = first_difference(run.counts, *reference);
        if (diff != std::string::npos) {
          out.mismatch = true;
          result = mismatch_text(diff, run.counts[diff], (*reference)[diff]);
          out.notes.push_back(alg + " n=" + std::to_string(n) + ": " + result);
        }
        if (record) out.rows.push_back({exp, alg, n, rep, run.wall_ns, result, run.cells_touched, run.space_cells});
      }
    });
  }

  // Less frequent reallocation is expected to be faster.
  std::vector<std::size_t> periods;
  for (std::size_t k : c.realloc_every) {
    if (k != 0) periods.push_back(k);
  }
  std::sort(periods.begin(), periods.end());
  if (periods.size() >= 2) {
    for (std::size_t n : sorted_sizes(c)) {
      const double most = mean_time(out.rows, "lattice/realloc-every=" + std::to_string(periods.front()), n);
      const double least = mean_time(out.rows, "lattice/realloc-every=" + std::to_string(periods.back()), n);
      if (most > 0.0 && least > most) {
        out.notes.push_back("flag: n=" + std::to_string(n) + " reallocating every " +
                            std::to_string(periods.back()) + " vectors was slower than every " +
                            std::to_string(periods.front()));
      }
    }
  }
  return out;
}

RunOutcome run_locality_sweep(const BenchConfig& c) {
  c.validate();
  RunOutcome out;
  const std::string exp = "locality";
  const double widest = *std::max_element(c.std_devs.begin(), c.std_devs.end());
  const std::int64_t a =
      c.half_extent ? c.half_extent : std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(4.0 * widest)));
  const std::size_t k = c.realloc_every.front();
  for (std::size_t n : sorted_sizes(c)) {
    for (double sd : c.std_devs) {
      const std::string alg = "lattice/std-dev=" + format_double(sd);
      for_each_rep(c, [&](std::size_t rep, bool record) {
        std::vector<std::vector<Bead>> vectors;
        vectors.reserve(c.vectors);
        for (std::size_t v = 0; v < c.vectors; ++v) {
          const std::uint64_t sd_bits = std::bit_cast<std::uint64_t>(sd);
          vectors.push_back(normal_cloud(n, sd, static_cast<std::int32_t>(std::min<std::int64_t>(a, std::numeric_limits<std::int32_t>::max() - 2)),
                                         derive_seed(c.seed, {kCloudStream, n, sd_bits, rep, v})));
        }
        LatticeRun run;
        try {
          run = time_lattice(vectors, a, k, CountKind::collisions);
        } catch (const ResourceError& e) {
          if (!record) return;
          out.rows.push_back(skipped_row(exp, alg, n, rep, e.what()));
          out.resource_failure = true;
          return;
        }
        std::vector<std::uint64_t> oracle;
        for (const auto& v : vectors) oracle.push_back(oracle_collisions(v));
        std::string result = std::to_string(sum(run.counts));
        const std::size_t diff = first_difference(run.counts, oracle);
        if (diff != std::string::npos) {
          out.mismatch = true;
          result = mismatch_text(diff, run.counts[diff], oracle[diff]);
          out.notes.push_back(alg + " n=" + std::to_string(n) + ": " + result);
        }
        if (record) out.rows.push_back({exp, alg, n, rep, run.wall_ns, result, run.cells_touched, run.space_cells});
      });
    }
    if (c.std_devs.size() >= 2) {
      const double narrow = *std::min_element(c.std_devs.begin(), c.std_devs.end());
      const double t_narrow = mean_time(out.rows, "lattice/std-dev=" + format_double(narrow), n);
      const double t_wide = mean_time(out.rows, "lattice/std-dev=" + format_double(widest), n);
      if (t_narrow > 0.0 && t_wide > 0.0 && t_wide < 0.5 * t_narrow) {
        out.notes.push_back("flag: n=" + std::to_string(n) + " widest spread ran in under half the time of the narrowest");
      }
    }
  }
  return out;
}

RunOutcome run_spi_compare(const BenchConfig& c) {
  c.validate();
  RunOutcome out;
  const std::string exp = "spi";
  std::vector<Schedule> schedules;
  if (c.schedule) {
    schedules.push_back(*c.schedule);
  } else {
    schedules = {Schedule::standard, Schedule::balanced};
  }
  auto indicator = [](const Sphere& a, const Sphere& b) { return collision_indicator(a, b); };
  for (std::size_t n : sorted_sizes(c)) {
    for_each_rep(c, [&](std::size_t rep, bool record) {
      std::vector<std::vector<Sphere>> sets;
      for (std::size_t v = 0; v < c.vectors; ++v) {
        sets.push_back(random_spheres(n, c.box_edge, derive_seed(c.seed, {kSphereStream, n, rep, v})));
      }
      std::optional<std::uint64_t> reference;
      for (Schedule s : schedules) {
        const std::string alg = "spi-" + std::string(to_string(s));
        std::uint64_t total = 0;
        std::vector<std::uint64_t> iterations(c.workers, 0);
        const auto start = Clock::now();
        for (const auto& spheres : sets) {
          const auto r = spi_parallel(std::span<const Sphere>(spheres), indicator, c.workers, s);
          total += r.total;
          for (std::size_t w = 0; w < c.workers; ++w) iterations[w] += r.worker_iterations[w];
        }
        const std::int64_t ns = elapsed_ns(start);
        std::string result = std::to_string(total);
        if (!reference) {
          reference = total;
        } else if (*reference != total) {
          out.mismatch = true;
          result = "mismatch(" + std::to_string(total) + " vs " + std::to_string(*reference) + ")";
          out.notes.push_back(alg + " n=" + std::to_string(n) + ": " + result);
        }
        if (!record) continue;
        out.rows.push_back({exp, alg, n, rep, ns, result, 0, 0});
        if (rep == 0) {
          const auto [lo, hi] = std::minmax_element(iterations.begin(), iterations.end());
          out.rows.push_back({exp, alg + ":depth", n, rep, std::nullopt,
                              std::to_string(schedule_depth(s, n)), 0, 0});
          out.rows.push_back({exp, alg + ":worker-spread", n, rep, std::nullopt,
                              std::to_string((*hi - *lo) / std::max<std::size_t>(c.vectors, 1)), 0, 0});
          if (s == Schedule::balanced) {
            const schedule::PairSchedule sched(std::max<std::size_t>(n, 1));
            out.rows.push_back({exp, alg + ":depth-spread", n, rep, std::nullopt,
                                std::to_string(sched.max_steps() - sched.min_steps()), 0, 0});
          }
        }
      }
    });
  }
  for (std::size_t n : sorted_sizes(c)) {
    const double st = mean_time(out.rows, "spi-standard", n);
    const double ba = mean_time(out.rows, "spi-balanced", n);
    if (st > 0.0 && ba > 0.0) {
      out.notes.push_back("n=" + std::to_string(n) + " standard/balanced time ratio " + format_double(st / ba));
    }
  }
  return out;
}

RunOutcome run_experiment(const BenchConfig& config) {
  if (config.experiment == "linear-vs-quadratic") return run_linear_vs_quadratic(config);
  if (config.experiment == "realloc") return run_realloc_sweep(config);
  if (config.experiment == "locality") return run_locality_sweep(config);
  if (config.experiment == "spi") return run_spi_compare(config);
  throw ConfigError("unknown experiment '" + config.experiment + "'");
}

}  // namespace pairwise::bench
