#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pairwise/bench.hpp"
#include "pairwise/generators.hpp"
#include "pairwise/lattice_counter.hpp"
#include "pairwise/pair_schedule.hpp"
#include "pairwise/random.hpp"
#include "pairwise/spi_engine.hpp"

namespace pairwise::bench {

namespace {

constexpr std::string_view kExperiment = "verify";

class Suite {
public:
  explicit Suite(VerifyReport& report) : report_(report) {}

  void row(std::string algorithm, std::size_t n, std::string result, std::uint64_t touched = 0,
           std::uint64_t cells = 0) {
    report_.outcome.rows.push_back(
        {std::string(kExperiment), std::move(algorithm), n, 0, std::nullopt, std::move(result), touched, cells});
  }

  /// Records a failure; returns the text to place in the result column.
  std::string fail(const std::string& check, std::size_t n, const std::string& detail) {
    report_.failures.push_back(check + " n=" + std::to_string(n) + ": " + detail);
    report_.outcome.mismatch = true;
    return "mismatch(" + detail + ")";
  }

private:
  VerifyReport& report_;
};

std::int32_t tight(std::span<const Bead> beads) {
  std::int32_t a = 0;
  for (const Bead& b : beads) a = std::max({a, std::abs(b.x), std::abs(b.y), std::abs(b.z)});
  return a;
}

/// Counts every vector into one reused space and compares against brute
/// force, checking the touch bounds, contact parity and sparse reset on the
/// way.
void check_lattice_family(Suite& suite, const std::string& family, std::size_t n,
                          const std::vector<std::vector<Bead>>& vectors) {
  std::int32_t a = 0;
  for (const auto& v : vectors) a = std::max(a, tight(v));
  LatticeSpace space(a);

  for (const bool contacts : {false, true}) {
    const std::string name = std::string(contacts ? "contacts-" : "collisions-") + family;
    std::uint64_t total = 0;
    std::uint64_t touched = 0;
    std::string error;
    for (std::size_t k = 0; k < vectors.size() && error.empty(); ++k) {
      const auto& beads = vectors[k];
      const CountReport r = contacts ? count_contacts(beads, space) : count_collisions(beads, space);
      const std::uint64_t want = contacts ? oracle_contacts(beads) : oracle_collisions(beads);
      const std::uint64_t bound = (contacts ? 7u : 1u) * beads.size();
      if (r.count != want) {
        error = "vector " + std::to_string(k) + ": lattice " + std::to_string(r.count) + " vs oracle " +
                std::to_string(want);
      } else if (contacts && r.accumulator % 2 != 0) {
        error = "vector " + std::to_string(k) + ": odd contact accumulator";
      } else if (r.cells_touched > bound) {
        error = "vector " + std::to_string(k) + ": touched " + std::to_string(r.cells_touched) + " cells";
      }
      const std::size_t writes = space.reset_sparse(beads);
      if (error.empty() && writes > 7 * beads.size()) {
        error = "vector " + std::to_string(k) + ": reset wrote " + std::to_string(writes) + " cells";
      }
      if (error.empty() && k == 0 && !space.all_zero()) {
        error = "space not zero after sparse reset";
      }
      total += r.count;
      touched += r.cells_touched;
    }
    suite.row(name, n, error.empty() ? std::to_string(total) : suite.fail(name, n, error), touched,
              space.cell_count());
  }
}

void check_sparse_reset(Suite& suite, std::size_t n, std::uint64_t seed) {
  const std::string name = "sparse-reset";
  const auto first = random_chain(n, derive_seed(seed, {11, n, 0}));
  const auto second = random_chain(n, derive_seed(seed, {11, n, 1}));
  const std::int32_t a = std::max(first.half_extent, second.half_extent);
  LatticeSpace reused(a);
  std::uint64_t total = 0;
  std::string error;
  for (const bool contacts : {false, true}) {
    auto count = [contacts](std::span<const Bead> b, LatticeSpace& s) {
      return contacts ? count_contacts(b, s) : count_collisions(b, s);
    };
    count(first.beads, reused);
    reused.reset_sparse(first.beads);
    const auto after_reset = count(second.beads, reused);
    reused.reset_sparse(second.beads);
    LatticeSpace fresh(a);
    const auto on_fresh = count(second.beads, fresh);
    if (after_reset.count != on_fresh.count && error.empty()) {
      error = std::string(contacts ? "contacts " : "collisions ") + std::to_string(after_reset.count) +
              " after reset vs " + std::to_string(on_fresh.count) + " fresh";
    }
    total += after_reset.count;
  }
  suite.row(name, n, error.empty() ? std::to_string(total) : suite.fail(name, n, error), 0,
            reused.cell_count());
}

/// Marks pairs in an n x n table; returns "" if pairs(n) is exactly the set
/// of unordered pairs.
std::string schedule_coverage_error(std::size_t n, std::vector<std::uint8_t>& seen) {
  seen.assign(n * n, 0);
  const auto emitted = schedule::pairs(n);
  if (emitted.size() != schedule::pair_count(n)) {
    return std::to_string(emitted.size()) + " pairs emitted";
  }
  for (const auto& p : emitted) {
    if (p.first >= n || p.second >= n || p.first == p.second) return "degenerate pair";
    const std::size_t lo = std::min(p.first, p.second);
    const std::size_t hi = std::max(p.first, p.second);
    if (seen[lo * n + hi]++) return "duplicate (" + std::to_string(lo) + ", " + std::to_string(hi) + ")";
  }
  // Count equals n(n-1)/2 and nothing repeats, so every pair is present.
  return "";
}

std::string balance_error(std::size_t n) {
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = schedule::steps_for(n, i);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    sum += s;
  }
  if (sum != schedule::pair_count(n)) return "steps sum to " + std::to_string(sum);
  const std::size_t want_spread = (n % 2 == 0 && n >= 2) ? 1 : 0;
  if (hi - lo != want_spread) return "spread " + std::to_string(hi - lo);
  return "";
}

std::string violation_error(std::size_t n, std::vector<std::uint8_t>& seen) {
  // seen holds pairs(n) from schedule_coverage_error.
  const std::size_t s = schedule::first_violation_step(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = schedule::reach(n, i, s);
    if (seen[std::min(i, j) * n + std::max(i, j)]) return "";
  }
  return "step " + std::to_string(s) + " adds no duplicate";
}

std::string reciprocity_error(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = j - i;
      // i reaches j at step d, j reaches i at step n - d.
      const bool by_i = d <= schedule::steps_for(n, i);
      const bool by_j = n - d <= schedule::steps_for(n, j);
      const bool expect_i = d <= (n - 1) / 2;
      const bool expect_j = d >= (n + 1) / 2;
      if (by_i != expect_i || by_j != expect_j || by_i == by_j) {
        return "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      }
      if (by_i && schedule::reach(n, i, d) != j) return "reach mismatch at (" + std::to_string(i) + ")";
      if (by_j && schedule::reach(n, j, n - d) != i) return "reach mismatch at (" + std::to_string(j) + ")";
    }
  }
  return "";
}

void check_schedule(Suite& suite, std::size_t max_n) {
  std::vector<std::uint8_t> seen;
  std::string coverage, balance, violation, reciprocity;
  std::uint64_t pairs_checked = 0;
  std::size_t odd_checked = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (coverage.empty()) {
      const std::string e = schedule_coverage_error(n, seen);
      if (!e.empty()) coverage = "n=" + std::to_string(n) + " " + e;
      pairs_checked += schedule::pair_count(n);
    }
    if (balance.empty()) {
      const std::string e = balance_error(n);
      if (!e.empty()) balance = "n=" + std::to_string(n) + " " + e;
    }
    if (n >= 3 && n % 2 == 1) {
      ++odd_checked;
      if (violation.empty() && coverage.empty()) {
        const std::string e = violation_error(n, seen);
        if (!e.empty()) violation = "n=" + std::to_string(n) + " " + e;
      }
      if (reciprocity.empty() && n <= 257) {
        const std::string e = reciprocity_error(n);
        if (!e.empty()) reciprocity = "n=" + std::to_string(n) + " " + e;
      }
    }
  }
  auto emit = [&](const std::string& name, const std::string& error, std::uint64_t value) {
    suite.row(name, max_n, error.empty() ? std::to_string(value) : suite.fail(name, max_n, error));
  };
  emit("schedule-completeness", coverage, pairs_checked);
  emit("schedule-balance", balance, max_n);
  emit("violation-boundary", violation, odd_checked);
  emit("reciprocity-split", reciprocity, std::min<std::size_t>(max_n, 257));
}

void check_spi(Suite& suite, std::size_t n, std::uint64_t seed) {
  const double edge = std::max(1.0, std::cbrt(static_cast<double>(n)));
  const auto spheres = random_spheres(n, edge, derive_seed(seed, {13, n}));
  const std::span<const Sphere> view(spheres);
  auto indicator = [](const Sphere& a, const Sphere& b) { return collision_indicator(a, b); };
  auto gaussian = [](const Sphere& a, const Sphere& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::exp(-(dx * dx + dy * dy + dz * dz));
  };

  const auto reference = spi_standard(view, indicator);
  const auto real_reference = spi_standard(view, gaussian);
  std::string error;
  std::string real_error;
  if (reference.pairs_evaluated != schedule::pair_count(n)) error = "standard evaluated wrong pair count";
  for (const Schedule s : {Schedule::standard, Schedule::balanced}) {
    for (const std::size_t workers : {1, 2, 3, 7, 8}) {
      const auto r = spi_parallel(view, indicator, workers, s);
      if (error.empty() && (r.total != reference.total || r.pairs_evaluated != reference.pairs_evaluated)) {
        error = std::string(to_string(s)) + " x" + std::to_string(workers) + " total " + std::to_string(r.total) +
                " vs " + std::to_string(reference.total);
      }
      const auto rr = spi_parallel(view, gaussian, workers, s);
      if (real_error.empty() && !totals_agree(rr.total, real_reference.total, rr.pairs_evaluated)) {
        real_error = std::string(to_string(s)) + " x" + std::to_string(workers) + " real total disagrees";
      }
    }
  }
  const auto balanced = spi_balanced(view, indicator);
  if (error.empty() && n >= 3 &&
      !(balanced.depth_per_worker == n / 2 && balanced.depth_per_worker < reference.depth_per_worker &&
        reference.depth_per_worker == n - 1)) {
    error = "depth " + std::to_string(balanced.depth_per_worker) + " vs " + std::to_string(reference.depth_per_worker);
  }
  suite.row("spi-equivalence", n, error.empty() ? std::to_string(reference.total) : suite.fail("spi-equivalence", n, error),
            0, 0);
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, real_reference.total).ptr;
  suite.row("spi-real-valued", n,
            real_error.empty() ? std::string(buf, end)
                               : suite.fail("spi-real-valued", n, real_error),
            0, 0);
}

}  // namespace

VerifyLevel parse_verify_level(std::string_view text) {
  if (text == "quick") return VerifyLevel::quick;
  if (text == "full") return VerifyLevel::full;
  throw ConfigError("unknown verify level '" + std::string(text) + "'");
}

VerifyReport verify(VerifyLevel level, std::uint64_t seed) {
  VerifyReport report;
  Suite suite(report);
  const bool full = level == VerifyLevel::full;
  const std::size_t max_n = full ? 2000 : 257;
  const std::size_t chains_per_size = full ? 200 : 40;

  std::vector<std::size_t> chain_sizes = {0, 1, 2, 3, 16, 64, 257};
  if (full) {
    chain_sizes.push_back(1024);
    chain_sizes.push_back(2000);
  }
  for (std::size_t n : chain_sizes) {
    std::vector<std::vector<Bead>> vectors;
    for (std::size_t k = 0; k < chains_per_size; ++k) {
      vectors.push_back(random_chain(n, derive_seed(seed, {10, n, k})).beads);
    }
    check_lattice_family(suite, "chain", n, vectors);
  }

  std::vector<std::size_t> cloud_sizes = {64, 257};
  if (full) cloud_sizes.push_back(1000);
  for (std::size_t n : cloud_sizes) {
    std::vector<std::vector<Bead>> vectors;
    std::size_t k = 0;
    for (double sd : {1e-9, 1.0, 5.0, 50.0}) {
      for (std::size_t rep = 0; rep < 5; ++rep, ++k) {
        vectors.push_back(normal_cloud(n, sd, 64, derive_seed(seed, {12, n, k})));
      }
    }
    check_lattice_family(suite, "cloud", n, vectors);
  }

  {
    std::vector<std::vector<Bead>> vectors;
    vectors.emplace_back();                                      // empty
    vectors.emplace_back(100, Bead{0, 0, 0});                    // all coincident
    vectors.emplace_back(7, Bead{3, -2, 1});
    std::vector<Bead> cube;                                      // all distinct, dense
    for (int x = -2; x <= 2; ++x)
      for (int y = -2; y <= 2; ++y)
        for (int z = -2; z <= 2; ++z) cube.push_back({x, y, z});
    vectors.push_back(cube);
    std::vector<Bead> star = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    vectors.push_back(star);
    std::vector<Bead> stacked = {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}};
    vectors.push_back(stacked);
    check_lattice_family(suite, "adversarial", 125, vectors);
  }

  for (std::size_t n : {16, 64, 257}) check_sparse_reset(suite, n, seed);

  check_schedule(suite, max_n);

  std::vector<std::size_t> spi_sizes = {0, 1, 2, 3, 4, 5, 8, 16, 17, 31, 64, 100, 128, 257};
  if (full) {
    for (std::size_t n : {511, 512, 1000, 2000}) spi_sizes.push_back(n);
  }
  for (std::size_t n : spi_sizes) check_spi(suite, n, seed);

  return report;
}

}  // namespace pairwise::bench
