#pragma once

// Shared generators and independent oracles for the test suites. Nothing here
// calls into the code paths it is used to check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "pairwise/lattice_counter.hpp"
#include "pairwise/random.hpp"

namespace pairwise::testing {

/// Beads uniform in [-a, a]^3.
inline std::vector<Bead> uniform_beads(std::size_t n, std::int32_t a, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Bead> out;
  out.reserve(n);
  const auto span = static_cast<std::uint64_t>(2 * a + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto x = static_cast<std::int32_t>(rng.below(span)) - a;
    const auto y = static_cast<std::int32_t>(rng.below(span)) - a;
    const auto z = static_cast<std::int32_t>(rng.below(span)) - a;
    out.push_back({x, y, z});
  }
  return out;
}

inline std::int32_t max_abs(const std::vector<Bead>& beads) {
  std::int32_t a = 0;
  for (const Bead& b : beads) a = std::max({a, std::abs(b.x), std::abs(b.y), std::abs(b.z)});
  return a;
}

/// {(i, j) : 0 <= i < j < n} by double loop.
inline std::set<std::pair<std::size_t, std::size_t>> all_unordered_pairs(std::size_t n) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.emplace(i, j);
  return out;
}

}  // namespace pairwise::testing
