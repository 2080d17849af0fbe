#include "pairwise/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pairwise/errors.hpp"
#include "pairwise/random.hpp"

namespace pairwise {

Chain random_chain(std::size_t n, std::uint64_t seed) {
  Chain chain;
  if (n == 0) return chain;
  chain.beads.reserve(n);
  SplitMix64 rng(seed);
  Bead cur{0, 0, 0};
  chain.beads.push_back(cur);
  std::int32_t extent = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const auto dir = rng.below(6);
    const std::int32_t delta = (dir & 1) ? -1 : 1;
    switch (dir >> 1) {
      case 0: cur.x += delta; break;
      case 1: cur.y += delta; break;
      default: cur.z += delta; break;
    }
    extent = std::max({extent, std::abs(cur.x), std::abs(cur.y), std::abs(cur.z)});
    chain.beads.push_back(cur);
  }
  chain.half_extent = extent;
  return chain;
}

std::vector<Bead> normal_cloud(std::size_t n, double std_dev, std::int32_t half_extent, std::uint64_t seed) {
  if (!(std_dev > 0.0) || !std::isfinite(std_dev)) {
    throw DomainError("standard deviation must be positive and finite");
  }
  if (half_extent < 0) throw DomainError("half-extent must be non-negative");

  SplitMix64 rng(seed);
  // Box-Muller yields normals in pairs; keep the spare one.
  bool have_spare = false;
  double spare = 0.0;
  auto normal = [&]() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double u1 = 1.0 - rng.uniform();  // (0, 1]
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare = r * std::sin(theta);
    have_spare = true;
    return r * std::cos(theta);
  };
  const double lim = half_extent;
  auto coord = [&]() {
    const double v = std::clamp(std::round(normal() * std_dev), -lim, lim);
    return static_cast<std::int32_t>(v);
  };

  std::vector<Bead> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::int32_t x = coord();
    const std::int32_t y = coord();
    const std::int32_t z = coord();
    out.push_back({x, y, z});
  }
  return out;
}

std::vector<Sphere> random_spheres(std::size_t n, double box_edge, std::uint64_t seed) {
  if (!(box_edge > 0.0) || !std::isfinite(box_edge)) {
    throw DomainError("box edge must be positive and finite");
  }
  SplitMix64 rng(seed);
  std::vector<Sphere> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = rng.uniform() * box_edge;
    const double y = rng.uniform() * box_edge;
    const double z = rng.uniform() * box_edge;
    out.push_back({x, y, z});
  }
  return out;
}

}  // namespace pairwise
