#pragma once

// Seedable inputs for the three experiment families: random chains on the
// lattice, normally distributed lattice clouds, and uniform sphere boxes.
// All outputs are pure functions of (parameters, seed) and are identical
// across platforms.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pairwise/lattice_counter.hpp"
#include "pairwise/spi_engine.hpp"

namespace pairwise {

struct Chain {
  std::vector<Bead> beads;
  /// Largest absolute coordinate in `beads`; a lattice of this half-extent
  /// holds the whole chain.
  std::int32_t half_extent = 0;
};

/// Starts at the origin; each next bead is one unit from its predecessor in
/// one of the six axial directions, chosen uniformly. n == 0 gives an empty
/// chain.
Chain random_chain(std::size_t n, std::uint64_t seed);

/// Coordinates drawn from Normal(0, std_dev) by Box-Muller, rounded to the
/// nearest integer (ties away from zero) and clamped to [-half_extent,
/// half_extent]. Throws DomainError unless std_dev is positive and finite and
/// half_extent is non-negative.
std::vector<Bead> normal_cloud(std::size_t n, double std_dev, std::int32_t half_extent, std::uint64_t seed);

/// Centers uniform in [0, box_edge)^3. Throws DomainError unless box_edge is
/// positive and finite.
std::vector<Sphere> random_spheres(std::size_t n, double box_edge, std::uint64_t seed);

}  // namespace pairwise
