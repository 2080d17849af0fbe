#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <span>
#include <vector>

namespace pairwise {

/// A punctual object on the integer lattice.
struct Bead {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  friend bool operator==(const Bead&, const Bead&) = default;
};

/// Result of one lattice count.
///
/// `accumulator` is the raw sum before any halving: for contacts it is the
/// doubled pair count (always even), for collisions it equals `count`.
///
/// `cells_touched` bounds the number of distinct cells the call accessed:
/// the distinct cells it wrote, plus (contacts only) every neighbor read that
/// landed on an unoccupied cell.
struct CountReport {
  std::uint64_t count = 0;
  std::uint64_t beads_processed = 0;
  std::uint64_t cells_touched = 0;
  std::uint64_t accumulator = 0;
};

/// Dense occupancy counts over the cube {-a, ..., a}^3.
///
/// Storage is one flat row-major block with one cell of zero padding on every
/// face, so logical coordinate (x, y, z) lives at physical
/// (x + a + 1, y + a + 1, z + a + 1) and neighbor reads of boundary beads need
/// no bounds checks. The block comes from calloc, so pages that are never
/// written are never backed by physical memory.
///
/// Every cell that becomes nonzero is recorded in a touched list; resetting
/// walks that list instead of the whole block.
///
/// Not thread-safe. One instance per thread.
class LatticeSpace {
public:
  using Cell = std::uint32_t;

  /// Allocates a zeroed space. Throws SizingError if the half-extent is
  /// negative or the block cannot be indexed, AllocationError if the
  /// allocator refuses it.
  explicit LatticeSpace(std::int64_t half_extent);

  LatticeSpace(LatticeSpace&&) noexcept = default;
  LatticeSpace& operator=(LatticeSpace&&) noexcept = default;

  /// (2a+1)^3. Throws SizingError on overflow.
  static std::uint64_t interior_cells(std::int64_t half_extent);
  /// (2a+3)^3, interior plus padding. Throws SizingError on overflow.
  static std::uint64_t total_cells(std::int64_t half_extent);

  std::int32_t half_extent() const noexcept { return half_extent_; }
  std::size_t side() const noexcept { return side_; }
  std::size_t cell_count() const noexcept { return cell_count_; }

  bool contains(const Bead& b) const noexcept;

  /// Occupancy at a logical coordinate; the padding ring [-a-1, a+1] is
  /// readable. Throws CoordinateRangeError beyond it.
  Cell at(std::int64_t x, std::int64_t y, std::int64_t z) const;

  /// Flat indices of cells written since the last reset.
  std::span<const std::size_t> touched() const noexcept { return touched_; }

  /// True when no cell has been written since the last reset or allocation.
  bool clean() const noexcept { return touched_.empty(); }

  /// Scans the whole block. O(a^3); meant for tests.
  bool all_zero() const noexcept;

  /// Frees the block and acquires a fresh zeroed one of the same size.
  void reallocate();

  /// Zeroes every cell on the touched list, plus the cell of any bead in
  /// `beads` that is still nonzero. Returns the number of cell writes.
  std::size_t reset_sparse(std::span<const Bead> beads);

  /// Raw view used by the counters. Index with flat_index().
  Cell* data() noexcept { return data_.get(); }
  const Cell* data() const noexcept { return data_.get(); }

  std::size_t flat_index(const Bead& b) const noexcept {
    const auto off = static_cast<std::int64_t>(half_extent_) + 1;
    return (static_cast<std::size_t>(b.x + off) * side_ + static_cast<std::size_t>(b.y + off)) * side_ +
           static_cast<std::size_t>(b.z + off);
  }

  /// Records that `index` went from zero to nonzero.
  void mark_touched(std::size_t index) { touched_.push_back(index); }

private:
  struct FreeDeleter {
    void operator()(Cell* p) const noexcept { std::free(p); }
  };

  void allocate();

  std::int32_t half_extent_ = 0;
  std::size_t side_ = 0;
  std::size_t cell_count_ = 0;
  std::unique_ptr<Cell[], FreeDeleter> data_;
  std::vector<std::size_t> touched_;
};

/// Throws CoordinateRangeError naming the first bead outside the space.
void check_bounds(std::span<const Bead> beads, const LatticeSpace& space);

/// Number of unordered pairs of beads sharing a coordinate, in one pass:
/// each bead adds the occupancy already at its cell, then increments it.
///
/// The space must be clean. It is left populated; call reset_sparse() before
/// reusing it.
CountReport count_collisions(std::span<const Bead> beads, LatticeSpace& space);

/// Number of unordered pairs of beads one unit apart along a single axis,
/// with multiplicity. Beads sharing a cell are not contacts.
///
/// Places all beads, then sums the six axial neighbor occupancies of every
/// bead and halves the total. Same space contract as count_collisions().
CountReport count_contacts(std::span<const Bead> beads, LatticeSpace& space);

/// Free-function form of LatticeSpace::reset_sparse().
std::size_t reset_sparse(LatticeSpace& space, std::span<const Bead> beads);

/// Exhaustive i < j comparison.
std::uint64_t oracle_collisions(std::span<const Bead> beads);
std::uint64_t oracle_contacts(std::span<const Bead> beads);

/// True when a and b differ by exactly one unit along exactly one axis.
bool axial_neighbors(const Bead& a, const Bead& b) noexcept;

namespace detail {
/// Increments an occupancy counter, throwing CounterOverflowError at the top.
void checked_increment(LatticeSpace::Cell& cell);
}  // namespace detail

}  // namespace pairwise
