#include "pairwise/lattice_counter.hpp"

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "pairwise/errors.hpp"

namespace pairwise {

namespace {

std::uint64_t checked_cube(std::int64_t edge) {
  const auto e = static_cast<unsigned __int128>(edge);
  const unsigned __int128 cube = e * e * e;
  if (cube > std::numeric_limits<std::uint64_t>::max()) {
    throw SizingError("lattice edge " + std::to_string(edge) + " overflows the cell count");
  }
  return static_cast<std::uint64_t>(cube);
}

void check_half_extent(std::int64_t half_extent) {
  if (half_extent < 0) {
    throw SizingError("negative half-extent " + std::to_string(half_extent));
  }
  // Coordinates and their padded neighbors must fit in int32.
  if (half_extent > std::numeric_limits<std::int32_t>::max() - 2) {
    throw SizingError("half-extent " + std::to_string(half_extent) + " exceeds 32-bit coordinates");
  }
}

std::string describe(const Bead& b) {
  return "(" + std::to_string(b.x) + ", " + std::to_string(b.y) + ", " + std::to_string(b.z) + ")";
}

}  // namespace

std::uint64_t LatticeSpace::interior_cells(std::int64_t half_extent) {
  check_half_extent(half_extent);
  return checked_cube(2 * half_extent + 1);
}

std::uint64_t LatticeSpace::total_cells(std::int64_t half_extent) {
  check_half_extent(half_extent);
  return checked_cube(2 * half_extent + 3);
}

LatticeSpace::LatticeSpace(std::int64_t half_extent) {
  const std::uint64_t cells = total_cells(half_extent);
  constexpr auto max_cells =
      static_cast<std::uint64_t>(std::numeric_limits<std::ptrdiff_t>::max()) / sizeof(Cell);
  if (cells > max_cells) {
    throw SizingError("lattice of half-extent " + std::to_string(half_extent) + " needs " +
                      std::to_string(cells) + " cells, more than the address space holds");
  }
  half_extent_ = static_cast<std::int32_t>(half_extent);
  side_ = static_cast<std::size_t>(2 * half_extent + 3);
  cell_count_ = static_cast<std::size_t>(cells);
  allocate();
}

void LatticeSpace::allocate() {
  data_.reset();
  auto* raw = static_cast<Cell*>(std::calloc(cell_count_, sizeof(Cell)));
  if (raw == nullptr) {
    throw AllocationError("could not allocate " + std::to_string(cell_count_) +
                          " lattice cells for half-extent " + std::to_string(half_extent_));
  }
  data_.reset(raw);
  touched_.clear();
}

void LatticeSpace::reallocate() { allocate(); }

bool LatticeSpace::contains(const Bead& b) const noexcept {
  const std::int32_t a = half_extent_;
  return b.x >= -a && b.x <= a && b.y >= -a && b.y <= a && b.z >= -a && b.z <= a;
}

LatticeSpace::Cell LatticeSpace::at(std::int64_t x, std::int64_t y, std::int64_t z) const {
  const std::int64_t lim = static_cast<std::int64_t>(half_extent_) + 1;
  auto inside = [lim](std::int64_t c) { return c >= -lim && c <= lim; };
  if (!inside(x) || !inside(y) || !inside(z)) {
    throw CoordinateRangeError(0, "cell (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                                      std::to_string(z) + ") lies outside the padded lattice");
  }
  const auto px = static_cast<std::size_t>(x + lim);
  const auto py = static_cast<std::size_t>(y + lim);
  const auto pz = static_cast<std::size_t>(z + lim);
  return data_[(px * side_ + py) * side_ + pz];
}

bool LatticeSpace::all_zero() const noexcept {
  for (std::size_t i = 0; i < cell_count_; ++i) {
    if (data_[i] != 0) return false;
  }
  return true;
}

std::size_t LatticeSpace::reset_sparse(std::span<const Bead> beads) {
  std::size_t writes = 0;
  Cell* cells = data_.get();
  for (std::size_t idx : touched_) {
    cells[idx] = 0;
    ++writes;
  }
  touched_.clear();
  for (const Bead& b : beads) {
    if (!contains(b)) continue;
    Cell& c = cells[flat_index(b)];
    if (c != 0) {
      c = 0;
      ++writes;
    }
  }
  return writes;
}

void check_bounds(std::span<const Bead> beads, const LatticeSpace& space) {
  for (std::size_t i = 0; i < beads.size(); ++i) {
    if (!space.contains(beads[i])) {
      throw CoordinateRangeError(i, "bead " + std::to_string(i) + " at " + describe(beads[i]) +
                                        " lies outside [-" + std::to_string(space.half_extent()) +
                                        ", " + std::to_string(space.half_extent()) + "]^3");
    }
  }
}

namespace detail {
void checked_increment(LatticeSpace::Cell& cell) {
  if (cell == std::numeric_limits<LatticeSpace::Cell>::max()) {
    throw CounterOverflowError("lattice cell occupancy exceeds 32 bits");
  }
  ++cell;
}
}  // namespace detail

namespace {
void require_clean(const LatticeSpace& space) {
  if (!space.clean()) {
    throw PreconditionError("lattice space holds counts from a previous vector; reset it first");
  }
}
}  // namespace

CountReport count_collisions(std::span<const Bead> beads, LatticeSpace& space) {
  require_clean(space);
  check_bounds(beads, space);

  CountReport report;
  report.beads_processed = beads.size();
  LatticeSpace::Cell* cells = space.data();
  std::uint64_t collisions = 0;
  for (const Bead& b : beads) {
    const std::size_t idx = space.flat_index(b);
    LatticeSpace::Cell& cell = cells[idx];
    collisions += cell;
    if (cell == 0) {
      space.mark_touched(idx);
      ++report.cells_touched;
    }
    detail::checked_increment(cell);
  }
  report.count = collisions;
  report.accumulator = collisions;
  return report;
}

CountReport count_contacts(std::span<const Bead> beads, LatticeSpace& space) {
  require_clean(space);
  check_bounds(beads, space);

  CountReport report;
  report.beads_processed = beads.size();
  LatticeSpace::Cell* cells = space.data();
  for (const Bead& b : beads) {
    const std::size_t idx = space.flat_index(b);
    if (cells[idx] == 0) {
      space.mark_touched(idx);
      ++report.cells_touched;
    }
    detail::checked_increment(cells[idx]);
  }

  const std::size_t dz = 1;
  const std::size_t dy = space.side();
  const std::size_t dx = space.side() * space.side();
  std::uint64_t contacts = 0;
  std::uint64_t empty_reads = 0;
  for (const Bead& b : beads) {
    const std::size_t idx = space.flat_index(b);
    const LatticeSpace::Cell n[6] = {cells[idx + dx], cells[idx - dx], cells[idx + dy],
                                     cells[idx - dy], cells[idx + dz], cells[idx - dz]};
    for (LatticeSpace::Cell c : n) {
      contacts += c;
      empty_reads += (c == 0);
    }
  }
  report.cells_touched += empty_reads;
  report.accumulator = contacts;
  if (contacts % 2 != 0) {
    throw PreconditionError("odd contact accumulator " + std::to_string(contacts) +
                            "; the space was not clean");
  }
  report.count = contacts / 2;
  return report;
}

std::size_t reset_sparse(LatticeSpace& space, std::span<const Bead> beads) {
  return space.reset_sparse(beads);
}

bool axial_neighbors(const Bead& a, const Bead& b) noexcept {
  const std::int64_t dx = std::llabs(static_cast<std::int64_t>(a.x) - b.x);
  const std::int64_t dy = std::llabs(static_cast<std::int64_t>(a.y) - b.y);
  const std::int64_t dz = std::llabs(static_cast<std::int64_t>(a.z) - b.z);
  return dx + dy + dz == 1;
}

std::uint64_t oracle_collisions(std::span<const Bead> beads) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < beads.size(); ++i) {
    for (std::size_t j = i + 1; j < beads.size(); ++j) {
      total += (beads[i] == beads[j]);
    }
  }
  return total;
}

std::uint64_t oracle_contacts(std::span<const Bead> beads) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < beads.size(); ++i) {
    for (std::size_t j = i + 1; j < beads.size(); ++j) {
      total += axial_neighbors(beads[i], beads[j]);
    }
  }
  return total;
}

}  // namespace pairwise
