#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "pairwise/errors.hpp"
#include "pairwise/generators.hpp"
#include "pairwise/lattice_counter.hpp"
#include "test_support.hpp"

using namespace pairwise;

TEST_CASE("lattice sizing") {
  SUBCASE("half-extent 0 has one interior cell and a padding ring") {
    LatticeSpace s(0);
    CHECK(LatticeSpace::interior_cells(0) == 1);
    CHECK(s.cell_count() == 27);
    CHECK(s.side() == 3);
    CHECK(s.clean());
    CHECK(s.all_zero());
  }
  SUBCASE("interior cell count is (2a+1)^3") {
    CHECK(LatticeSpace::interior_cells(1) == 27);
    CHECK(LatticeSpace::total_cells(1) == 125);
    CHECK(LatticeSpace::interior_cells(960) == 7088952961ULL);  // 1921^3
    CHECK(LatticeSpace::total_cells(960) == 7111117467ULL);     // 1923^3
  }
  SUBCASE("invalid sizes") {
    CHECK_THROWS_AS(LatticeSpace(-1), SizingError);
    CHECK_THROWS_AS(LatticeSpace::interior_cells(std::int64_t{1} << 40), SizingError);
    CHECK_THROWS_AS(LatticeSpace(std::int64_t{1} << 40), SizingError);
    CHECK_THROWS_AS(LatticeSpace(std::numeric_limits<std::int32_t>::max()), SizingError);
  }
}

TEST_CASE("padding is readable and stays zero") {
  LatticeSpace s(2);
  const std::vector<Bead> corner = {{2, 2, 2}, {-2, -2, -2}, {2, -2, 2}};
  count_contacts(corner, s);
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        const bool pad = std::abs(x) == 3 || std::abs(y) == 3 || std::abs(z) == 3;
        if (pad) CHECK(s.at(x, y, z) == 0);
      }
  CHECK(s.at(2, 2, 2) == 1);
  CHECK_THROWS_AS(s.at(4, 0, 0), CoordinateRangeError);
}

TEST_CASE("collision counting examples") {
  LatticeSpace s(3);
  SUBCASE("five coincident beads") {
    const std::vector<Bead> beads(5, Bead{0, 0, 0});
    const auto r = count_collisions(beads, s);
    CHECK(r.count == 10);
    CHECK(r.beads_processed == 5);
    CHECK(r.cells_touched == 1);
  }
  SUBCASE("all distinct") {
    const std::vector<Bead> beads = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const auto r = count_collisions(beads, s);
    CHECK(r.count == 0);
    CHECK(r.cells_touched == 3);
  }
  SUBCASE("empty") {
    const auto r = count_collisions({}, s);
    CHECK(r.count == 0);
    CHECK(r.beads_processed == 0);
  }
}

TEST_CASE("contact counting examples") {
  LatticeSpace s(3);
  SUBCASE("single adjacent pair") {
    const std::vector<Bead> beads = {{0, 0, 0}, {1, 0, 0}};
    const auto r = count_contacts(beads, s);
    CHECK(r.count == 1);
    CHECK(r.accumulator == 2);
  }
  SUBCASE("star: center plus six axial neighbors") {
    const std::vector<Bead> beads = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                     {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    CHECK(count_contacts(beads, s).count == 6);
  }
  SUBCASE("multiplicity: two at p, three at an adjacent q") {
    const std::vector<Bead> beads = {{0, 0, 0}, {0, 0, 0}, {0, 1, 0}, {0, 1, 0}, {0, 1, 0}};
    CHECK(count_contacts(beads, s).count == 6);
    CHECK(oracle_contacts(beads) == 6);
  }
  SUBCASE("coincident beads are not contacts") {
    const std::vector<Bead> beads(4, Bead{1, 1, 1});
    CHECK(count_contacts(beads, s).count == 0);
  }
  SUBCASE("diagonal neighbors are not contacts") {
    const std::vector<Bead> beads = {{0, 0, 0}, {1, 1, 0}, {2, 2, 1}, {2, 0, 0}};
    CHECK(count_contacts(beads, s).count == 0);
  }
}

TEST_CASE("oracle examples") {
  CHECK(oracle_collisions({}) == 0);
  CHECK(oracle_contacts({}) == 0);
  const std::vector<Bead> two = {{4, 4, 4}, {4, 4, 4}};
  CHECK(oracle_collisions(two) == 1);
  CHECK(oracle_contacts(two) == 0);
}

TEST_CASE("1000-bead chain matches brute force") {
  const auto chain = random_chain(1000, 0xC0FFEE);
  LatticeSpace s(chain.half_extent);
  const auto coll = count_collisions(chain.beads, s);
  CHECK(coll.count == oracle_collisions(chain.beads));
  s.reset_sparse(chain.beads);
  const auto cont = count_contacts(chain.beads, s);
  CHECK(cont.count == oracle_contacts(chain.beads));
  // Consecutive beads are always in contact.
  CHECK(cont.count >= 999);
}

TEST_CASE("error paths") {
  LatticeSpace s(2);
  SUBCASE("out-of-bounds bead names its index and leaves the space clean") {
    const std::vector<Bead> beads = {{0, 0, 0}, {1, 1, 1}, {0, 3, 0}};
    try {
      count_collisions(beads, s);
      FAIL("expected CoordinateRangeError");
    } catch (const CoordinateRangeError& e) {
      CHECK(e.index() == 2);
    }
    CHECK(s.clean());
    CHECK(s.all_zero());
    CHECK_THROWS_AS(count_contacts(std::vector<Bead>{{-3, 0, 0}}, s), CoordinateRangeError);
  }
  SUBCASE("counting into a dirty space is refused") {
    const std::vector<Bead> beads = {{0, 0, 0}};
    count_collisions(beads, s);
    CHECK_THROWS_AS(count_collisions(beads, s), PreconditionError);
    CHECK_THROWS_AS(count_contacts(beads, s), PreconditionError);
  }
  SUBCASE("occupancy counter overflow") {
    LatticeSpace::Cell cell = std::numeric_limits<LatticeSpace::Cell>::max() - 1;
    detail::checked_increment(cell);
    CHECK(cell == std::numeric_limits<LatticeSpace::Cell>::max());
    CHECK_THROWS_AS(detail::checked_increment(cell), CounterOverflowError);
  }
}

TEST_CASE("sparse reset") {
  SUBCASE("five coincident beads need one write") {
    LatticeSpace s(1);
    const std::vector<Bead> beads(5, Bead{1, 0, -1});
    count_collisions(beads, s);
    const std::size_t writes = reset_sparse(s, beads);
    CHECK(writes <= 5);
    CHECK(writes == 1);
    CHECK(s.clean());
    CHECK(s.all_zero());
  }
  SUBCASE("empty reset does nothing") {
    LatticeSpace s(1);
    CHECK(reset_sparse(s, {}) == 0);
    CHECK(s.all_zero());
  }
  SUBCASE("reset is idempotent") {
    LatticeSpace s(2);
    const std::vector<Bead> beads = {{0, 0, 0}, {1, 0, 0}};
    count_contacts(beads, s);
    CHECK(reset_sparse(s, beads) == 2);
    CHECK(reset_sparse(s, beads) == 0);
    CHECK(s.all_zero());
  }
  SUBCASE("contacts on a reused space equal a fresh space") {
    const auto first = random_chain(1000, 17);
    const auto second = random_chain(1000, 18);
    const std::int32_t a = std::max(first.half_extent, second.half_extent);
    LatticeSpace reused(a);
    count_contacts(first.beads, reused);
    reused.reset_sparse(first.beads);
    const auto again = count_contacts(second.beads, reused);
    LatticeSpace fresh(a);
    CHECK(again.count == count_contacts(second.beads, fresh).count);
  }
  SUBCASE("reallocate gives a clean zero space") {
    LatticeSpace s(2);
    count_collisions(std::vector<Bead>{{1, 1, 1}}, s);
    s.reallocate();
    CHECK(s.clean());
    CHECK(s.all_zero());
  }
}

// Hand-rolled property tests over random chains, uniform clouds and
// adversarial inputs. The seed of a failing case is printed by doctest via
// INFO.
TEST_CASE("property: lattice counters equal brute force") {
  SplitMix64 meta(0xBEAD);
  for (int trial = 0; trial < 120; ++trial) {
    const auto n = static_cast<std::size_t>(meta.below(2049));
    const std::uint64_t seed = meta.next();
    INFO("trial " << trial << " n=" << n << " seed=" << seed);
    std::vector<Bead> beads;
    switch (trial % 4) {
      case 0: beads = random_chain(n, seed).beads; break;
      case 1: beads = testing::uniform_beads(n, static_cast<std::int32_t>(1 + meta.below(6)), seed); break;
      case 2: beads.assign(n, Bead{-1, 2, 0}); break;
      default: beads = testing::uniform_beads(std::min<std::size_t>(n, 300), 40, seed); break;
    }
    const std::int32_t a = testing::max_abs(beads);
    LatticeSpace s(a);
    const auto coll = count_collisions(beads, s);
    CHECK(coll.count == oracle_collisions(beads));
    CHECK(coll.beads_processed == beads.size());
    CHECK(coll.cells_touched <= beads.size());
    CHECK(s.reset_sparse(beads) <= beads.size());
    const auto cont = count_contacts(beads, s);
    CHECK(cont.count == oracle_contacts(beads));
    CHECK(cont.accumulator % 2 == 0);
    CHECK(cont.cells_touched <= 7 * beads.size());
    CHECK(s.reset_sparse(beads) <= 7 * beads.size());
    CHECK(s.clean());
  }
}

TEST_CASE("property: permutation and translation invariance") {
  SplitMix64 meta(0x5A5A);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(1 + meta.below(600));
    auto beads = random_chain(n, meta.next()).beads;
    const std::int32_t a = testing::max_abs(beads);
    LatticeSpace base_space(a);
    const auto coll = count_collisions(beads, base_space).count;
    base_space.reset_sparse(beads);
    const auto cont = count_contacts(beads, base_space).count;

    auto shuffled = beads;
    for (std::size_t k = shuffled.size(); k > 1; --k) {
      std::swap(shuffled[k - 1], shuffled[static_cast<std::size_t>(meta.below(k))]);
    }
    LatticeSpace s1(a);
    CHECK(count_collisions(shuffled, s1).count == coll);
    s1.reset_sparse(shuffled);
    CHECK(count_contacts(shuffled, s1).count == cont);

    const std::int32_t dx = static_cast<std::int32_t>(meta.below(7)) - 3;
    const std::int32_t dy = static_cast<std::int32_t>(meta.below(7)) - 3;
    const std::int32_t dz = static_cast<std::int32_t>(meta.below(7)) - 3;
    for (Bead& b : beads) {
      b.x += dx;
      b.y += dy;
      b.z += dz;
    }
    LatticeSpace s2(a + 3);
    CHECK(count_collisions(beads, s2).count == coll);
    s2.reset_sparse(beads);
    CHECK(count_contacts(beads, s2).count == cont);
  }
}

TEST_CASE("property: sparse reset soundness across arbitrary vector pairs") {
  SplitMix64 meta(0x7E57);
  LatticeSpace reused(20);
  for (int trial = 0; trial < 60; ++trial) {
    const auto v1 = testing::uniform_beads(static_cast<std::size_t>(meta.below(400)), 20, meta.next());
    const auto v2 = testing::uniform_beads(static_cast<std::size_t>(meta.below(400)), 20, meta.next());
    const bool contacts = trial % 2 == 1;
    auto count = [contacts](std::span<const Bead> b, LatticeSpace& s) {
      return contacts ? count_contacts(b, s) : count_collisions(b, s);
    };
    count(v1, reused);
    reused.reset_sparse(v1);
    const auto after = count(v2, reused).count;
    reused.reset_sparse(v2);
    LatticeSpace fresh(20);
    CHECK(after == count(v2, fresh).count);
  }
  CHECK(reused.all_zero());
}
