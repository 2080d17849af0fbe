#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <vector>

#include "pairwise/errors.hpp"
#include "pairwise/generators.hpp"
#include "pairwise/random.hpp"

using namespace pairwise;

TEST_CASE("SplitMix64 known answers") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("SplitMix64 ranges") {
  SplitMix64 rng(42);
  for (int k = 0; k < 10000; ++k) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.below(6) < 6);
  }
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
}

TEST_CASE("random_chain") {
  CHECK(random_chain(0, 1).beads.empty());
  const auto one = random_chain(1, 1);
  REQUIRE(one.beads.size() == 1);
  CHECK(one.beads[0] == Bead{0, 0, 0});
  CHECK(one.half_extent == 0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = random_chain(500, seed);
    REQUIRE(c.beads.size() == 500);
    CHECK(c.beads[0] == Bead{0, 0, 0});
    std::int32_t a = 0;
    for (std::size_t k = 0; k < c.beads.size(); ++k) {
      const Bead& b = c.beads[k];
      a = std::max({a, std::abs(b.x), std::abs(b.y), std::abs(b.z)});
      if (k == 0) continue;
      const Bead& p = c.beads[k - 1];
      CHECK(std::abs(b.x - p.x) + std::abs(b.y - p.y) + std::abs(b.z - p.z) == 1);
    }
    CHECK(c.half_extent == a);
    CHECK(c.half_extent <= 499);
  }
  CHECK(random_chain(300, 9).beads == random_chain(300, 9).beads);
  CHECK(random_chain(300, 9).beads != random_chain(300, 10).beads);
}

TEST_CASE("random_chain uses all six directions") {
  const auto c = random_chain(6000, 3);
  int counts[6] = {};
  for (std::size_t k = 1; k < c.beads.size(); ++k) {
    const Bead& b = c.beads[k];
    const Bead& p = c.beads[k - 1];
    const int dir = b.x != p.x ? (b.x > p.x ? 0 : 1) : b.y != p.y ? (b.y > p.y ? 2 : 3) : (b.z > p.z ? 4 : 5);
    ++counts[dir];
  }
  for (int c6 : counts) {
    CHECK(c6 > 850);
    CHECK(c6 < 1150);
  }
}

TEST_CASE("normal_cloud") {
  SUBCASE("tiny spread collapses to the origin") {
    const auto beads = normal_cloud(200, 1e-9, 10, 1);
    for (const Bead& b : beads) CHECK(b == Bead{0, 0, 0});
    CHECK(oracle_collisions(beads) == 200 * 199 / 2);
  }
  SUBCASE("values are clamped") {
    const auto beads = normal_cloud(500, 50.0, 3, 2);
    for (const Bead& b : beads) {
      CHECK(std::abs(b.x) <= 3);
      CHECK(std::abs(b.y) <= 3);
      CHECK(std::abs(b.z) <= 3);
    }
  }
  SUBCASE("sample spread tracks std_dev") {
    const auto beads = normal_cloud(20000, 10.0, 1000, 3);
    double sum = 0.0, sq = 0.0;
    for (const Bead& b : beads) {
      sum += b.x;
      sq += static_cast<double>(b.x) * b.x;
    }
    const double mean = sum / beads.size();
    const double sd = std::sqrt(sq / beads.size() - mean * mean);
    CHECK(std::abs(mean) < 0.5);
    CHECK(sd == doctest::Approx(10.0).epsilon(0.05));
  }
  SUBCASE("counts match brute force for narrow and wide clouds") {
    for (double s : {5.0, 500.0}) {
      const auto beads = normal_cloud(1000, s, 150, 4);
      LatticeSpace space(150);
      CHECK(count_collisions(beads, space).count == oracle_collisions(beads));
      space.reset_sparse(beads);
      CHECK(count_contacts(beads, space).count == oracle_contacts(beads));
    }
  }
  SUBCASE("reproducible") {
    CHECK(normal_cloud(100, 4.0, 20, 7) == normal_cloud(100, 4.0, 20, 7));
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(normal_cloud(10, 0.0, 5, 1), DomainError);
    CHECK_THROWS_AS(normal_cloud(10, -1.0, 5, 1), DomainError);
    CHECK_THROWS_AS(normal_cloud(10, std::numeric_limits<double>::quiet_NaN(), 5, 1), DomainError);
    CHECK_THROWS_AS(normal_cloud(10, 1.0, -1, 1), DomainError);
  }
}

TEST_CASE("random_spheres") {
  const auto s = random_spheres(1000, 4.0, 11);
  REQUIRE(s.size() == 1000);
  for (const Sphere& p : s) {
    CHECK(p.x >= 0.0);
    CHECK(p.x < 4.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y < 4.0);
    CHECK(p.z >= 0.0);
    CHECK(p.z < 4.0);
  }
  CHECK(random_spheres(50, 4.0, 11) == random_spheres(50, 4.0, 11));
  CHECK(random_spheres(0, 4.0, 11).empty());
  CHECK_THROWS_AS(random_spheres(5, 0.0, 1), DomainError);
  CHECK_THROWS_AS(random_spheres(5, std::numeric_limits<double>::infinity(), 1), DomainError);
}
