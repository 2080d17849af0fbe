#pragma once

#include <cstdint>
#include <initializer_list>

namespace pairwise {

/// SplitMix64 (Steele, Lea, Flood 2014).
///
/// Chosen because its output is fully specified by integer arithmetic, so a
/// seed gives the same stream on every platform and compiler, unlike the
/// distributions in <random>.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, bound) by rejection; bound must be nonzero.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

private:
  std::uint64_t state_;
};

/// Folds a list of values into a base seed; used to give every
/// (size, repetition, vector) its own independent stream.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = base;
  for (std::uint64_t p : parts) {
    SplitMix64 mix(h ^ (p + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2)));
    h = mix.next();
  }
  return h;
}

}  // namespace pairwise
