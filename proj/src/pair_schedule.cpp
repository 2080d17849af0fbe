#include "pairwise/pair_schedule.hpp"

#include <string>

#include "pairwise/errors.hpp"

namespace pairwise::schedule {

namespace {

void check_index(std::size_t n, std::size_t i) {
  if (n == 0) throw DomainError("schedule over zero objects");
  if (i >= n) {
    throw DomainError("index " + std::to_string(i) + " out of range for n = " + std::to_string(n));
  }
}

void check_step(std::size_t s) {
  if (s == 0) throw DomainError("steps start at 1");
}

}  // namespace

std::size_t reach(std::size_t n, std::size_t i, std::size_t s) {
  check_index(n, i);
  check_step(s);
  const std::size_t shift = s % n;
  // i < n and shift < n, so i + shift cannot wrap size_t for any real n.
  const std::size_t j = i + shift;
  return j >= n ? j - n : j;
}

std::size_t reached(std::size_t n, std::size_t i, std::size_t s) {
  check_index(n, i);
  check_step(s);
  const std::size_t shift = s % n;
  return i >= shift ? i - shift : i + n - shift;
}

std::size_t steps_for(std::size_t n, std::size_t i) {
  check_index(n, i);
  if (n % 2 == 1) return (n - 1) / 2;
  const std::size_t half = n / 2;
  return i < half ? half : half - 1;
}

std::uint64_t pair_count(std::size_t n) noexcept {
  const auto m = static_cast<std::uint64_t>(n);
  return m < 2 ? 0 : (m % 2 == 0 ? (m / 2) * (m - 1) : m * ((m - 1) / 2));
}

std::vector<IndexPair> pairs(std::size_t n) {
  const PairSchedule sched(n);
  std::vector<IndexPair> out;
  out.reserve(static_cast<std::size_t>(pair_count(n)));
  for (std::size_t i = 0; i < n; ++i) {
    sched.for_each_from(i, [&out](std::size_t a, std::size_t b) { out.push_back({a, b}); });
  }
  return out;
}

std::size_t first_violation_step(std::size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw DomainError("violation step is defined for odd n >= 3, got n = " + std::to_string(n));
  }
  return (n + 1) / 2;
}

PairSchedule::PairSchedule(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("schedule over zero objects");
}

std::size_t PairSchedule::steps(std::size_t i) const { return steps_for(n_, i); }

std::size_t PairSchedule::max_steps() const noexcept {
  return n_ % 2 == 1 ? (n_ - 1) / 2 : n_ / 2;
}

std::size_t PairSchedule::min_steps() const noexcept {
  return n_ % 2 == 1 ? (n_ - 1) / 2 : n_ / 2 - 1;
}

}  // namespace pairwise::schedule
