#include "pairwise/spi_engine.hpp"

#include <algorithm>
#include <cmath>

namespace pairwise {

unsigned collision_indicator(const Sphere& a, const Sphere& b) {
  if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.z) || !std::isfinite(b.x) ||
      !std::isfinite(b.y) || !std::isfinite(b.z)) {
    throw DomainError("sphere center is not finite");
  }
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  // Diameter 1, compared squared.
  return dx * dx + dy * dy + dz * dz < 1.0 ? 1u : 0u;
}

std::string_view to_string(Schedule s) noexcept {
  return s == Schedule::standard ? "standard" : "balanced";
}

Schedule parse_schedule(std::string_view text) {
  if (text == "standard") return Schedule::standard;
  if (text == "balanced") return Schedule::balanced;
  throw DomainError("unknown schedule '" + std::string(text) + "'");
}

std::size_t schedule_depth(Schedule schedule, std::size_t n) noexcept {
  if (n < 2) return 0;
  return schedule == Schedule::standard ? n - 1 : n / 2;  // n / 2 == ceil((n - 1) / 2)
}

IndexBlock contiguous_block(std::size_t n, std::size_t workers, std::size_t worker) noexcept {
  const std::size_t base = n / workers;
  const std::size_t extra = n % workers;
  const std::size_t begin = worker * base + std::min(worker, extra);
  return {begin, begin + base + (worker < extra ? 1 : 0)};
}

bool totals_agree(double a, double b, std::uint64_t pairs) noexcept {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  const double tol = 1e-12 * static_cast<double>(std::max<std::uint64_t>(pairs, 1));
  return std::abs(a - b) <= tol * scale;
}

}  // namespace pairwise
