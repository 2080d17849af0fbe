#pragma once

// Benchmark harness: experiment runners that emit raw CSV rows, a verify
// suite, and summary statistics computed from raw rows.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairwise/errors.hpp"
#include "pairwise/spi_engine.hpp"

namespace pairwise::bench {

class ConfigError : public Error {
public:
  using Error::Error;
};

struct BenchConfig {
  std::string experiment;
  std::vector<std::size_t> sizes;
  /// Vectors counted per timed execution.
  std::size_t vectors = 100;
  std::size_t reps = 5;
  std::uint64_t seed = 2019;
  /// Reallocation periods K; 0 never reallocates.
  std::vector<std::size_t> realloc_every{0};
  std::size_t workers = 1;
  /// Unset runs both schedules.
  std::optional<Schedule> schedule;
  std::vector<double> std_devs;
  double box_edge = 20.0;
  /// Lattice half-extent; 0 sizes the lattice to the inputs of each execution.
  std::int64_t half_extent = 0;
  /// Run one untimed-in-output execution before the recorded ones.
  bool warmup = true;

  /// Throws ConfigError.
  void validate() const;
};

/// Desk-scale defaults for "linear-vs-quadratic", "realloc", "locality" and
/// "spi". Throws ConfigError for any other name.
BenchConfig default_config(std::string_view experiment);

/// One CSV row. Rows without a wall time are skipped executions or derived
/// metrics; `result` then carries the reason or the metric value.
struct BenchRecord {
  std::string experiment;
  std::string algorithm;
  std::size_t n = 0;
  std::size_t rep = 0;
  std::optional<std::int64_t> wall_ns;
  std::string result;
  std::uint64_t cells_touched = 0;
  std::uint64_t space_cells = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct RunOutcome {
  std::vector<BenchRecord> rows;
  /// Human-readable flags: trend inversions, skipped sizes, mismatches.
  std::vector<std::string> notes;
  bool mismatch = false;
  bool resource_failure = false;

  /// 0 success, 1 correctness mismatch, 3 resource failure.
  int exit_code() const noexcept { return mismatch ? 1 : (resource_failure ? 3 : 0); }
};

RunOutcome run_linear_vs_quadratic(const BenchConfig& config);
RunOutcome run_realloc_sweep(const BenchConfig& config);
RunOutcome run_locality_sweep(const BenchConfig& config);
RunOutcome run_spi_compare(const BenchConfig& config);

/// Dispatches on config.experiment.
RunOutcome run_experiment(const BenchConfig& config);

enum class VerifyLevel { quick, full };

VerifyLevel parse_verify_level(std::string_view text);

struct VerifyReport {
  /// Deterministic rows: no wall times, results depend only on the seed.
  RunOutcome outcome;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
};

/// Property suite: lattice counters against brute force, schedule
/// completeness, balance and violation boundary, SPI schedule equivalence.
/// Quick covers sizes up to 257, full up to 2000.
VerifyReport verify(VerifyLevel level, std::uint64_t seed);

// CSV --------------------------------------------------------------------

inline constexpr std::array<std::string_view, 8> csv_columns = {
    "experiment", "algorithm", "n", "rep", "wall_ns", "result", "cells_touched", "space_cells"};

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const BenchRecord& row);
void write_csv(std::ostream& out, std::span<const BenchRecord> rows);

/// Appends rows to `path`, writing the header first if the file is new or
/// empty. Throws Error if the file cannot be opened.
void append_csv(const std::filesystem::path& path, std::span<const BenchRecord> rows);

/// Parses rows written by write_csv(); repeated header lines are skipped.
/// Throws ConfigError on malformed input.
std::vector<BenchRecord> read_csv(std::istream& in);

// Statistics -------------------------------------------------------------

struct StatRow {
  std::string experiment;
  std::string algorithm;
  std::size_t n = 0;
  std::size_t samples = 0;
  double mean_ns = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 for one sample.
  double stddev_ns = 0.0;
  /// Four standard deviations, the full length of a +-2 sd error bar.
  double error_bar_ns = 0.0;
};

/// Groups timed rows by (experiment, algorithm, n) in first-seen order.
std::vector<StatRow> summarize(std::span<const BenchRecord> rows);

void write_stats_csv(std::ostream& out, std::span<const StatRow> stats);

/// mean(numerator) / mean(denominator) per n, for one experiment, ascending n.
std::vector<std::pair<std::size_t, double>> mean_ratios(std::span<const StatRow> stats,
                                                        std::string_view experiment,
                                                        std::string_view numerator,
                                                        std::string_view denominator);

}  // namespace pairwise::bench
