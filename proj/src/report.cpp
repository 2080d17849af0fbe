#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <tuple>

#include "pairwise/bench.hpp"

namespace pairwise::bench {

namespace {

void write_field(std::ostream& out, std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quote on line " + std::to_string(line_no));
  return fields;
}

template <class T>
T parse_number(const std::string& text, std::string_view column, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("bad " + std::string(column) + " '" + text + "' on line " + std::to_string(line_no));
  }
  return value;
}

}  // namespace

void write_csv_header(std::ostream& out) {
  for (std::size_t i = 0; i < csv_columns.size(); ++i) {
    if (i) out << ',';
    out << csv_columns[i];
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const BenchRecord& row) {
  write_field(out, row.experiment);
  out << ',';
  write_field(out, row.algorithm);
  out << ',' << row.n << ',' << row.rep << ',';
  if (row.wall_ns) out << *row.wall_ns;
  out << ',';
  write_field(out, row.result);
  out << ',' << row.cells_touched << ',' << row.space_cells << '\n';
}

void write_csv(std::ostream& out, std::span<const BenchRecord> rows) {
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
}

void append_csv(const std::filesystem::path& path, std::span<const BenchRecord> rows) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
  if (fresh) write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
  out.flush();
  if (!out) throw ResourceError("write to " + path.string() + " failed");
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> rows;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_record(line, line_no);
    if (fields.size() != csv_columns.size()) {
      throw ConfigError("expected " + std::to_string(csv_columns.size()) + " columns on line " +
                        std::to_string(line_no) + ", got " + std::to_string(fields.size()));
    }
    if (fields[0] == csv_columns[0] && fields[1] == csv_columns[1]) {
      saw_header = true;
      continue;
    }
    if (!saw_header) throw ConfigError("missing header row");
    BenchRecord r;
    r.experiment = std::move(fields[0]);
    r.algorithm = std::move(fields[1]);
    r.n = parse_number<std::size_t>(fields[2], "n", line_no);
    r.rep = parse_number<std::size_t>(fields[3], "rep", line_no);
    if (!fields[4].empty()) r.wall_ns = parse_number<std::int64_t>(fields[4], "wall_ns", line_no);
    r.result = std::move(fields[5]);
    r.cells_touched = parse_number<std::uint64_t>(fields[6], "cells_touched", line_no);
    r.space_cells = parse_number<std::uint64_t>(fields[7], "space_cells", line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<StatRow> summarize(std::span<const BenchRecord> rows) {
  using Key = std::tuple<std::string, std::string, std::size_t>;
  std::map<Key, std::size_t> slot;
  std::vector<std::vector<double>> samples;
  std::vector<StatRow> stats;
  for (const auto& r : rows) {
    if (!r.wall_ns) continue;
    Key key{r.experiment, r.algorithm, r.n};
    auto [it, inserted] = slot.try_emplace(key, stats.size());
    if (inserted) {
      stats.push_back({r.experiment, r.algorithm, r.n});
      samples.emplace_back();
    }
    samples[it->second].push_back(static_cast<double>(*r.wall_ns));
  }
  for (std::size_t k = 0; k < stats.size(); ++k) {
    const auto& xs = samples[k];
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    stats[k].samples = xs.size();
    stats[k].mean_ns = mean;
    stats[k].stddev_ns = sd;
    stats[k].error_bar_ns = 4.0 * sd;
  }
  return stats;
}

void write_stats_csv(std::ostream& out, std::span<const StatRow> stats) {
  out << "experiment,algorithm,n,samples,mean_ns,stddev_ns,error_bar_ns\n";
  char buf[64];
  auto num = [&buf](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 1);
    return std::string_view(buf, static_cast<std::size_t>(ptr - buf));
  };
  for (const auto& s : stats) {
    write_field(out, s.experiment);
    out << ',';
    write_field(out, s.algorithm);
    out << ',' << s.n << ',' << s.samples << ',' << num(s.mean_ns);
    out << ',' << num(s.stddev_ns);
    out << ',' << num(s.error_bar_ns) << '\n';
  }
}

std::vector<std::pair<std::size_t, double>> mean_ratios(std::span<const StatRow> stats,
                                                        std::string_view experiment,
                                                        std::string_view numerator,
                                                        std::string_view denominator) {
  std::map<std::size_t, std::pair<double, double>> by_n;
  std::map<std::size_t, int> seen;
  for (const auto& s : stats) {
    if (s.experiment != experiment) continue;
    if (s.algorithm == numerator) {
      by_n[s.n].first = s.mean_ns;
      seen[s.n] |= 1;
    } else if (s.algorithm == denominator) {
      by_n[s.n].second = s.mean_ns;
      seen[s.n] |= 2;
    }
  }
  std::vector<std::pair<std::size_t, double>> out;
  for (const auto& [n, means] : by_n) {
    if (seen[n] != 3 || means.second <= 0.0) continue;
    out.emplace_back(n, means.first / means.second);
  }
  return out;
}

}  // namespace pairwise::bench
