#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

namespace hearth::memstore {

/// One measurement. `t` is sim-seconds since the scenario epoch.
struct Sample {
  double t = 0.0;
  double value = 0.0;
  bool operator==(const Sample&) const = default;
};

struct LogEntry {
  double t = 0.0;
  std::string event_type;
  std::string entity;
  std::string detail;
  std::uint32_t count = 1;  // >1 after coalescing
  bool operator==(const LogEntry&) const = default;
};

/// Least-squares line over one window; `intercept` is the value at t_start.
struct TrendSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n = 0;

  double value_at(double t) const noexcept { return intercept + slope * (t - t_start); }
  bool operator==(const TrendSegment&) const = default;
};

struct SummaryRecord {
  double t_start = 0.0;
  double t_end = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double first = 0.0;
  double last = 0.0;
  std::size_t count = 0;
  double delta = 0.0;  // last - first
  bool operator==(const SummaryRecord&) const = default;
};

/// Digest of a window of log entries.
struct LogSummary {
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t entries = 0;
  std::uint64_t events = 0;  // sum of entry counts
  std::size_t distinct_event_types = 0;
  std::size_t distinct_entities = 0;
  bool operator==(const LogSummary&) const = default;
};

using Record = std::variant<Sample, TrendSegment, SummaryRecord, LogEntry, LogSummary>;

/// Abstract, platform-independent memory units per stored item.
namespace cost {
inline constexpr std::size_t kSample = 16;
inline constexpr std::size_t kTrendSegment = 40;
inline constexpr std::size_t kSummaryRecord = 64;
inline constexpr std::size_t kLogEntryBase = 32;
}  // namespace cost

inline std::size_t units_of(const Sample&) noexcept { return cost::kSample; }
inline std::size_t units_of(const TrendSegment&) noexcept { return cost::kTrendSegment; }
inline std::size_t units_of(const SummaryRecord&) noexcept { return cost::kSummaryRecord; }
inline std::size_t units_of(const LogSummary&) noexcept { return cost::kSummaryRecord; }
inline std::size_t units_of(const LogEntry& e) noexcept {
  return cost::kLogEntryBase + e.detail.size();
}
std::size_t units_of(const Record& r) noexcept;

}  // namespace hearth::memstore
