#pragma once

#include <cstdint>
#include <vector>

#include "hearth/harness/report.hpp"

namespace hearth::harness {

inline constexpr std::int64_t kDefaultDurationS = 86'400;

/// One cell of the strategy table: the sample home with the scenario's own
/// automations and a single store on the scenario's entity at `interval_s`.
/// Throws InvalidTier, or InvalidArgument when duration_s < interval_s.
MetricsReport run_scenario(ScenarioKind scenario, int interval_s, std::int64_t duration_s = kDefaultDurationS,
                           std::uint64_t seed = 7);

/// All 25 cells, row-major in scenario then tier order.
std::vector<MetricsReport> run_matrix(std::int64_t duration_s = kDefaultDurationS, std::uint64_t seed = 7);

struct ElderlyBundle {
  std::vector<MetricsReport> phases;  // night, morning, daytime, evening, all-day summary
  MetricsReport all_day;              // every store summed over the whole day
  bool operator==(const ElderlyBundle&) const = default;
};

/// A day of the elderly script with five phase-bound stores.
ElderlyBundle run_24h_elderly(std::uint64_t seed = 7);
Json to_json(const ElderlyBundle& bundle);

/// Steady-state footprint of one table row: final bytes_used per tier in
/// ascending tier order, taken from `reports` (as produced by run_matrix).
std::vector<std::size_t> row_footprint(const std::vector<MetricsReport>& reports, ScenarioKind scenario);

}  // namespace hearth::harness
