#include "hearth/memstore/strategy.hpp"

#include "hearth/core/error.hpp"
#include "hearth/memstore/records.hpp"

namespace hearth::memstore {

std::string_view to_string(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::CircularBuffer: return "circular_buffer";
    case StrategyKind::ExtendedBuffer: return "extended_buffer";
    case StrategyKind::RollingAverage: return "rolling_average";
    case StrategyKind::TrendAnalysis: return "trend_analysis";
    case StrategyKind::SummarizedData: return "summarized_data";
    case StrategyKind::BasicLog: return "basic_log";
    case StrategyKind::ExtendedLog: return "extended_log";
    case StrategyKind::AggregatedLog: return "aggregated_log";
    case StrategyKind::SummarizedLog: return "summarized_log";
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy(std::string_view text) noexcept {
  for (auto k : kAllStrategies) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool is_log_strategy(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::BasicLog:
    case StrategyKind::ExtendedLog:
    case StrategyKind::AggregatedLog:
    case StrategyKind::SummarizedLog:
      return true;
    default:
      return false;
  }
}

namespace {

using enum StrategyKind;

// Rows follow ScenarioKind order, columns follow kTiers.
constexpr StrategyKind kTable[5][5] = {
    {CircularBuffer, ExtendedBuffer, RollingAverage, TrendAnalysis, SummarizedData},
    {BasicLog, ExtendedLog, AggregatedLog, AggregatedLog, SummarizedLog},
    {CircularBuffer, ExtendedBuffer, RollingAverage, RollingAverage, SummarizedData},
    {BasicLog, ExtendedLog, AggregatedLog, AggregatedLog, SummarizedLog},
    {CircularBuffer, ExtendedBuffer, RollingAverage, TrendAnalysis, SummarizedData},
};

std::size_t tier_index(int interval_s) {
  for (std::size_t i = 0; i < kTiers.size(); ++i) {
    if (kTiers[i] == interval_s) return i;
  }
  require_tier(interval_s);
  return 0;
}

}  // namespace

StrategyKind select_strategy(ScenarioKind scenario, int interval_s) {
  const auto col = tier_index(interval_s);
  return kTable[static_cast<std::size_t>(scenario)][col];
}

StoreParams default_params(StrategyKind kind, int interval_s) {
  switch (kind) {
    case CircularBuffer: return {kCircularCapacity, 0, 0.0};
    case ExtendedBuffer: return {2 * kCircularCapacity, 0, 0.0};
    case RollingAverage: return {0, kRollingWindow, 0.0};
    case TrendAnalysis: return {0, kTrendWindow, 0.0};
    case SummarizedData: return {0, kSummaryWindow, 0.0};
    case BasicLog: return {kBasicLogMaxEntries, 0, 0.0};
    case ExtendedLog: return {2 * kBasicLogMaxEntries, 0, 0.0};
    case AggregatedLog: return {kBasicLogMaxEntries, 0, 2.0 * interval_s};
    case SummarizedLog: return {0, kLogSummaryWindow, 0.0};
  }
  return {};
}

std::size_t min_record_units(StrategyKind kind) noexcept {
  switch (kind) {
    case TrendAnalysis: return cost::kTrendSegment;
    case SummarizedData:
    case SummarizedLog: return cost::kSummaryRecord;
    case BasicLog:
    case ExtendedLog:
    case AggregatedLog: return cost::kLogEntryBase;
    default: return cost::kSample;
  }
}

}  // namespace hearth::memstore
