#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "hearth/core/types.hpp"

namespace hearth::memstore {

enum class StrategyKind : std::uint8_t {
  CircularBuffer,
  ExtendedBuffer,
  RollingAverage,
  TrendAnalysis,
  SummarizedData,
  BasicLog,
  ExtendedLog,
  AggregatedLog,
  SummarizedLog,
};

inline constexpr std::array<StrategyKind, 9> kAllStrategies = {
    StrategyKind::CircularBuffer, StrategyKind::ExtendedBuffer, StrategyKind::RollingAverage,
    StrategyKind::TrendAnalysis,  StrategyKind::SummarizedData, StrategyKind::BasicLog,
    StrategyKind::ExtendedLog,    StrategyKind::AggregatedLog,  StrategyKind::SummarizedLog,
};

std::string_view to_string(StrategyKind kind) noexcept;
std::optional<StrategyKind> parse_strategy(std::string_view text) noexcept;

/// Log strategies store LogEntry records; the rest store samples.
bool is_log_strategy(StrategyKind kind) noexcept;

/// Strategy for one cell of the scenario x interval table. "Rolling buffer"
/// is treated as CircularBuffer, "Log recent events" as BasicLog, and the
/// five-minute "Summarized data" cell of the log rows as SummarizedLog.
/// Throws InvalidTier.
StrategyKind select_strategy(ScenarioKind scenario, int interval_s);

/// Derived store parameters.
struct StoreParams {
  std::size_t capacity = 0;        // ring slots or max log entries; 0 = budget-bound only
  std::size_t window = 0;          // samples (or log entries) per fold; 0 = no folding
  double coalesce_window_s = 0.0;  // AggregatedLog only
  bool operator==(const StoreParams&) const = default;
};

inline constexpr std::size_t kCircularCapacity = 64;
inline constexpr std::size_t kBasicLogMaxEntries = 128;
inline constexpr std::size_t kRollingWindow = 5;
inline constexpr std::size_t kTrendWindow = 10;
inline constexpr std::size_t kSummaryWindow = 20;
inline constexpr std::size_t kLogSummaryWindow = 20;
inline constexpr std::size_t kDefaultBudgetUnits = 10240;

StoreParams default_params(StrategyKind kind, int interval_s);

/// Cost of the strategy's smallest retained record; the minimum budget.
std::size_t min_record_units(StrategyKind kind) noexcept;

}  // namespace hearth::memstore
