#pragma once

#include <cstddef>
#include <deque>
#include <variant>
#include <vector>

#include "hearth/memstore/records.hpp"
#include "hearth/memstore/strategy.hpp"

namespace hearth::memstore {

namespace detail {

struct Ring {
  std::vector<Sample> slots;
  std::size_t head = 0;  // oldest
  std::size_t size = 0;
  bool operator==(const Ring&) const = default;
};
template <typename Folded>
struct Folding {
  std::vector<Sample> pending;
  std::deque<Folded> folded;
  bool operator==(const Folding&) const = default;
};
struct Log {
  std::deque<LogEntry> entries;
  bool operator==(const Log&) const = default;
};
struct LogFolding {
  std::vector<LogEntry> pending;
  std::deque<LogSummary> folded;
  bool operator==(const LogFolding&) const = default;
};

}  // namespace detail

/// Fixed-budget telemetry container driven by one StrategyKind.
///
/// bytes_used() never exceeds the budget, not even between the steps of a
/// single record() call: room is made (oldest folded record first, then
/// oldest raw item) before anything is added. Buffer strategies reserve their
/// full ring at creation; folding and log strategies grow on demand.
///
/// Folded records (means, segments, summaries) are kept until the budget is
/// reached, then the oldest are evicted. Raw samples of a window that has not
/// filled yet are retained as-is and count against the budget.
class Store {
 public:
  /// Throws BudgetTooSmall when the budget cannot hold one record, and
  /// InvalidTier for an unknown interval.
  static Store create(StrategyKind strategy, int interval_s,
                      std::size_t budget_units = kDefaultBudgetUnits);
  /// As create(), with explicit parameters instead of the derived ones.
  static Store with_params(StrategyKind strategy, int interval_s, std::size_t budget_units,
                           StoreParams params);

  /// Sample strategies only. Throws NonMonotoneTimestamp, TypeMismatch for a
  /// non-finite value, InvalidArgument on a log store.
  void record(const Sample& sample);
  /// Log strategies only. A detail longer than the budget allows is truncated.
  void record(LogEntry entry);

  /// Retained items intersecting [t_from, t_to], oldest first.
  std::vector<Record> query(double t_from, double t_to) const;
  /// Point view of query(): raw/mean samples as-is, trend segments evaluated
  /// at their endpoints clipped to the range, summaries as (t_start, first)
  /// and (t_end, last). Log stores yield nothing.
  std::vector<Sample> reconstruct(double t_from, double t_to) const;

  std::size_t bytes_used() const noexcept { return units_; }
  std::size_t peak_units() const noexcept { return peak_; }
  std::size_t point_count() const noexcept;
  /// Recomputes bytes_used from the contents.
  std::size_t audit_units() const;

  StrategyKind strategy() const noexcept { return strategy_; }
  int interval_s() const noexcept { return interval_s_; }
  std::size_t budget_units() const noexcept { return budget_; }
  const StoreParams& params() const noexcept { return params_; }
  /// Ring slots reserved up front (buffer strategies), else 0.
  std::size_t reserved_slots() const noexcept;

  bool operator==(const Store&) const = default;

 private:
  using Ring = detail::Ring;
  template <typename Folded>
  using Folding = detail::Folding<Folded>;
  using Log = detail::Log;
  using LogFolding = detail::LogFolding;
  using State = std::variant<Ring, Folding<Sample>, Folding<TrendSegment>, Folding<SummaryRecord>,
                             Log, LogFolding>;

  Store(StrategyKind strategy, int interval_s, std::size_t budget, StoreParams params);

  void check_time(double t);
  void add_units(std::size_t n);
  void ensure_room(std::size_t incoming);
  bool evict_one();
  template <typename Folded>
  void record_folding(Folding<Folded>& f, const Sample& s);
  void record_log(Log& log, LogEntry entry);
  void record_log_folding(LogFolding& f, LogEntry entry);

  StrategyKind strategy_;
  int interval_s_;
  std::size_t budget_;
  StoreParams params_;
  State state_;
  std::size_t units_ = 0;
  std::size_t peak_ = 0;
  double last_t_ = 0.0;
  bool has_last_ = false;
};

}  // namespace hearth::memstore
