#include "hearth/memstore/store.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hearth/core/error.hpp"
#include "hearth/memstore/fold.hpp"

namespace hearth::memstore {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_range(double t, double from, double to) { return t >= from && t <= to; }
bool overlaps(double a0, double a1, double from, double to) { return a0 <= to && a1 >= from; }

template <typename Folded>
Folded fold_as(std::span<const Sample> window);

template <>
Sample fold_as<Sample>(std::span<const Sample> window) {
  return fold_mean(window);
}

template <>
TrendSegment fold_as<TrendSegment>(std::span<const Sample> window) {
  if (window.front().t == window.back().t) {
    // All timestamps equal: no slope to fit, keep the level.
    const auto m = fold_mean(window);
    return TrendSegment{window.front().t, window.front().t, 0.0, m.value, window.size()};
  }
  return fold_trend(window);
}

template <>
SummaryRecord fold_as<SummaryRecord>(std::span<const Sample> window) {
  return fold_summary(window);
}

LogSummary summarize_log(const std::vector<LogEntry>& entries) {
  LogSummary s;
  s.t_start = entries.front().t;
  s.t_end = entries.back().t;
  s.entries = entries.size();
  std::set<std::string> types;
  std::set<std::string> entities;
  for (const auto& e : entries) {
    s.events += e.count;
    types.insert(e.event_type);
    entities.insert(e.entity);
  }
  s.distinct_event_types = types.size();
  s.distinct_entities = entities.size();
  return s;
}

}  // namespace

Store Store::create(StrategyKind strategy, int interval_s, std::size_t budget_units) {
  return with_params(strategy, interval_s, budget_units, default_params(strategy, interval_s));
}

Store Store::with_params(StrategyKind strategy, int interval_s, std::size_t budget_units,
                         StoreParams params) {
  require_tier(interval_s);
  const bool ring = strategy == StrategyKind::CircularBuffer || strategy == StrategyKind::ExtendedBuffer;
  const bool folding = strategy == StrategyKind::RollingAverage ||
                       strategy == StrategyKind::TrendAnalysis ||
                       strategy == StrategyKind::SummarizedData ||
                       strategy == StrategyKind::SummarizedLog;
  if ((ring && params.capacity == 0) || (folding && params.window == 0) ||
      (strategy == StrategyKind::TrendAnalysis && params.window < 2)) {
    throw Error(ErrorCode::InvalidArgument, "store parameters incomplete for " +
                                                std::string(to_string(strategy)));
  }
  if (is_log_strategy(strategy) && !folding && params.capacity == 0) {
    throw Error(ErrorCode::InvalidArgument, "log store needs a max entry count");
  }
  const auto min_units = min_record_units(strategy);
  if (budget_units < min_units) {
    throw Error(ErrorCode::BudgetTooSmall,
                std::string(to_string(strategy)) + " needs a budget of at least " +
                    std::to_string(min_units) + " units, got " + std::to_string(budget_units));
  }
  return Store(strategy, interval_s, budget_units, params);
}

Store::Store(StrategyKind strategy, int interval_s, std::size_t budget, StoreParams params)
    : strategy_(strategy), interval_s_(interval_s), budget_(budget), params_(params) {
  switch (strategy) {
    case StrategyKind::CircularBuffer:
    case StrategyKind::ExtendedBuffer: {
      Ring ring;
      ring.slots.resize(params_.capacity);
      state_ = std::move(ring);
      break;
    }
    case StrategyKind::RollingAverage: state_ = Folding<Sample>{}; break;
    case StrategyKind::TrendAnalysis: state_ = Folding<TrendSegment>{}; break;
    case StrategyKind::SummarizedData: state_ = Folding<SummaryRecord>{}; break;
    case StrategyKind::BasicLog:
    case StrategyKind::ExtendedLog:
    case StrategyKind::AggregatedLog: state_ = Log{}; break;
    case StrategyKind::SummarizedLog: state_ = LogFolding{}; break;
  }
  std::visit(overloaded{[&](auto& f) {
                          using T = std::decay_t<decltype(f)>;
                          if constexpr (!std::is_same_v<T, Ring> && !std::is_same_v<T, Log>) {
                            f.pending.reserve(params_.window);
                          }
                        }},
             state_);
}

std::size_t Store::reserved_slots() const noexcept {
  if (const auto* ring = std::get_if<Ring>(&state_)) return ring->slots.size();
  return 0;
}

void Store::check_time(double t) {
  if (has_last_ && t < last_t_) {
    throw Error(ErrorCode::NonMonotoneTimestamp,
                "record at t=" + std::to_string(t) + " s precedes t=" + std::to_string(last_t_) + " s");
  }
  last_t_ = t;
  has_last_ = true;
}

void Store::add_units(std::size_t n) {
  units_ += n;
  peak_ = std::max(peak_, units_);
}

bool Store::evict_one() {
  return std::visit(
      overloaded{
          [&](Ring& r) {
            if (r.size == 0) return false;
            r.head = (r.head + 1) % r.slots.size();
            --r.size;
            units_ -= cost::kSample;
            return true;
          },
          [&](Log& l) {
            if (l.entries.empty()) return false;
            units_ -= units_of(l.entries.front());
            l.entries.pop_front();
            return true;
          },
          [&](auto& f) {
            if (!f.folded.empty()) {
              units_ -= units_of(f.folded.front());
              f.folded.pop_front();
              return true;
            }
            if (!f.pending.empty()) {
              units_ -= units_of(f.pending.front());
              f.pending.erase(f.pending.begin());
              return true;
            }
            return false;
          },
      },
      state_);
}

void Store::ensure_room(std::size_t incoming) {
  while (units_ + incoming > budget_) {
    if (!evict_one()) break;
  }
}

void Store::record(const Sample& sample) {
  if (!std::isfinite(sample.value) || !std::isfinite(sample.t)) {
    throw Error(ErrorCode::TypeMismatch, "sample must be finite");
  }
  if (is_log_strategy(strategy_)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(strategy_)) + " stores log entries, not samples");
  }
  check_time(sample.t);
  std::visit(overloaded{
                 [&](Ring& r) {
                   if (r.size == r.slots.size()) evict_one();
                   ensure_room(cost::kSample);
                   r.slots[(r.head + r.size) % r.slots.size()] = sample;
                   ++r.size;
                   add_units(cost::kSample);
                 },
                 [&](Folding<Sample>& f) { record_folding(f, sample); },
                 [&](Folding<TrendSegment>& f) { record_folding(f, sample); },
                 [&](Folding<SummaryRecord>& f) { record_folding(f, sample); },
                 [](auto&) {},
             },
             state_);
}

template <typename Folded>
void Store::record_folding(Folding<Folded>& f, const Sample& s) {
  ensure_room(cost::kSample);
  f.pending.push_back(s);
  add_units(cost::kSample);
  if (f.pending.size() < params_.window) return;

  Folded rec = fold_as<Folded>(f.pending);
  units_ -= f.pending.size() * cost::kSample;
  f.pending.clear();
  ensure_room(units_of(rec));
  f.folded.push_back(rec);
  add_units(units_of(rec));
}

void Store::record(LogEntry entry) {
  if (!is_log_strategy(strategy_)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(strategy_)) + " stores samples, not log entries");
  }
  if (entry.count == 0) {
    throw Error(ErrorCode::InvalidArgument, "log entry count must be at least 1");
  }
  check_time(entry.t);
  const std::size_t max_detail = budget_ - cost::kLogEntryBase;
  if (entry.detail.size() > max_detail) entry.detail.resize(max_detail);

  if (auto* log = std::get_if<Log>(&state_)) {
    record_log(*log, std::move(entry));
  } else {
    record_log_folding(std::get<LogFolding>(state_), std::move(entry));
  }
}

void Store::record_log(Log& log, LogEntry entry) {
  if (strategy_ == StrategyKind::AggregatedLog && !log.entries.empty()) {
    LogEntry& tail = log.entries.back();
    if (tail.event_type == entry.event_type && tail.entity == entry.entity &&
        entry.t - tail.t <= params_.coalesce_window_s) {
      tail.count += entry.count;
      return;
    }
  }
  const auto units = units_of(entry);
  ensure_room(units);
  log.entries.push_back(std::move(entry));
  add_units(units);
  while (log.entries.size() > params_.capacity) {
    units_ -= units_of(log.entries.front());
    log.entries.pop_front();
  }
}

void Store::record_log_folding(LogFolding& f, LogEntry entry) {
  const auto units = units_of(entry);
  ensure_room(units);
  f.pending.push_back(std::move(entry));
  add_units(units);
  if (f.pending.size() < params_.window) return;

  LogSummary summary = summarize_log(f.pending);
  for (const auto& e : f.pending) units_ -= units_of(e);
  f.pending.clear();
  ensure_room(units_of(summary));
  f.folded.push_back(summary);
  add_units(units_of(summary));
}

std::size_t Store::point_count() const noexcept {
  return std::visit(overloaded{
                        [](const Ring& r) { return r.size; },
                        [](const Log& l) { return l.entries.size(); },
                        [](const auto& f) { return f.folded.size() + f.pending.size(); },
                    },
                    state_);
}

std::size_t Store::audit_units() const {
  std::size_t total = 0;
  for (const auto& rec : query(-INFINITY, INFINITY)) total += units_of(rec);
  return total;
}

std::vector<Record> Store::query(double t_from, double t_to) const {
  std::vector<Record> out;
  if (t_from > t_to) return out;
  auto add_sample = [&](const Sample& s) {
    if (in_range(s.t, t_from, t_to)) out.emplace_back(s);
  };
  std::visit(overloaded{
                 [&](const Ring& r) {
                   for (std::size_t i = 0; i < r.size; ++i) add_sample(r.slots[(r.head + i) % r.slots.size()]);
                 },
                 [&](const Log& l) {
                   for (const auto& e : l.entries) {
                     if (in_range(e.t, t_from, t_to)) out.emplace_back(e);
                   }
                 },
                 [&](const Folding<Sample>& f) {
                   for (const auto& s : f.folded) add_sample(s);
                   for (const auto& s : f.pending) add_sample(s);
                 },
                 [&](const auto& f) {
                   for (const auto& rec : f.folded) {
                     if (overlaps(rec.t_start, rec.t_end, t_from, t_to)) out.emplace_back(rec);
                   }
                   for (const auto& p : f.pending) {
                     using P = std::decay_t<decltype(p)>;
                     if constexpr (std::is_same_v<P, Sample>) {
                       add_sample(p);
                     } else if (in_range(p.t, t_from, t_to)) {
                       out.emplace_back(p);
                     }
                   }
                 },
             },
             state_);
  return out;
}

std::vector<Sample> Store::reconstruct(double t_from, double t_to) const {
  std::vector<Sample> out;
  for (const auto& rec : query(t_from, t_to)) {
    std::visit(overloaded{
                   [&](const Sample& s) { out.push_back(s); },
                   [&](const TrendSegment& seg) {
                     const double a = std::max(t_from, seg.t_start);
                     const double b = std::min(t_to, seg.t_end);
                     out.push_back({a, seg.value_at(a)});
                     if (b > a) out.push_back({b, seg.value_at(b)});
                   },
                   [&](const SummaryRecord& r) {
                     if (in_range(r.t_start, t_from, t_to)) out.push_back({r.t_start, r.first});
                     if (r.t_end > r.t_start && in_range(r.t_end, t_from, t_to)) {
                       out.push_back({r.t_end, r.last});
                     }
                   },
                   [](const auto&) {},
               },
               rec);
  }
  return out;
}

}  // namespace hearth::memstore
