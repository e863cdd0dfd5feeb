#include "hearth/memstore/fold.hpp"

#include <algorithm>

#include "hearth/core/error.hpp"

namespace hearth::memstore {

std::size_t units_of(const Record& r) noexcept {
  return std::visit([](const auto& rec) { return units_of(rec); }, r);
}

namespace {

void require_samples(std::span<const Sample> window, std::size_t n, const char* what) {
  if (window.size() < n) {
    throw Error(ErrorCode::TooFewSamples, std::string(what) + " needs at least " +
                                              std::to_string(n) + " samples, got " +
                                              std::to_string(window.size()));
  }
}

double mean_of(std::span<const Sample> window) {
  double sum = 0.0;
  for (const auto& s : window) sum += s.value;
  return sum / static_cast<double>(window.size());
}

}  // namespace

Sample fold_mean(std::span<const Sample> window) {
  require_samples(window, 1, "rolling average");
  return Sample{(window.front().t + window.back().t) / 2.0, mean_of(window)};
}

TrendSegment fold_trend(std::span<const Sample> window) {
  require_samples(window, 2, "trend analysis");
  const double origin = window.front().t;
  const auto n = static_cast<double>(window.size());

  double mean_dt = 0.0;
  double mean_v = 0.0;
  for (const auto& s : window) {
    mean_dt += s.t - origin;
    mean_v += s.value;
  }
  mean_dt /= n;
  mean_v /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : window) {
    const double dx = (s.t - origin) - mean_dt;
    sxx += dx * dx;
    sxy += dx * (s.value - mean_v);
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::TooFewSamples, "trend analysis needs two distinct timestamps");
  }
  const double slope = sxy / sxx;
  return TrendSegment{origin, window.back().t, slope, mean_v - slope * mean_dt, window.size()};
}

SummaryRecord fold_summary(std::span<const Sample> window) {
  require_samples(window, 1, "summary");
  SummaryRecord r;
  r.t_start = window.front().t;
  r.t_end = window.back().t;
  r.first = window.front().value;
  r.last = window.back().value;
  r.min = r.max = r.first;
  for (const auto& s : window) {
    r.min = std::min(r.min, s.value);
    r.max = std::max(r.max, s.value);
  }
  r.mean = std::clamp(mean_of(window), r.min, r.max);
  r.count = window.size();
  r.delta = r.last - r.first;
  return r;
}

Folded fold_window(std::span<const Sample> window, FoldKind kind) {
  switch (kind) {
    case FoldKind::RollingAverage: return fold_mean(window);
    case FoldKind::TrendAnalysis: return fold_trend(window);
    case FoldKind::SummarizedData: return fold_summary(window);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown fold kind");
}

}  // namespace hearth::memstore
