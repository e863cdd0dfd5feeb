#pragma once

#include <span>
#include <variant>

#include "hearth/memstore/records.hpp"

namespace hearth::memstore {

enum class FoldKind { RollingAverage, TrendAnalysis, SummarizedData };

using Folded = std::variant<Sample, TrendSegment, SummaryRecord>;

/// Arithmetic mean placed at the window midpoint. Throws TooFewSamples when
/// empty.
Sample fold_mean(std::span<const Sample> window);

/// Ordinary least squares over (t, value). Needs at least two samples with
/// distinct timestamps, else TooFewSamples.
TrendSegment fold_trend(std::span<const Sample> window);

/// min/max/mean/first/last/count/delta. The mean is clamped into [min, max]
/// so rounding never breaks the ordering.
SummaryRecord fold_summary(std::span<const Sample> window);

Folded fold_window(std::span<const Sample> window, FoldKind kind);

}  // namespace hearth::memstore
