#pragma once
// Brute-force reference computations used as independent oracles by the
// tests. Nothing here may call into the library code it is checking.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

struct Point {
  double t;
  double v;
};

inline double rel_err(double got, double want) {
  const double denom = std::max(std::abs(want), std::numeric_limits<double>::min());
  return std::abs(got - want) / denom;
}

inline double mean(const std::vector<Point>& w) {
  long double s = 0;
  for (const auto& p : w) s += p.v;
  return static_cast<double>(s / w.size());
}

struct Line {
  double slope;
  double intercept_at_first;  // value of the fit at w.front().t
};

/// Solves the 2x2 normal equations [n, Sx; Sx, Sxx] [a; b] = [Sy; Sxy] by
/// Cramer's rule in long double, with x measured from the first timestamp.
inline Line least_squares(const std::vector<Point>& w) {
  const long double t0 = w.front().t;
  long double n = w.size(), sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (const auto& p : w) {
    const long double x = p.t - t0;
    sx += x;
    sxx += x * x;
    sy += p.v;
    sxy += x * p.v;
  }
  const long double det = n * sxx - sx * sx;
  const long double b = (n * sxy - sx * sy) / det;
  const long double a = (sy * sxx - sx * sxy) / det;
  return {static_cast<double>(b), static_cast<double>(a)};
}

struct Summary {
  double min, max, mean, first, last, delta;
  std::size_t count;
};

inline Summary summary(const std::vector<Point>& w) {
  Summary s{w[0].v, w[0].v, mean(w), w.front().v, w.back().v, w.back().v - w.front().v, w.size()};
  for (const auto& p : w) {
    if (p.v < s.min) s.min = p.v;
    if (p.v > s.max) s.max = p.v;
  }
  return s;
}

/// Number of i with v[i-1] <= threshold < v[i].
inline int upward_crossings(const std::vector<double>& series, double threshold) {
  int n = 0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i - 1] <= threshold && series[i] > threshold) ++n;
  }
  return n;
}

/// Random window with strictly increasing timestamps.
inline std::vector<Point> random_window(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> start(0.0, 86400.0);
  std::uniform_real_distribution<double> step(1.0, 300.0);
  std::uniform_real_distribution<double> value(-40.0, 60.0);
  std::vector<Point> w;
  double t = start(rng);
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back({t, value(rng)});
    t += step(rng);
  }
  return w;
}

}  // namespace oracle
