#pragma once

#include <span>
#include <vector>

namespace biblio {

struct QQPoint {
  double theoretical = 0.0;
  double empirical = 0.0;
};

struct QQSeries {
  std::vector<QQPoint> points;
  /// 1 / mean(values)
  double rate_estimate = 0.0;
};

/// Exponential QQ data: sorted values against -ln(1 - p_i) / rate with
/// plotting positions p_i = (i - 0.5) / n. Callers pass already
/// square-root-transformed values.
QQSeries qq_exponential(std::span<const double> values);

/// Square root of each element (helper for the transform above).
std::vector<double> sqrt_transform(std::span<const double> values);

} // namespace biblio
