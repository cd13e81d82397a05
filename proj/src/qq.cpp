#include "biblio/qq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biblio {

QQSeries qq_exponential(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("QQ series needs at least one value");
  }
  if (std::any_of(values.begin(), values.end(),
                  [](double v) { return !(v >= 0.0) || std::isinf(v); })) {
    throw std::invalid_argument("QQ values must be finite and non-negative");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double m = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  if (m == 0.0) {
    throw std::invalid_argument("QQ values have zero mean");
  }
  QQSeries out;
  out.rate_estimate = 1.0 / m;
  out.points.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / n;
    out.points.push_back({-std::log1p(-p) * m, sorted[i]});
  }
  return out;
}

std::vector<double> sqrt_transform(std::span<const double> values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [](double v) { return std::sqrt(v); });
  return out;
}

} // namespace biblio
