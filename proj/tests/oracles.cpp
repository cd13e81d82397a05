#include "oracles.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace oracle {
namespace {

double t_density(double x, double df) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                   std::sqrt(df * std::numbers::pi);
  return c * std::pow(1 + x * x / df, -(df + 1) / 2);
}

double simpson(const std::function<double(double)> &f, double a, double b) {
  constexpr int panels = 1 << 16;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    sum += f(a + i * h) * (i % 2 ? 4 : 2);
  }
  return sum * h / 3;
}

} // namespace

double t_two_sided_by_quadrature(double t, double df) {
  auto f = [df](double x) { return t_density(x, df); };
  const double at = std::fabs(t);
  if (at < 1.0) {
    return 1.0 - 2.0 * simpson(f, 0.0, at);
  }
  // tail under x = |t| / u keeps the integrand smooth on [0, 1]
  auto tail = [&](double u) {
    if (u == 0.0) {
      return df == 1.0 ? 1.0 / (std::numbers::pi * at) : 0.0;
    }
    return f(at / u) * at / (u * u);
  };
  return 2.0 * simpson(tail, 0.0, 1.0);
}

LineFit closed_form_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f{};
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    rss += e * e;
  }
  const double s2 = rss / (n - 2);
  f.se_slope = std::sqrt(s2 / sxx);
  f.se_intercept = std::sqrt(s2 * (1 / n + mx * mx / sxx));
  f.p_slope = t_two_sided_by_quadrature(f.slope / f.se_slope, n - 2);
  f.p_intercept = t_two_sided_by_quadrature(f.intercept / f.se_intercept, n - 2);
  f.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

double exact_permutation_p(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  if (n > 24) {
    throw std::invalid_argument("oracle enumeration limited to 24 values");
  }
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  auto stat = [&](std::uint32_t mask) {
    double sa = 0, sb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ((mask >> i) & 1u ? sa : sb) += pooled[i];
    }
    return sa / double(a.size()) - sb / double(b.size());
  };
  const double observed = stat((1u << a.size()) - 1);
  std::uint64_t total = 0, hits = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != a.size()) {
      continue;
    }
    ++total;
    hits += stat(mask) >= observed - 1e-9 * (1 + std::fabs(observed));
  }
  return double(hits) / double(total);
}

} // namespace oracle
