#include "biblio/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "biblio/distributions.hpp"

namespace biblio {
namespace {

constexpr double kCollinearityTolerance = 1e-10;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

} // namespace

std::size_t RegressionFit::index_of(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw std::out_of_range(fmt::format("no coefficient named '{}'", name));
  }
  return static_cast<std::size_t>(it - names.begin());
}

CollinearityError::CollinearityError(std::string column,
                                     std::vector<std::string> spanned_by)
    : std::runtime_error(
          spanned_by.empty()
              ? fmt::format("rank-deficient design: column '{}' is zero",
                            column)
              : fmt::format("rank-deficient design: column '{}' is collinear "
                            "with columns {{{}}}",
                            column, fmt::join(spanned_by, ", "))),
      column_(std::move(column)) {}

void DesignMatrix::add_column(std::string name, std::vector<double> values) {
  if (values.size() != rows_) {
    throw std::invalid_argument(
        fmt::format("column '{}' has {} rows, expected {}", name,
                    values.size(), rows_));
  }
  names_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

RegressionFit fit_least_squares(const DesignMatrix &design,
                                std::span<const double> response) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  if (response.size() != n) {
    throw std::invalid_argument("response length does not match design rows");
  }
  if (k == 0 || n <= k) {
    throw std::invalid_argument(fmt::format(
        "need more observations than coefficients (n = {}, k = {})", n, k));
  }

  // Householder QR in place on a copy; `qty` accumulates Q^T y.
  std::vector<std::vector<double>> a(k);
  std::vector<double> column_norm(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto col = design.column(j);
    a[j].assign(col.begin(), col.end());
    column_norm[j] = std::sqrt(dot(col, col));
  }
  std::vector<double> qty(response.begin(), response.end());
  std::vector<double> v(n);

  for (std::size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < n; ++i) {
      norm += a[j][i] * a[j][i];
    }
    norm = std::sqrt(norm);
    if (column_norm[j] == 0.0 ||
        norm <= kCollinearityTolerance * column_norm[j]) {
      std::vector<std::string> earlier(design.names().begin(),
                                       design.names().begin() + j);
      throw CollinearityError(design.names()[j], std::move(earlier));
    }
    const double diag = a[j][j] > 0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) {
      v[i] = a[j][i];
    }
    v[j] -= diag;
    for (std::size_t i = j; i < n; ++i) {
      vnorm2 += v[i] * v[i];
    }
    auto reflect = [&](std::vector<double> &target) {
      double s = 0.0;
      for (std::size_t i = j; i < n; ++i) {
        s += v[i] * target[i];
      }
      s = 2.0 * s / vnorm2;
      for (std::size_t i = j; i < n; ++i) {
        target[i] -= s * v[i];
      }
    };
    for (std::size_t c = j + 1; c < k; ++c) {
      reflect(a[c]);
    }
    reflect(qty);
    a[j][j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      a[j][i] = 0.0;
    }
  }

  // R is a[col][row] for row <= col.
  auto r = [&](std::size_t row, std::size_t col) { return a[col][row]; };

  RegressionFit fit;
  fit.names = design.names();
  fit.n = n;
  fit.k = k;
  fit.estimates.assign(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double s = qty[jj];
    for (std::size_t c = jj + 1; c < k; ++c) {
      s -= r(jj, c) * fit.estimates[c];
    }
    fit.estimates[jj] = s / r(jj, jj);
  }

  double rss = 0.0;
  const double mean_y =
      std::accumulate(response.begin(), response.end(), 0.0) /
      static_cast<double>(n);
  double tss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      fitted += design.column(j)[i] * fit.estimates[j];
    }
    const double resid = response[i] - fitted;
    rss += resid * resid;
    tss += (response[i] - mean_y) * (response[i] - mean_y);
  }
  fit.rss = rss;
  fit.r_squared = tss > 0.0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 1.0;

  // diag((R^T R)^-1) = squared row norms of R^-1
  std::vector<std::vector<double>> rinv(k, std::vector<double>(k, 0.0));
  for (std::size_t c = 0; c < k; ++c) {
    rinv[c][c] = 1.0 / r(c, c);
    for (std::size_t row = c; row-- > 0;) {
      double s = 0.0;
      for (std::size_t m = row + 1; m <= c; ++m) {
        s += r(row, m) * rinv[m][c];
      }
      rinv[row][c] = -s / r(row, row);
    }
  }

  const double df = static_cast<double>(n - k);
  const double sigma2 = rss / df;
  const double t_crit = student_t_quantile(0.975, df);
  fit.standard_errors.resize(k);
  fit.t_stats.resize(k);
  fit.p_values.resize(k);
  fit.ci95.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double var = 0.0;
    for (std::size_t c = j; c < k; ++c) {
      var += rinv[j][c] * rinv[j][c];
    }
    const double se = std::sqrt(sigma2 * var);
    const double est = fit.estimates[j];
    fit.standard_errors[j] = se;
    if (se > 0.0) {
      fit.t_stats[j] = est / se;
      fit.p_values[j] = student_t_two_sided_p(fit.t_stats[j], df);
    } else {
      fit.t_stats[j] = est == 0.0 ? 0.0
                                  : std::copysign(
                                        std::numeric_limits<double>::infinity(),
                                        est);
      fit.p_values[j] = est == 0.0 ? 1.0 : 0.0;
    }
    fit.ci95[j] = {est - t_crit * se, est + t_crit * se};
  }

  const double nd = static_cast<double>(n);
  fit.log_likelihood =
      -0.5 * nd * (std::log(2.0 * std::numbers::pi) + std::log(rss / nd) + 1.0);
  fit.aic = -2.0 * fit.log_likelihood + 2.0 * static_cast<double>(k + 1);
  return fit;
}

RegressionFit simple_ols(std::span<const double> x, std::span<const double> y,
                         std::string_view x_name) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(fmt::format(
        "x and y lengths differ ({} vs {})", x.size(), y.size()));
  }
  if (x.size() < 3) {
    throw std::invalid_argument(
        fmt::format("simple OLS needs at least 3 points (got {})", x.size()));
  }
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*lo == *hi) {
    throw std::invalid_argument("x has zero variance");
  }
  DesignMatrix design(x.size());
  design.add_column("(Intercept)", std::vector<double>(x.size(), 1.0));
  design.add_column(std::string(x_name), std::vector<double>(x.begin(), x.end()));
  return fit_least_squares(design, y);
}

std::string_view formula_name(ModelFormula formula) {
  switch (formula) {
  case ModelFormula::AgeAndField:
    return "age_and_field";
  case ModelFormula::FieldOnly:
    return "field_only";
  case ModelFormula::AgeOnly:
    return "age_only";
  }
  return "unknown";
}

std::string_view formula_label(ModelFormula formula) {
  switch (formula) {
  case ModelFormula::AgeAndField:
    return "log(C) ~ age + field";
  case ModelFormula::FieldOnly:
    return "log(C) ~ field";
  case ModelFormula::AgeOnly:
    return "log(C) ~ age";
  }
  return "unknown";
}

RegressionFit factored_ols(const std::vector<ScoredRecord> &records,
                           ModelFormula formula, LogResponse response) {
  std::vector<const ScoredRecord *> used;
  used.reserve(records.size());
  for (const auto &r : records) {
    if (response == LogResponse::DropZero && r.base.citations == 0) {
      continue;
    }
    used.push_back(&r);
  }
  const std::size_t n = used.size();

  const bool with_age = formula != ModelFormula::FieldOnly;
  const bool with_field = formula != ModelFormula::AgeOnly;

  std::set<std::string> fields;
  for (const auto *r : used) {
    fields.insert(r->major_field);
  }
  if (with_field && fields.size() < 2) {
    throw std::invalid_argument(fmt::format(
        "model '{}' needs records from at least 2 fields (found {})",
        formula_name(formula), fields.size()));
  }

  DesignMatrix design(n);
  design.add_column("(Intercept)", std::vector<double>(n, 1.0));
  if (with_age) {
    std::vector<double> age(n);
    std::transform(used.begin(), used.end(), age.begin(),
                   [](const ScoredRecord *r) { return double(r->age); });
    design.add_column("age", std::move(age));
  }
  if (with_field) {
    // first level (alphabetical) is the reference
    for (auto it = std::next(fields.begin()); it != fields.end(); ++it) {
      std::vector<double> indicator(n);
      std::transform(used.begin(), used.end(), indicator.begin(),
                     [&](const ScoredRecord *r) {
                       return r->major_field == *it ? 1.0 : 0.0;
                     });
      design.add_column("field:" + *it, std::move(indicator));
    }
  }
  if (n <= design.cols()) {
    throw std::invalid_argument(fmt::format(
        "model '{}' has {} coefficients but only {} observations",
        formula_name(formula), design.cols(), n));
  }

  std::vector<double> y(n);
  std::transform(used.begin(), used.end(), y.begin(),
                 [&](const ScoredRecord *r) {
                   const double c = static_cast<double>(r->base.citations);
                   return response == LogResponse::PlusOne ? std::log1p(c)
                                                           : std::log(c);
                 });
  return fit_least_squares(design, y);
}

std::vector<ModelComparison>
compare_models(const std::vector<ScoredRecord> &records, LogResponse response) {
  std::vector<ModelComparison> out;
  for (auto f : {ModelFormula::AgeAndField, ModelFormula::FieldOnly,
                 ModelFormula::AgeOnly}) {
    out.push_back({f, factored_ols(records, f, response)});
  }
  return out;
}

} // namespace biblio
