#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biblio/normalize.hpp"

namespace biblio {

/// Ordinary least-squares fit with Gaussian-error inference.
struct RegressionFit {
  std::vector<std::string> names;
  std::vector<double> estimates;
  std::vector<double> standard_errors;
  std::vector<double> t_stats;
  /// Two-sided, Student-t with n - k degrees of freedom.
  std::vector<double> p_values;
  std::vector<std::pair<double, double>> ci95;
  double r_squared = 0.0;
  double rss = 0.0;
  std::size_t n = 0;
  /// Estimated coefficients including the intercept.
  std::size_t k = 0;
  double log_likelihood = 0.0;
  /// n ln(2 pi) + n ln(rss / n) + n + 2 (k + 1); the error variance counts
  /// as a parameter.
  double aic = 0.0;

  /// Index of the coefficient called `name`; throws std::out_of_range.
  std::size_t index_of(std::string_view name) const;
};

/// Raised when a design column lies in the span of the preceding columns.
class CollinearityError : public std::runtime_error {
public:
  CollinearityError(std::string column, std::vector<std::string> spanned_by);
  const std::string &column() const noexcept { return column_; }

private:
  std::string column_;
};

/// Column-major design matrix with named columns.
class DesignMatrix {
public:
  explicit DesignMatrix(std::size_t rows) : rows_(rows) {}

  void add_column(std::string name, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::span<const double> column(std::size_t j) const { return columns_[j]; }
  const std::vector<std::string> &names() const { return names_; }

private:
  std::size_t rows_;
  std::vector<std::vector<double>> columns_;
  std::vector<std::string> names_;
};

/// Least squares via Householder QR. A column whose residual norm after
/// orthogonalization against earlier columns falls below 1e-10 of its own
/// norm raises CollinearityError. Requires rows > cols.
RegressionFit fit_least_squares(const DesignMatrix &design,
                                std::span<const double> response);

/// Intercept-plus-slope regression of y on x; coefficients are named
/// "(Intercept)" and `x_name`. Requires n >= 3 and non-constant x.
RegressionFit simple_ols(std::span<const double> x, std::span<const double> y,
                         std::string_view x_name = "x");

enum class ModelFormula { AgeAndField, FieldOnly, AgeOnly };

std::string_view formula_name(ModelFormula formula);
std::string_view formula_label(ModelFormula formula);

enum class LogResponse {
  /// log(citations + 1) on every record.
  PlusOne,
  /// log(citations), dropping zero-citation records.
  DropZero,
};

/// Log-citations regressed on an intercept plus age and/or treatment-coded
/// field indicators. The field reference level is the alphabetically first
/// field present; indicator columns are named "field:<name>".
RegressionFit factored_ols(const std::vector<ScoredRecord> &records,
                           ModelFormula formula,
                           LogResponse response = LogResponse::PlusOne);

struct ModelComparison {
  ModelFormula formula;
  RegressionFit fit;
};

/// The three nested models, in the order age+field, field, age.
std::vector<ModelComparison>
compare_models(const std::vector<ScoredRecord> &records,
               LogResponse response = LogResponse::PlusOne);

} // namespace biblio
