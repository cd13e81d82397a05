#include "biblio/report.hpp"

#include <fmt/format.h>

#include "biblio/csv.hpp"

namespace biblio {

std::string format_real(double value) { return fmt::format("{}", value); }

void write_field_summary_csv(const std::vector<FieldStats> &rows,
                             std::ostream &out) {
  CsvWriter w(out);
  w.row({"field", "count", "mean_cit", "sd_cit", "mean_norm"});
  for (const auto &r : rows) {
    w.row({r.field, std::to_string(r.count), format_real(r.mean_cit),
           format_real(r.sd_cit), format_real(r.mean_norm)});
  }
}

void write_permutation_csv(const std::vector<PermutationResult> &rows,
                           std::ostream &out) {
  CsvWriter w(out);
  w.row({"field_a", "field_b", "t_obs", "p_value", "n_perm", "exact"});
  for (const auto &r : rows) {
    w.row({r.field_a, r.field_b, format_real(r.t_obs), format_real(r.p_value),
           std::to_string(r.n_perm), r.exact ? "true" : "false"});
  }
}

void write_inconclusive_list(const std::vector<PermutationResult> &rows,
                             std::ostream &out) {
  for (const auto &r : rows) {
    if (r.inconclusive()) {
      out << fmt::format("{} >= {} --- p-value: {:.4g}\n", r.field_a,
                         r.field_b, r.p_value);
    }
  }
}

void write_regression_csv(const RegressionFit &fit, std::ostream &out) {
  CsvWriter w(out);
  w.row({"term", "estimate", "stderr", "t", "p", "ci_lo", "ci_hi"});
  for (std::size_t j = 0; j < fit.k; ++j) {
    w.row({fit.names[j], format_real(fit.estimates[j]),
           format_real(fit.standard_errors[j]), format_real(fit.t_stats[j]),
           format_real(fit.p_values[j]), format_real(fit.ci95[j].first),
           format_real(fit.ci95[j].second)});
  }
}

void write_model_comparison_csv(const std::vector<ModelComparison> &models,
                                std::ostream &out) {
  CsvWriter w(out);
  w.row({"model", "aic", "rss", "k"});
  for (const auto &m : models) {
    w.row({std::string(formula_name(m.formula)), format_real(m.fit.aic),
           format_real(m.fit.rss), std::to_string(m.fit.k)});
  }
}

void write_qq_csv(const QQSeries &series, std::ostream &out) {
  CsvWriter w(out);
  w.row({"theoretical", "empirical"});
  for (const auto &p : series.points) {
    w.row({format_real(p.theoretical), format_real(p.empirical)});
  }
}

void write_calibration_csv(const CalibrationResult &result, std::ostream &out) {
  CsvWriter w(out);
  w.row({"alpha", "slope", "stderr", "t", "p"});
  for (const auto &r : result.diagnostics) {
    w.row({format_real(r.alpha), format_real(r.slope),
           format_real(r.stderr_slope), format_real(r.t), format_real(r.p)});
  }
}

void write_scored_csv(const std::vector<ScoredRecord> &records,
                      std::ostream &out) {
  CsvWriter w(out);
  w.row({"person_id", "institution", "major_field", "age", "citations",
         "norm_cit", "z"});
  for (const auto &r : records) {
    w.row({r.base.person_id, r.base.institution, r.major_field,
           std::to_string(r.age), std::to_string(r.base.citations),
           format_real(r.norm_cit), r.z ? format_real(*r.z) : ""});
  }
}

} // namespace biblio
