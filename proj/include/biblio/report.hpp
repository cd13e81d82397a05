#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "biblio/field_stats.hpp"
#include "biblio/normalize.hpp"
#include "biblio/permutation.hpp"
#include "biblio/qq.hpp"
#include "biblio/regression.hpp"

namespace biblio {

/// Shortest round-trip decimal representation.
std::string format_real(double value);

void write_field_summary_csv(const std::vector<FieldStats> &rows,
                             std::ostream &out);

void write_permutation_csv(const std::vector<PermutationResult> &rows,
                           std::ostream &out);

/// "A >= B --- p-value: x" lines for the tests with p > 0.05.
void write_inconclusive_list(const std::vector<PermutationResult> &rows,
                             std::ostream &out);

/// term, estimate, stderr, t, p, ci_lo, ci_hi
void write_regression_csv(const RegressionFit &fit, std::ostream &out);

/// model, aic, rss, k
void write_model_comparison_csv(const std::vector<ModelComparison> &models,
                                std::ostream &out);

void write_qq_csv(const QQSeries &series, std::ostream &out);

/// alpha, slope, stderr, t, p
void write_calibration_csv(const CalibrationResult &result, std::ostream &out);

/// Per-person scores: person_id, institution, major_field, age, citations,
/// norm_cit, z.
void write_scored_csv(const std::vector<ScoredRecord> &records,
                      std::ostream &out);

} // namespace biblio
