#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/normalize.hpp"

namespace biblio {

struct DepartmentScore {
  std::string institution;
  double mean_z = 0.0;
  std::size_t faculty_count = 0;
  std::size_t rank = 0;

  bool operator==(const DepartmentScore &) const = default;
};

/// Mean interfield z per institution, ranked by mean_z descending, then
/// faculty_count descending, then institution ascending. Throws
/// ValidationError if any record lacks a z-score or an institution.
std::vector<DepartmentScore>
rank_departments(const std::vector<ScoredRecord> &records);

enum class ReportFormat { Csv, Json, Markdown };

std::optional<ReportFormat> parse_report_format(std::string_view name);
std::string_view report_extension(ReportFormat format);

/// Writes rank, institution, mean_z (6 decimals), faculty_count. Markdown
/// output is a numbered list.
void emit_ranking_report(const std::vector<DepartmentScore> &scores,
                         ReportFormat format, std::ostream &out);

/// Reads the CSV form written by emit_ranking_report.
std::vector<DepartmentScore> parse_ranking_csv(std::istream &in);

} // namespace biblio
