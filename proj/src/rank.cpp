#include "biblio/rank.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "biblio/csv.hpp"

namespace biblio {

std::vector<DepartmentScore>
rank_departments(const std::vector<ScoredRecord> &records) {
  std::vector<std::string> missing_inst;
  std::vector<std::string> missing_z;
  struct Acc {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, Acc> by_inst;
  for (const auto &r : records) {
    if (r.base.institution.empty()) {
      missing_inst.push_back(r.base.person_id);
      continue;
    }
    if (!r.z) {
      missing_z.push_back(r.base.person_id);
      continue;
    }
    auto &acc = by_inst[r.base.institution];
    acc.sum += *r.z;
    ++acc.count;
  }
  if (!missing_inst.empty()) {
    throw ValidationError(fmt::format("records with empty institution: {}",
                                      fmt::join(missing_inst, ", ")));
  }
  if (!missing_z.empty()) {
    throw ValidationError(fmt::format("records without a z-score: {}",
                                      fmt::join(missing_z, ", ")));
  }

  std::vector<DepartmentScore> out;
  out.reserve(by_inst.size());
  for (const auto &[inst, acc] : by_inst) {
    out.push_back({inst, acc.sum / static_cast<double>(acc.count), acc.count, 0});
  }
  std::sort(out.begin(), out.end(),
            [](const DepartmentScore &a, const DepartmentScore &b) {
              if (a.mean_z != b.mean_z) {
                return a.mean_z > b.mean_z;
              }
              if (a.faculty_count != b.faculty_count) {
                return a.faculty_count > b.faculty_count;
              }
              return a.institution < b.institution;
            });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = i + 1;
  }
  return out;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "csv") {
    return ReportFormat::Csv;
  }
  if (name == "json") {
    return ReportFormat::Json;
  }
  if (name == "markdown" || name == "md") {
    return ReportFormat::Markdown;
  }
  return std::nullopt;
}

std::string_view report_extension(ReportFormat format) {
  switch (format) {
  case ReportFormat::Csv:
    return "csv";
  case ReportFormat::Json:
    return "json";
  case ReportFormat::Markdown:
    return "md";
  }
  return "txt";
}

void emit_ranking_report(const std::vector<DepartmentScore> &scores,
                         ReportFormat format, std::ostream &out) {
  switch (format) {
  case ReportFormat::Csv: {
    CsvWriter w(out);
    w.row({"rank", "institution", "mean_z", "faculty_count"});
    for (const auto &s : scores) {
      w.row({std::to_string(s.rank), s.institution,
             fmt::format("{:.6f}", s.mean_z), std::to_string(s.faculty_count)});
    }
    break;
  }
  case ReportFormat::Json: {
    // mean_z is written verbatim with 6 decimals, so the array is built by
    // hand around json-escaped strings
    out << "[\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const auto &s = scores[i];
      out << fmt::format(
          "  {{\"rank\": {}, \"institution\": {}, \"mean_z\": {:.6f}, "
          "\"faculty_count\": {}}}{}\n",
          s.rank, nlohmann::json(s.institution).dump(), s.mean_z,
          s.faculty_count, i + 1 < scores.size() ? "," : "");
    }
    out << "]\n";
    break;
  }
  case ReportFormat::Markdown:
    out << "# Department ranking by mean interfield z-score\n\n";
    for (const auto &s : scores) {
      out << fmt::format("{}. {} (mean z = {:.6f}, faculty = {})\n", s.rank,
                         s.institution, s.mean_z, s.faculty_count);
    }
    break;
  }
}

std::vector<DepartmentScore> parse_ranking_csv(std::istream &in) {
  auto table = CsvTable::parse(in);
  const auto rank_col = table.require_column("rank");
  const auto inst_col = table.require_column("institution");
  const auto z_col = table.require_column("mean_z");
  const auto count_col = table.require_column("faculty_count");
  std::vector<DepartmentScore> out;
  for (const auto &row : table.rows()) {
    DepartmentScore s;
    s.institution = row.cells[inst_col];
    try {
      s.rank = std::stoul(row.cells[rank_col]);
      s.mean_z = std::stod(row.cells[z_col]);
      s.faculty_count = std::stoul(row.cells[count_col]);
    } catch (const std::exception &) {
      throw ParseError(row.line, "malformed ranking row");
    }
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace biblio
