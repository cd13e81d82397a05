#include "biblio/corpus.hpp"

#include <charconv>
#include <string_view>
#include <unordered_map>

#include <fmt/format.h>

#include "biblio/csv.hpp"

namespace biblio {
namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) {
    return {};
  }
  auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

template <typename Int>
bool parse_int(std::string_view text, Int &out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc{} && ptr == text.data() + text.size();
}

} // namespace

const Corpus &ParsedCorpus::require_clean() const {
  if (rejections.empty()) {
    return corpus;
  }
  const auto &first = rejections.front();
  throw ValidationError(fmt::format("{} row(s) rejected; first at line {}: {}",
                                    rejections.size(), first.row,
                                    first.reason));
}

ParsedCorpus parse_corpus(std::istream &csv, int snapshot_year,
                          FieldMap field_map) {
  if (snapshot_year < kEarliestFirstPubYear) {
    throw std::invalid_argument(
        fmt::format("snapshot year {} precedes {}", snapshot_year,
                    kEarliestFirstPubYear));
  }
  auto table = CsvTable::parse(csv);
  const auto id_col = table.require_column("person_id");
  const auto inst_col = table.require_column("institution");
  const auto field_col = table.require_column("raw_field");
  const auto year_col = table.require_column("first_pub_year");
  const auto cit_col = table.require_column("citations");

  ParsedCorpus out;
  out.corpus.field_map = std::move(field_map);
  out.corpus.records.reserve(table.rows().size());
  std::unordered_map<std::string, std::size_t> seen;

  for (const auto &row : table.rows()) {
    auto reject = [&](std::string reason) {
      out.rejections.push_back({row.line, std::move(reason)});
    };
    FacultyRecord rec;
    rec.person_id = std::string(trim(row.cells[id_col]));
    rec.institution = std::string(trim(row.cells[inst_col]));
    rec.raw_field = std::string(trim(row.cells[field_col]));
    rec.snapshot_year = snapshot_year;

    if (rec.person_id.empty()) {
      reject("person_id is empty");
      continue;
    }
    if (rec.institution.empty()) {
      reject("institution is empty");
      continue;
    }
    if (!parse_int(row.cells[cit_col], rec.citations)) {
      reject(fmt::format("citations '{}' is not an integer",
                         row.cells[cit_col]));
      continue;
    }
    if (rec.citations < 0) {
      reject(fmt::format("citations must be >= 0 (got {})", rec.citations));
      continue;
    }
    if (!parse_int(row.cells[year_col], rec.first_pub_year)) {
      reject(fmt::format("first_pub_year '{}' is not an integer",
                         row.cells[year_col]));
      continue;
    }
    if (rec.first_pub_year < kEarliestFirstPubYear) {
      reject(fmt::format("first_pub_year {} precedes {}", rec.first_pub_year,
                         kEarliestFirstPubYear));
      continue;
    }
    if (rec.first_pub_year > snapshot_year) {
      reject(fmt::format("first_pub_year {} is after snapshot year {}",
                         rec.first_pub_year, snapshot_year));
      continue;
    }
    if (auto [it, inserted] = seen.emplace(rec.person_id, row.line);
        !inserted) {
      reject(fmt::format("duplicate person_id '{}' (first seen at line {})",
                         rec.person_id, it->second));
      continue;
    }
    out.corpus.records.push_back(std::move(rec));
  }
  return out;
}

void write_corpus_csv(const Corpus &corpus, std::ostream &out) {
  CsvWriter w(out);
  w.row({"person_id", "institution", "raw_field", "first_pub_year",
         "citations"});
  for (const auto &r : corpus.records) {
    w.row({r.person_id, r.institution, r.raw_field,
           std::to_string(r.first_pub_year), std::to_string(r.citations)});
  }
}

void write_rejections_csv(const std::vector<Rejection> &rejections,
                          std::ostream &out) {
  CsvWriter w(out);
  w.row({"row", "reason"});
  for (const auto &r : rejections) {
    w.row({std::to_string(r.row), r.reason});
  }
}

} // namespace biblio
