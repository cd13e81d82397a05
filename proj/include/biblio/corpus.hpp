#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "biblio/field_map.hpp"

namespace biblio {

inline constexpr int kDefaultSnapshotYear = 2020;
inline constexpr int kEarliestFirstPubYear = 1900;

/// One professor's citation record.
struct FacultyRecord {
  std::string person_id;
  std::string institution;
  /// Subject tag of the most-cited publication.
  std::string raw_field;
  int first_pub_year = 0;
  long long citations = 0;
  int snapshot_year = kDefaultSnapshotYear;

  bool operator==(const FacultyRecord &) const = default;
};

struct Corpus {
  std::vector<FacultyRecord> records;
  FieldMap field_map = FieldMap::default_map();
  std::string provenance;

  bool operator==(const Corpus &) const = default;
};

/// A data row that failed validation. `row` is the 1-based physical line in
/// the source file (the header is line 1).
struct Rejection {
  std::size_t row = 0;
  std::string reason;

  bool operator==(const Rejection &) const = default;
};

/// Raised for semantic failures that are not tied to CSV structure.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ParsedCorpus {
  Corpus corpus;
  std::vector<Rejection> rejections;

  /// Throws ValidationError summarizing the rejections, if any.
  const Corpus &require_clean() const;
};

/// Reads faculty records from CSV. Required header columns: person_id,
/// institution, raw_field, first_pub_year, citations (any order, extra
/// columns ignored). Rows violating record invariants or repeating an
/// earlier person_id go to `rejections`; structural CSV errors throw
/// ParseError. The first row carrying a given person_id is kept.
ParsedCorpus parse_corpus(std::istream &csv, int snapshot_year,
                          FieldMap field_map = FieldMap::default_map());

/// Writes records in parse_corpus's input schema.
void write_corpus_csv(const Corpus &corpus, std::ostream &out);

void write_rejections_csv(const std::vector<Rejection> &rejections,
                          std::ostream &out);

} // namespace biblio
