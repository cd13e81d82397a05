#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace biblio {

/// Structural CSV failure (unterminated quote, ragged row, missing column).
/// `line()` is the 1-based physical line where the offending record starts.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

/// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF endings,
/// newlines inside quotes. A leading UTF-8 BOM is skipped. Blank lines are
/// ignored.
std::vector<CsvRow> read_csv(std::istream &in);

/// Header-indexed view over a parsed table. Every data row must have
/// exactly as many cells as the header.
class CsvTable {
public:
  static CsvTable parse(std::istream &in);

  const std::vector<std::string> &header() const { return header_; }
  const std::vector<CsvRow> &rows() const { return rows_; }

  /// Index of `name` in the header, or throws ParseError naming the column.
  std::size_t require_column(std::string_view name) const;
  bool has_column(std::string_view name) const;

private:
  std::vector<std::string> header_;
  std::vector<CsvRow> rows_;
};

std::string csv_escape(std::string_view cell);

class CsvWriter {
public:
  explicit CsvWriter(std::ostream &out) : out_(out) {}

  CsvWriter &row(const std::vector<std::string> &cells);

private:
  std::ostream &out_;
};

} // namespace biblio
