#include "biblio/csv.hpp"

#include <algorithm>
#include <iterator>

#include <fmt/format.h>

namespace biblio {

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line) {}

std::vector<CsvRow> read_csv(std::istream &in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  std::size_t pos = 0;
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    pos = 3;
  }

  std::vector<CsvRow> rows;
  std::size_t line = 1;
  while (pos < text.size()) {
    CsvRow row;
    row.line = line;
    std::string cell;
    bool in_quotes = false;
    bool cell_was_quoted = false;
    bool row_done = false;
    while (!row_done) {
      if (pos >= text.size()) {
        if (in_quotes) {
          throw ParseError(row.line, "unterminated quoted field");
        }
        row.cells.push_back(std::move(cell));
        break;
      }
      char c = text[pos++];
      if (in_quotes) {
        if (c == '"') {
          if (pos < text.size() && text[pos] == '"') {
            cell.push_back('"');
            ++pos;
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') {
            ++line;
          }
          cell.push_back(c);
        }
        continue;
      }
      switch (c) {
      case '"':
        if (!cell.empty() || cell_was_quoted) {
          throw ParseError(line, "unexpected quote inside unquoted field");
        }
        in_quotes = true;
        cell_was_quoted = true;
        break;
      case ',':
        row.cells.push_back(std::move(cell));
        cell.clear();
        cell_was_quoted = false;
        break;
      case '\r':
        if (pos < text.size() && text[pos] == '\n') {
          ++pos;
        }
        [[fallthrough]];
      case '\n':
        row.cells.push_back(std::move(cell));
        ++line;
        row_done = true;
        break;
      default:
        if (cell_was_quoted) {
          throw ParseError(line, "text after closing quote");
        }
        cell.push_back(c);
      }
    }
    bool blank = row.cells.size() == 1 && row.cells.front().empty();
    if (!blank) {
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

CsvTable CsvTable::parse(std::istream &in) {
  CsvTable table;
  auto rows = read_csv(in);
  if (rows.empty()) {
    throw ParseError(1, "missing header row");
  }
  table.header_ = std::move(rows.front().cells);
  for (auto &h : table.header_) {
    auto first = h.find_first_not_of(" \t");
    auto last = h.find_last_not_of(" \t");
    h = first == std::string::npos ? "" : h.substr(first, last - first + 1);
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].cells.size() != table.header_.size()) {
      throw ParseError(rows[i].line,
                       fmt::format("expected {} fields, found {}",
                                   table.header_.size(),
                                   rows[i].cells.size()));
    }
    table.rows_.push_back(std::move(rows[i]));
  }
  return table;
}

std::size_t CsvTable::require_column(std::string_view name) const {
  auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) {
    throw ParseError(1, fmt::format("header is missing column '{}'", name));
  }
  return static_cast<std::size_t>(it - header_.begin());
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(header_.begin(), header_.end(), name) != header_.end();
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(cell);
  }
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') {
      out.push_back('"');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

CsvWriter &CsvWriter::row(const std::vector<std::string> &cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      out_ << ',';
    }
    out_ << csv_escape(cells[i]);
  }
  out_ << '\n';
  return *this;
}

} // namespace biblio
