#include "biblio/field_map.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include <fmt/format.h>

#include "biblio/csv.hpp"

namespace biblio {
namespace {

struct Classification {
  std::string_view major;
  std::vector<std::string_view> sub_fields;
};

// Transcribed from the published classification tables, one entry per
// sub-field string. Spelling and capitalization follow the source.
const std::vector<Classification> &classification_table() {
  static const std::vector<Classification> table = {
      {"Algebra",
       {"Algebraic Topology", "Associative Rings and Algebra",
        "Category theory, Homological algebra",
        "Commutative rings and algebras", "Field theory",
        "General algebraic systems", "K-theory",
        "Linear and Multilinear Algebra, matrix theory",
        "Associative rings and algebras",
        "Order, lattices, ordered algebraic structures"}},
      {"Algebraic Geometry", {"Algebraic Geometry"}},
      {"Analysis",
       {"Difference and functional equations", "Integral equations",
        "Integral transforms, operational calculus",
        "Ordinary differential equations", "Real functions",
        "Special functions"}},
      {"Applied Mathematics",
       {"Approximations and expansions", "Biology other natural sciences",
        "Calculus of variations and optimal control, optimization",
        "Fluid mechanics",
        "Game theory, economics, social and behavioral sciences",
        "Geophysics", "Mechanics of deformable sciences",
        "Mechanics of solids", "Operations research, mathematical programming",
        "Systems theory, control"}},
      {"Combinatorics", {"Combinatorics"}},
      {"Complex Analysis",
       {"Functions of a complex variable", "Potential theory",
        "Several complex variables and analytic spaces"}},
      {"Computer Science",
       {"Computer Science", "Numerical Analysis",
        "Information and communication, circuits"}},
      {"Dynamics", {"Dynamical Systems and Ergodic Theory"}},
      {"Geometry",
       {"Convex and discrete geometry", "Differential Geometry",
        "General topology", "Geometry", "Manifolds and cell complexes"}},
      {"Group Theory", {"Group theory and generalizations"}},
      {"Harmonic Analysis",
       {"Abstract harmonic analysis", "Fourier analysis",
        "Functional analysis", "Global analysis, analysis on manifolds",
        "Measure and integration", "Operator theory"}},
      {"History", {"History and biography"}},
      {"Lie Groups", {"Topological Groups, Lie Groups"}},
      {"Logic",
       {"Logic and foundations", "Mathematical logic and foundations",
        "Set theory"}},
      {"Mathematical Physics",
       {"Classical thermodynamics, heat transfer",
        "Mechanics of particles and systems",
        "Optics, electromagnetic theory", "Quantum theory",
        "Relativity and gravitational theory",
        "Statistical mechanics, structure of matter"}},
      {"Number Theory", {"Number Theory"}},
      {"Other", {"Other"}},
      {"PDE",
       {"Partial Differential Equations",
        "Global Analysis, Analysis on manifolds"}},
      {"Probability", {"Probability theory and stochastic processes"}},
      {"Statistics", {"Statistics"}},
  };
  return table;
}

} // namespace

bool is_major_field(std::string_view name) {
  return std::find(kMajorFields.begin(), kMajorFields.end(), name) !=
         kMajorFields.end();
}

UnknownTagError::UnknownTagError(std::string tag)
    : std::runtime_error(fmt::format("unknown subject tag '{}'", tag)),
      tag_(std::move(tag)) {}

std::string normalize_tag(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

FieldMap FieldMap::default_map() {
  FieldMap map;
  for (const auto &[major, subs] : classification_table()) {
    for (auto sub : subs) {
      auto key = normalize_tag(sub);
      auto [it, inserted] = map.entries_.emplace(key, std::string(major));
      if (!inserted && it->second != major) {
        auto &candidates = map.conflicts_[key];
        if (candidates.empty()) {
          candidates.push_back(it->second);
        }
        candidates.emplace_back(major);
      }
    }
  }
  return map;
}

void FieldMap::assign(std::string_view raw_tag, std::string_view major_field) {
  if (!is_major_field(major_field)) {
    throw std::invalid_argument(
        fmt::format("'{}' is not a major field", major_field));
  }
  auto key = normalize_tag(raw_tag);
  if (key.empty()) {
    throw std::invalid_argument("empty subject tag");
  }
  entries_[key] = std::string(major_field);
  conflicts_.erase(key);
}

void FieldMap::apply_overrides(std::istream &csv) {
  auto table = CsvTable::parse(csv);
  auto tag_col = table.require_column("raw_tag");
  auto field_col = table.require_column("major_field");
  for (const auto &row : table.rows()) {
    try {
      assign(row.cells[tag_col], row.cells[field_col]);
    } catch (const std::invalid_argument &e) {
      throw ParseError(row.line, e.what());
    }
  }
}

const std::string *FieldMap::find(std::string_view raw_tag) const {
  auto it = entries_.find(normalize_tag(raw_tag));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string map_field(std::string_view raw_field, const FieldMap &field_map,
                      const WarningSink &sink) {
  auto key = normalize_tag(raw_field);
  if (const auto *major = field_map.find(key)) {
    if (auto c = field_map.conflicts().find(key);
        c != field_map.conflicts().end() && sink) {
      sink(fmt::format("subject tag '{}' is listed under {}; using {}",
                       raw_field, fmt::join(c->second, " and "), *major));
    }
    return *major;
  }
  if (field_map.unknown_policy() == UnknownTagPolicy::Reject) {
    throw UnknownTagError(std::string(raw_field));
  }
  if (sink) {
    sink(fmt::format("unknown subject tag '{}' mapped to {}", raw_field,
                     kOtherField));
  }
  return std::string(kOtherField);
}

} // namespace biblio
