#include "gradedsim/documents.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_set>

#include "gradedsim/errors.hpp"

namespace gradedsim {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Parses the document text, descending into a report's payload so command
// output can be piped back in, and checks the expected "kind" tag.
Json load_document(const std::string& text, const char* kind) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    throw ParseError(e.what(), line, column);
  }
  if (doc.is_object() && !doc.contains("kind") && doc.contains("payload"))
    doc = doc.at("payload");
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
    throw SemanticError("document has no \"kind\" field");
  if (doc.at("kind").get<std::string>() != kind)
    throw SemanticError("expected a \"" + std::string(kind) +
                        "\" document, got \"" +
                        doc.at("kind").get<std::string>() + "\"");
  return doc;
}

void expect_fields(const Json& object,
                   std::initializer_list<const char*> allowed,
                   const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (const char* name : allowed)
      if (it.key() == name) known = true;
    if (!known)
      throw SemanticError("unknown field \"" + it.key() + "\" in " + where);
  }
  for (const char* name : allowed)
    if (!object.contains(name))
      throw SemanticError("missing field \"" + std::string(name) + "\" in " +
                          where);
}

std::vector<std::string> parse_states(const Json& j) {
  if (!j.is_array())
    throw SemanticError("\"states\" must be an array");
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (const Json& item : j) {
    if (!item.is_string() || item.get<std::string>().empty())
      throw SemanticError("\"states\" entries must be nonempty strings");
    if (!seen.insert(item.get<std::string>()).second)
      throw SemanticError("duplicate state name \"" +
                          item.get<std::string>() + "\"");
    names.push_back(item.get<std::string>());
  }
  if (names.empty()) throw SemanticError("\"states\" must be nonempty");
  return names;
}

std::size_t state_index(const std::vector<std::string>& names,
                        const Json& j) {
  if (!j.is_string())
    throw SemanticError("state reference must be a string");
  const std::string name = j.get<std::string>();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw SemanticError("unknown state \"" + name + "\"");
  return static_cast<std::size_t>(it - names.begin());
}

const Json& matrix_rows(const Json& doc, std::size_t n) {
  const Json& rows = doc.at("rows");
  if (!rows.is_array() || rows.size() != n)
    throw SemanticError("\"rows\" must be an array with one row per state");
  for (const Json& row : rows)
    if (!row.is_array() || row.size() != n)
      throw SemanticError("every row must have one entry per state");
  return rows;
}

Grade parse_grade_entry(const Json& j, const GradeDomain& domain,
                        const std::string& where) {
  Grade g;
  if (j.is_string()) {
    const std::string text = j.get<std::string>();
    if (text == "inf") return Grade::infinity();
    g = Grade(parse_rational(text));
  } else if (j.is_number_integer() || j.is_number_unsigned()) {
    if (j.is_number_integer() && j.get<std::int64_t>() < 0)
      throw SemanticError("negative grade in " + where);
    g = Grade(Rational(j.get<std::int64_t>()));
  } else {
    throw SemanticError("grade in " + where +
                        " must be a \"p/q\" string, \"inf\", or an integer");
  }
  if (!domain.contains(g))
    throw SemanticError("grade " + format_grade(g) + " in " + where +
                        " lies outside domain " + domain.name());
  return g;
}

OrderedJson grade_to_json(const Grade& g, const GradeDomain& domain) {
  if (g.is_infinite()) return "inf";
  if (domain.kind() == GradeDomain::Kind::nat) {
    // Nat grades are integers; emit them as JSON numbers like the system
    // documents do. Falls back to the string form past 2^63.
    Int n = numerator(g.value());
    if (n <= Int(std::numeric_limits<std::int64_t>::max()))
      return n.convert_to<std::int64_t>();
  }
  return format_rational(g.value());
}

}  // namespace

NamedRelation parse_relation_document(const std::string& text) {
  Json doc = load_document(text, "relation");
  expect_fields(doc, {"kind", "states", "pairs"}, "relation document");
  std::vector<std::string> states = parse_states(doc.at("states"));
  Relation relation(states.size());
  if (!doc.at("pairs").is_array())
    throw SemanticError("\"pairs\" must be an array");
  for (const Json& pair : doc.at("pairs")) {
    if (!pair.is_array() || pair.size() != 2)
      throw SemanticError("every pair must be a two-element array");
    std::size_t i = state_index(states, pair.at(0));
    std::size_t j = state_index(states, pair.at(1));
    if (relation.contains(i, j))
      throw SemanticError("duplicate pair (\"" + states[i] + "\", \"" +
                          states[j] + "\")");
    relation.set(i, j);
  }
  return NamedRelation{std::move(states), std::move(relation)};
}

NamedMatrix parse_grades_document(const std::string& text) {
  Json doc = load_document(text, "grades");
  expect_fields(doc, {"kind", "domain", "states", "rows"}, "grades document");
  if (!doc.at("domain").is_string())
    throw SemanticError("\"domain\" must be a string");
  GradeDomain domain = GradeDomain::from_name(doc.at("domain").get<std::string>());
  std::vector<std::string> states = parse_states(doc.at("states"));
  const Json& rows = matrix_rows(doc, states.size());
  MinGradeMatrix matrix(domain, states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j)
      matrix.set(i, j,
                 parse_grade_entry(rows.at(i).at(j), domain,
                                   "row \"" + states[i] + "\""));
  return NamedMatrix{std::move(states), std::move(matrix)};
}

NamedMetric parse_metric_document(const std::string& text) {
  Json doc = load_document(text, "metric");
  expect_fields(doc, {"kind", "states", "rows"}, "metric document");
  std::vector<std::string> states = parse_states(doc.at("states"));
  const Json& rows = matrix_rows(doc, states.size());
  std::vector<Rational> entries;
  entries.reserve(states.size() * states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j) {
      const Json& cell = rows.at(i).at(j);
      if (!cell.is_string())
        throw SemanticError("metric entries must be \"p/q\" strings");
      entries.push_back(parse_rational(cell.get<std::string>()));
    }
  // The constructor enforces the pseudometric axioms.
  Pseudometric metric(states.size(), std::move(entries));
  return NamedMetric{std::move(states), std::move(metric)};
}

std::string serialize_relation_document(const NamedRelation& value) {
  OrderedJson doc;
  doc["kind"] = "relation";
  doc["states"] = value.states;
  OrderedJson pairs = OrderedJson::array();
  for (std::size_t i = 0; i < value.states.size(); ++i)
    for (std::size_t j = 0; j < value.states.size(); ++j)
      if (value.relation.contains(i, j))
        pairs.push_back({value.states[i], value.states[j]});
  doc["pairs"] = std::move(pairs);
  return doc.dump(2) + "\n";
}

std::string serialize_grades_document(const NamedMatrix& value) {
  OrderedJson doc;
  doc["kind"] = "grades";
  doc["domain"] = value.matrix.domain().name();
  doc["states"] = value.states;
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < value.states.size(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t j = 0; j < value.states.size(); ++j)
      row.push_back(grade_to_json(value.matrix.at(i, j),
                                  value.matrix.domain()));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string serialize_metric_document(const NamedMetric& value) {
  OrderedJson doc;
  doc["kind"] = "metric";
  doc["states"] = value.states;
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < value.states.size(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t j = 0; j < value.states.size(); ++j)
      row.push_back(format_rational(value.metric.at(i, j)));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string document_hash(const std::string& canonical_text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : canonical_text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (std::size_t i = 16; i-- > 0; hash >>= 4) out[i] = digits[hash & 0xf];
  return out;
}

}  // namespace gradedsim
