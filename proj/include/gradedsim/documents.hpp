#pragma once

// JSON documents for the values the command line exchanges: relations,
// min-grade matrices, and pseudometrics, each carrying the state names they
// are indexed by. Loaders also accept a full report object, descending into
// its payload, so one command's output feeds the next.

#include <string>
#include <vector>

#include "gradedsim/grades.hpp"

namespace gradedsim {

struct NamedRelation {
  std::vector<std::string> states;
  Relation relation;
};

struct NamedMatrix {
  std::vector<std::string> states;
  MinGradeMatrix matrix;
};

struct NamedMetric {
  std::vector<std::string> states;
  Pseudometric metric;
};

NamedRelation parse_relation_document(const std::string& text);
NamedMatrix parse_grades_document(const std::string& text);
NamedMetric parse_metric_document(const std::string& text);

// Canonical forms; parse(serialize(v)) reproduces v exactly.
std::string serialize_relation_document(const NamedRelation& value);
std::string serialize_grades_document(const NamedMatrix& value);
std::string serialize_metric_document(const NamedMetric& value);

// 64-bit FNV-1a of a document's canonical text, as 16 hex digits; used to
// tie derived artifacts back to the system they were computed from.
std::string document_hash(const std::string& canonical_text);

}  // namespace gradedsim
