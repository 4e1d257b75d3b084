#pragma once

// Construction shortcuts shared by the test files: grade/matrix/metric
// literals ("inf" spells infinity) and common corpus loops.

#include <string>
#include <utility>
#include <vector>

#include "gradedsim/grades.hpp"
#include "gradedsim/numbers.hpp"
#include "gradedsim/systems.hpp"

namespace gradedsim::testing {

inline Grade grade(const std::string& text) {
  return text == "inf" ? Grade::infinity() : Grade(parse_rational(text));
}

inline MinGradeMatrix matrix(const GradeDomain& domain,
                             const std::vector<std::vector<std::string>>& rows) {
  MinGradeMatrix m(domain, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      m.set(i, j, grade(rows[i][j]));
  return m;
}

inline Pseudometric metric(const std::vector<std::vector<std::string>>& rows) {
  std::vector<Rational> entries;
  for (const auto& row : rows)
    for (const std::string& cell : row) entries.push_back(parse_rational(cell));
  return Pseudometric(rows.size(), std::move(entries));
}

inline Relation relation(
    std::size_t n,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Relation r(n);
  for (auto [i, j] : pairs) r.set(i, j);
  return r;
}

}  // namespace gradedsim::testing
