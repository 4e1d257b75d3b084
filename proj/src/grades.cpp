#include "gradedsim/grades.hpp"

#include <regex>

namespace gradedsim {

Rational parse_rational(const std::string& text) {
  static const std::regex shape(R"(^-?[0-9]+(/[0-9]+)?$)");
  if (!std::regex_match(text, shape))
    throw SemanticError("malformed rational \"" + text + "\"");
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(Int(text));
  Int num(text.substr(0, slash));
  Int den(text.substr(slash + 1));
  if (den == 0) throw SemanticError("zero denominator in \"" + text + "\"");
  return Rational(num) / Rational(den);
}

std::string format_rational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string format_grade(const Grade& g) {
  return g.is_infinite() ? "inf" : format_rational(g.value());
}

std::string GradeDomain::name() const {
  switch (kind_) {
    case Kind::nat: return "nat";
    case Kind::nonneg_rational: return "nonneg_rational";
    case Kind::unit_interval: return "unit_interval";
  }
  throw Error("unreachable");
}

GradeDomain GradeDomain::from_name(const std::string& name) {
  if (name == "nat") return nat();
  if (name == "nonneg_rational") return nonneg_rational();
  if (name == "unit_interval") return unit_interval();
  throw SemanticError("unknown grade domain \"" + name + "\"");
}

bool GradeDomain::contains(const Grade& g) const {
  if (g.is_infinite()) return false;
  const Rational& v = g.value();
  if (v < 0) return false;
  switch (kind_) {
    case Kind::nat: return denominator(v) == 1;
    case Kind::nonneg_rational: return true;
    case Kind::unit_interval: return v <= 1;
  }
  throw Error("unreachable");
}

Grade GradeDomain::add(const Grade& a, const Grade& b) const {
  if (a.is_infinite() || b.is_infinite()) return Grade::infinity();
  Rational sum = a.value() + b.value();
  if (kind_ == Kind::unit_interval && sum > 1) sum = 1;
  return Grade(sum);
}

Relation Relation::full(std::size_t carrier_size) {
  Relation r(carrier_size);
  r.bits_.assign(carrier_size * carrier_size, true);
  return r;
}

Relation Relation::identity(std::size_t carrier_size) {
  Relation r(carrier_size);
  for (std::size_t i = 0; i < carrier_size; ++i) r.set(i, i);
  return r;
}

std::size_t Relation::pair_count() const {
  std::size_t count = 0;
  for (bool b : bits_) count += b;
  return count;
}

bool Relation::subset_of(const Relation& other) const {
  if (size_ != other.size_)
    throw ShapeError("relation carriers differ: " + std::to_string(size_) +
                     " vs " + std::to_string(other.size_));
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] && !other.bits_[k]) return false;
  return true;
}

Relation intersect(const Relation& r, const Relation& q) {
  if (r.carrier_size() != q.carrier_size())
    throw ShapeError("relation carriers differ");
  Relation out(r.carrier_size());
  for (std::size_t i = 0; i < r.carrier_size(); ++i)
    for (std::size_t j = 0; j < r.carrier_size(); ++j)
      out.set(i, j, r.contains(i, j) && q.contains(i, j));
  return out;
}

Relation compose(const Relation& r, const Relation& q) {
  if (r.carrier_size() != q.carrier_size())
    throw ShapeError("relation carriers differ");
  const std::size_t n = r.carrier_size();
  Relation out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!r.contains(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (q.contains(k, j)) out.set(i, j);
    }
  return out;
}

MinGradeMatrix::MinGradeMatrix(GradeDomain domain, std::size_t carrier_size,
                               const Grade& fill)
    : domain_(domain), size_(carrier_size) {
  if (fill.is_finite() && !domain_.contains(fill))
    throw DomainError("fill grade " + format_grade(fill) +
                      " outside domain " + domain_.name());
  entries_.assign(carrier_size * carrier_size, fill);
}

MinGradeMatrix MinGradeMatrix::diagonal_zero(GradeDomain domain,
                                             std::size_t carrier_size) {
  MinGradeMatrix m(domain, carrier_size);
  for (std::size_t i = 0; i < carrier_size; ++i) m.set(i, i, Grade());
  return m;
}

MinGradeMatrix MinGradeMatrix::zero(GradeDomain domain,
                                    std::size_t carrier_size) {
  return MinGradeMatrix(domain, carrier_size, Grade());
}

void MinGradeMatrix::set(std::size_t i, std::size_t j, Grade g) {
  check_index(i, j);
  if (g.is_finite() && !domain_.contains(g))
    throw DomainError("grade " + format_grade(g) + " outside domain " +
                      domain_.name());
  entries_[i * size_ + j] = std::move(g);
}

bool operator==(const MinGradeMatrix& a, const MinGradeMatrix& b) {
  return a.domain_ == b.domain_ && a.size_ == b.size_ &&
         a.entries_ == b.entries_;
}

Relation slice(const MinGradeMatrix& m, const Grade& n) {
  if (!m.domain().contains(n))
    throw DomainError("slice grade " + format_grade(n) + " outside domain " +
                      m.domain().name());
  Relation r(m.carrier_size());
  for (std::size_t i = 0; i < m.carrier_size(); ++i)
    for (std::size_t j = 0; j < m.carrier_size(); ++j)
      if (m.at(i, j) <= n) r.set(i, j);
  return r;
}

Relation collapse(const MinGradeMatrix& m) {
  Relation r(m.carrier_size());
  for (std::size_t i = 0; i < m.carrier_size(); ++i)
    for (std::size_t j = 0; j < m.carrier_size(); ++j)
      if (m.at(i, j).is_finite()) r.set(i, j);
  return r;
}

MinGradeMatrix lax_monoidal_closure(const MinGradeMatrix& m) {
  const std::size_t n = m.carrier_size();
  MinGradeMatrix out = m;
  for (std::size_t i = 0; i < n; ++i)
    if (Grade() < out.at(i, i)) out.set(i, i, Grade());
  // Floyd-Warshall over (min, domain addition).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (out.at(i, k).is_infinite()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        Grade through = m.domain().add(out.at(i, k), out.at(k, j));
        if (through < out.at(i, j)) out.set(i, j, through);
      }
    }
  return out;
}

bool is_lax_monoidal(const MinGradeMatrix& m) {
  return lax_monoidal_closure(m) == m;
}

MinGradeMatrix from_family(
    const GradeDomain& domain,
    const std::vector<std::pair<Grade, Relation>>& levels) {
  std::size_t carrier = levels.empty() ? 0 : levels[0].second.carrier_size();
  for (const auto& [grade, relation] : levels) {
    if (relation.carrier_size() != carrier)
      throw ShapeError("family relations on different carriers");
    if (!domain.contains(grade))
      throw ShapeError("family grade " + format_grade(grade) +
                       " outside domain " + domain.name());
  }
  MinGradeMatrix m(domain, carrier);
  for (const auto& [grade, relation] : levels)
    for (std::size_t i = 0; i < carrier; ++i)
      for (std::size_t j = 0; j < carrier; ++j)
        if (relation.contains(i, j) && grade < m.at(i, j)) m.set(i, j, grade);
  return m;
}

MinGradeMatrix pointwise_max(const MinGradeMatrix& a,
                             const MinGradeMatrix& b) {
  if (a.carrier_size() != b.carrier_size())
    throw ShapeError("matrix carriers differ");
  if (!(a.domain() == b.domain()))
    throw ShapeError("matrix domains differ");
  MinGradeMatrix out = a;
  for (std::size_t i = 0; i < a.carrier_size(); ++i)
    for (std::size_t j = 0; j < a.carrier_size(); ++j)
      if (out.at(i, j) < b.at(i, j)) out.set(i, j, b.at(i, j));
  return out;
}

Pseudometric::Pseudometric(std::size_t carrier_size,
                           std::vector<Rational> entries)
    : size_(carrier_size), entries_(std::move(entries)) {
  if (entries_.size() != size_ * size_)
    throw ShapeError("pseudometric entry count does not match carrier");
  for (std::size_t i = 0; i < size_; ++i) {
    if (entries_[i * size_ + i] != 0)
      throw PreconditionError("pseudometric diagonal nonzero at index " +
                              std::to_string(i));
    for (std::size_t j = 0; j < size_; ++j) {
      const Rational& d = entries_[i * size_ + j];
      if (d < 0 || d > 1)
        throw PreconditionError("pseudometric value outside [0,1] at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ")");
      if (d != entries_[j * size_ + i])
        throw PreconditionError("pseudometric not symmetric at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ")");
    }
  }
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j)
      for (std::size_t k = 0; k < size_; ++k)
        if (entries_[i * size_ + j] >
            entries_[i * size_ + k] + entries_[k * size_ + j])
          throw PreconditionError(
              "pseudometric triangle inequality fails at (" +
              std::to_string(i) + "," + std::to_string(j) + "," +
              std::to_string(k) + ")");
}

Pseudometric Pseudometric::zero(std::size_t carrier_size) {
  return Pseudometric(carrier_size,
                      std::vector<Rational>(carrier_size * carrier_size, 0));
}

Pseudometric Pseudometric::discrete(std::size_t carrier_size) {
  std::vector<Rational> entries(carrier_size * carrier_size, 1);
  for (std::size_t i = 0; i < carrier_size; ++i) entries[i * carrier_size + i] = 0;
  return Pseudometric(carrier_size, std::move(entries));
}

}  // namespace gradedsim
