#pragma once

// Grade domains, relations, min-grade matrices, and 1-bounded pseudometrics:
// the finite fibre data every system module works with. A monotone graded
// relation family {A_n} is represented by its min-grade matrix, whose (i,j)
// entry is the least grade at which (i,j) appears (infinity if it never does).

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gradedsim/errors.hpp"
#include "gradedsim/numbers.hpp"

namespace gradedsim {

// A grade value: a finite rational or infinity. Finite values are kept as
// exact rationals regardless of domain; the domain decides which finite
// values are admissible and how addition truncates.
class Grade {
 public:
  Grade() : finite_(true), value_(0) {}
  explicit Grade(Rational value) : finite_(true), value_(std::move(value)) {}
  explicit Grade(const Int& value) : finite_(true), value_(Rational(value)) {}
  explicit Grade(long value) : finite_(true), value_(value) {}

  static Grade infinity() {
    Grade g;
    g.finite_ = false;
    return g;
  }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }

  // Finite value accessor; throws DomainError on infinity.
  const Rational& value() const {
    if (!finite_) throw DomainError("grade is infinite, no finite value");
    return value_;
  }

  // Total order with infinity strictly above every finite grade.
  friend bool operator==(const Grade& a, const Grade& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Grade& a, const Grade& b) {
    if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
    if (!a.finite_) return std::strong_ordering::greater;
    if (!b.finite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  bool finite_;
  Rational value_;
};

// Renders "p/q" for finite grades and "inf" for infinity (JSON spelling);
// Nat-domain callers print the integer part themselves.
std::string format_grade(const Grade& g);

// One of the three grade monoids in scope: (Nat,+,0), (nonnegative
// rationals,+,0), ([0,1], truncated +, 0). Infinity is an absorbing top
// element added on top of each.
class GradeDomain {
 public:
  enum class Kind { nat, nonneg_rational, unit_interval };

  static GradeDomain nat() { return GradeDomain(Kind::nat); }
  static GradeDomain nonneg_rational() {
    return GradeDomain(Kind::nonneg_rational);
  }
  static GradeDomain unit_interval() {
    return GradeDomain(Kind::unit_interval);
  }

  Kind kind() const { return kind_; }
  // Name used in documents: "nat" / "nonneg_rational" / "unit_interval".
  std::string name() const;
  static GradeDomain from_name(const std::string& name);

  // Whether a grade is a finite element of the domain (infinity is not).
  bool contains(const Grade& g) const;

  Grade zero() const { return Grade(); }

  // Monoid addition: infinity absorbs; unit_interval truncates at 1.
  Grade add(const Grade& a, const Grade& b) const;

  friend bool operator==(const GradeDomain&, const GradeDomain&) = default;

 private:
  explicit GradeDomain(Kind kind) : kind_(kind) {}
  Kind kind_;
};

// A binary relation on {0, ..., carrier_size-1}.
class Relation {
 public:
  explicit Relation(std::size_t carrier_size)
      : size_(carrier_size), bits_(carrier_size * carrier_size, false) {}

  static Relation full(std::size_t carrier_size);
  static Relation identity(std::size_t carrier_size);

  std::size_t carrier_size() const { return size_; }
  bool contains(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return bits_[i * size_ + j];
  }
  void set(std::size_t i, std::size_t j, bool present = true) {
    check_index(i, j);
    bits_[i * size_ + j] = present;
  }
  std::size_t pair_count() const;
  bool subset_of(const Relation& other) const;  // ShapeError on size mismatch

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= size_ || j >= size_)
      throw ShapeError("relation index out of range");
  }
  std::size_t size_;
  std::vector<bool> bits_;
};

// Intersection of two relations on the same carrier.
Relation intersect(const Relation& r, const Relation& q);

// Relational composition {(x,y) | exists z. (x,z) in r and (z,y) in q}.
Relation compose(const Relation& r, const Relation& q);

// Monotone graded relation family, stored as the minimal grade per pair.
class MinGradeMatrix {
 public:
  MinGradeMatrix(GradeDomain domain, std::size_t carrier_size,
                 const Grade& fill = Grade::infinity());

  // Diagonal 0 / off-diagonal infinity.
  static MinGradeMatrix diagonal_zero(GradeDomain domain,
                                      std::size_t carrier_size);
  // All entries 0 (the largest family: every pair at every grade).
  static MinGradeMatrix zero(GradeDomain domain, std::size_t carrier_size);

  const GradeDomain& domain() const { return domain_; }
  std::size_t carrier_size() const { return size_; }
  const Grade& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return entries_[i * size_ + j];
  }
  // Finite entries must lie in the domain; infinity is always allowed.
  void set(std::size_t i, std::size_t j, Grade g);

  friend bool operator==(const MinGradeMatrix&, const MinGradeMatrix&);

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= size_ || j >= size_)
      throw ShapeError("matrix index out of range");
  }
  GradeDomain domain_;
  std::size_t size_;
  std::vector<Grade> entries_;
};

// The slice A_n = {(i,j) | M(i,j) <= n}; n must be a finite domain element.
Relation slice(const MinGradeMatrix& m, const Grade& n);

// The union of all slices: pairs with a finite entry.
Relation collapse(const MinGradeMatrix& m);

// Pointwise-least matrix below m (in grade order entrywise) with zero
// diagonal and the triangle law M(x,z) <= M(x,y) + M(y,z): all-pairs
// shortest paths in the (min, +) semiring over the domain's addition.
MinGradeMatrix lax_monoidal_closure(const MinGradeMatrix& m);

// True iff m already has zero diagonal and satisfies the triangle law,
// i.e. lax_monoidal_closure(m) == m.
bool is_lax_monoidal(const MinGradeMatrix& m);

// Monotone envelope of an explicit family: entry = least supplied grade
// whose relation contains the pair, infinity if none. Grades must be finite
// elements of `domain`; relations must share one carrier.
MinGradeMatrix from_family(
    const GradeDomain& domain,
    const std::vector<std::pair<Grade, Relation>>& levels);

// Entrywise maximum: the meet of the two encoded families.
MinGradeMatrix pointwise_max(const MinGradeMatrix& a, const MinGradeMatrix& b);

// A 1-bounded pseudometric on {0, ..., carrier_size-1}; the constructor
// validates all axioms exactly (values in [0,1], zero diagonal, symmetry,
// triangle inequality).
class Pseudometric {
 public:
  Pseudometric(std::size_t carrier_size, std::vector<Rational> entries);

  static Pseudometric zero(std::size_t carrier_size);
  // 1 everywhere off the diagonal.
  static Pseudometric discrete(std::size_t carrier_size);

  std::size_t carrier_size() const { return size_; }
  const Rational& at(std::size_t i, std::size_t j) const {
    if (i >= size_ || j >= size_)
      throw ShapeError("pseudometric index out of range");
    return entries_[i * size_ + j];
  }

  friend bool operator==(const Pseudometric&, const Pseudometric&) = default;

 private:
  std::size_t size_;
  std::vector<Rational> entries_;
};

}  // namespace gradedsim
