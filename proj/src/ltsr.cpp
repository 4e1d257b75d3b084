#include "gradedsim/ltsr.hpp"

#include <limits>

namespace gradedsim {

namespace {

void check_carrier(std::size_t system_size, std::size_t other,
                   const char* what) {
  if (system_size != other)
    throw ShapeError(std::string(what) + " carrier (" + std::to_string(other) +
                     ") does not match system carrier (" +
                     std::to_string(system_size) + ")");
}

std::size_t to_cap(const Int& value) {
  if (value > Int(std::numeric_limits<std::size_t>::max() / 2))
    return std::numeric_limits<std::size_t>::max();
  return value.convert_to<std::size_t>();
}

}  // namespace

CheckResult check_lts_bisimulation(const Ltsr& l, const Relation& r) {
  check_carrier(l.states.size(), r.carrier_size(), "relation");
  const std::size_t n = l.states.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!r.contains(x, y)) continue;
      for (std::size_t sym = 0; sym < l.alphabet.size(); ++sym) {
        for (int side = 0; side < 2; ++side) {
          std::size_t from = side == 0 ? x : y;
          std::size_t other = side == 0 ? y : x;
          for (const LtsEdge& move : l.edges(from, sym)) {
            bool answered = false;
            for (const LtsEdge& reply : l.edges(other, sym)) {
              std::size_t left = side == 0 ? move.target : reply.target;
              std::size_t right = side == 0 ? reply.target : move.target;
              if (r.contains(left, right)) {
                answered = true;
                break;
              }
            }
            if (!answered)
              return Witness{
                  {x, y},
                  Witness::Kind::successor,
                  l.alphabet[sym],
                  std::string(side == 0 ? "left" : "right") + " move to \"" +
                      l.states[move.target] +
                      "\" has no answer with related targets"};
          }
        }
      }
    }
  return std::nullopt;
}

Relation lts_bisimilarity(const Ltsr& l) {
  const std::size_t n = l.states.size();
  auto holds = [&l](const Relation& r, std::size_t x, std::size_t y) {
    for (std::size_t sym = 0; sym < l.alphabet.size(); ++sym)
      for (int side = 0; side < 2; ++side) {
        std::size_t from = side == 0 ? x : y;
        std::size_t other = side == 0 ? y : x;
        for (const LtsEdge& move : l.edges(from, sym)) {
          bool answered = false;
          for (const LtsEdge& reply : l.edges(other, sym)) {
            std::size_t left = side == 0 ? move.target : reply.target;
            std::size_t right = side == 0 ? reply.target : move.target;
            if (r.contains(left, right)) {
              answered = true;
              break;
            }
          }
          if (!answered) return false;
        }
      }
    return true;
  };
  auto step = [&](const Relation& r) {
    Relation next(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r.contains(x, y) && holds(r, x, y)) next.set(x, y);
    return next;
  };
  return greatest_relation_fixpoint(step, n);
}

namespace {

// Minimal grade that lets (x0, x1) answer the challenge "side i plays
// move" under matrix g, or infinity when no reply works at any grade.
// A reply (y, r) bounds the grade by max(g(y0, y1) + r0 - r1, r0 - r1, 0);
// the reward clause r0 <= n + r1 is the r0 - r1 part.
Grade reply_requirement(const Ltsr& l, const MinGradeMatrix& g,
                        std::size_t other, std::size_t sym, int side,
                        const LtsEdge& move) {
  Grade best = Grade::infinity();
  for (const LtsEdge& reply : l.edges(other, sym)) {
    const Int& r0 = side == 0 ? move.reward : reply.reward;
    const Int& r1 = side == 0 ? reply.reward : move.reward;
    std::size_t left = side == 0 ? move.target : reply.target;
    std::size_t right = side == 0 ? reply.target : move.target;
    const Grade& succ = g.at(left, right);
    if (succ.is_infinite()) continue;
    Rational needed = succ.value() + Rational(r0) - Rational(r1);
    if (needed < 0) needed = 0;
    if (Grade(needed) < best) best = Grade(needed);
  }
  return best;
}

}  // namespace

CheckResult check_lts_amortised_bisimulation(const Ltsr& l,
                                             const MinGradeMatrix& m) {
  check_carrier(l.states.size(), m.carrier_size(), "matrix");
  if (m.domain().kind() != GradeDomain::Kind::nat)
    throw ShapeError("amortised bisimulations use the nat domain, got " +
                     m.domain().name());
  const std::size_t n = l.states.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Grade& grade = m.at(x, y);
      if (grade.is_infinite()) continue;
      for (std::size_t sym = 0; sym < l.alphabet.size(); ++sym)
        for (int side = 0; side < 2; ++side) {
          std::size_t from = side == 0 ? x : y;
          std::size_t other = side == 0 ? y : x;
          for (const LtsEdge& move : l.edges(from, sym)) {
            Grade needed = reply_requirement(l, m, other, sym, side, move);
            if (grade < needed)
              return Witness{
                  {x, y},
                  Witness::Kind::successor,
                  l.alphabet[sym],
                  std::string(side == 0 ? "left" : "right") + " move to \"" +
                      l.states[move.target] + "\" (reward " +
                      move.reward.str() + ") needs grade " +
                      (needed.is_infinite()
                           ? std::string("infinity")
                           : numerator(needed.value()).str()) +
                      ", but the pair carries " +
                      numerator(grade.value()).str()};
          }
        }
    }
  return std::nullopt;
}

MinGradeMatrix lts_amortised_bisimilarity(const Ltsr& l) {
  const std::size_t n = l.states.size();

  // Largest reward spread among same-symbol moves anywhere in the system;
  // one round of play cannot shift the amortised account by more.
  Int w = 0;
  for (std::size_t sym = 0; sym < l.alphabet.size(); ++sym) {
    bool any = false;
    Int lo = 0, hi = 0;
    for (std::size_t s = 0; s < n; ++s)
      for (const LtsEdge& move : l.edges(s, sym)) {
        if (!any || move.reward < lo) lo = move.reward;
        if (!any || move.reward > hi) hi = move.reward;
        any = true;
      }
    if (any && hi - lo > w) w = hi - lo;
  }
  const Int bound = Int(n) * Int(n) * w + 1;

  auto step = [&](const MinGradeMatrix& g) {
    MinGradeMatrix next(GradeDomain::nat(), n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Grade value = Grade();
        for (std::size_t sym = 0; sym < l.alphabet.size(); ++sym) {
          for (int side = 0; side < 2 && !value.is_infinite(); ++side) {
            std::size_t from = side == 0 ? x : y;
            std::size_t other = side == 0 ? y : x;
            for (const LtsEdge& move : l.edges(from, sym)) {
              Grade needed = reply_requirement(l, g, other, sym, side, move);
              if (value < needed) value = needed;
              if (value.is_infinite()) break;
            }
          }
          if (value.is_infinite()) break;
        }
        next.set(x, y, value);
      }
    return next;
  };

  FixpointConfig config;
  config.widening_bound = Grade(bound);
  config.iteration_cap = to_cap(Int(n) * Int(n) * (bound + 2) + 2);
  config.on_cap = FixpointConfig::OnCap::error;
  return least_grade_fixpoint(step, MinGradeMatrix::zero(GradeDomain::nat(), n),
                              config)
      .value;
}

}  // namespace gradedsim
