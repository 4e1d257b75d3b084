#include "gradedsim/lmp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

namespace gradedsim {

namespace {

void check_carrier(std::size_t system_size, std::size_t other,
                   const char* what) {
  if (system_size != other)
    throw ShapeError(std::string(what) + " carrier (" + std::to_string(other) +
                     ") does not match system carrier (" +
                     std::to_string(system_size) + ")");
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  if (c.empty()) return false;
  std::size_t k = c.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (c[i] + (k - i) < n) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::string subset_text(const std::vector<std::size_t>& subset,
                        const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + names[subset[i]] + "\"";
  }
  return out + "}";
}

}  // namespace

MinGradeMatrix galois_R(const Pseudometric& d) {
  const std::size_t n = d.carrier_size();
  MinGradeMatrix m(GradeDomain::unit_interval(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, Grade(d.at(i, j)));
  return m;
}

Pseudometric galois_L(const MinGradeMatrix& m) {
  if (m.domain().kind() != GradeDomain::Kind::unit_interval)
    throw ShapeError("galois_L expects the unit_interval domain, got " +
                     m.domain().name());
  const std::size_t n = m.carrier_size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(m.at(i, i) == Grade()))
      throw PreconditionError("matrix is not lax monoidal: diagonal entry " +
                              std::to_string(i) + " is " +
                              format_grade(m.at(i, i)) + ", not 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(m.at(i, j) == m.at(j, i)))
        throw PreconditionError(
            "matrix is not symmetric at (" + std::to_string(i) + ", " +
            std::to_string(j) + "): " + format_grade(m.at(i, j)) + " vs " +
            format_grade(m.at(j, i)));
  const GradeDomain dom = m.domain();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dom.add(m.at(i, j), m.at(j, k)) < m.at(i, k))
          throw PreconditionError(
              "matrix is not lax monoidal: triangle fails at (" +
              std::to_string(i) + ", " + std::to_string(j) + ", " +
              std::to_string(k) + ")");
  std::vector<Rational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      entries[i * n + j] =
          m.at(i, j).is_infinite() ? Rational(1) : m.at(i, j).value();
  return Pseudometric(n, std::move(entries));
}

namespace {

// Shared machinery for the lifting. Thresholds are an n x n table of
// grades (a pseudometric embeds with all entries finite); the ball of x at
// radius r collects every y with threshold (x, y) <= r.  Subset masses are
// read off 2^n tables built per row on demand, so memory stays at two
// tables regardless of carrier size.
constexpr std::size_t lift_state_cap = 20;

using Mask = std::uint32_t;

std::vector<Mask> ball_masks(const std::vector<Grade>& thresholds,
                             std::size_t n, const Rational& radius) {
  Grade r(radius);
  std::vector<Mask> ball(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!(r < thresholds[x * n + y])) ball[x] |= Mask(1) << y;
  return ball;
}

void fill_images(const std::vector<Mask>& ball, std::vector<Mask>& img) {
  img[0] = 0;
  for (Mask m = 1; m < Mask(img.size()); ++m)
    img[m] = img[m & (m - 1)] | ball[std::countr_zero(m)];
}

void fill_masses(const SubDist& row, std::vector<Rational>& mass) {
  mass[0] = 0;
  for (Mask m = 1; m < Mask(mass.size()); ++m)
    mass[m] = mass[m & (m - 1)] + row[std::countr_zero(m)];
}

struct LiftScratch {
  explicit LiftScratch(std::size_t n)
      : img(std::size_t(1) << n),
        challenger(std::size_t(1) << n),
        responder(std::size_t(1) << n) {}
  std::vector<Mask> img;
  std::vector<Rational> challenger, responder;
};

// Largest mass excess any challenge achieves against the current balls;
// never below 0 (the empty challenge achieves 0).
Rational mass_gap(const Lmp& l, std::size_t x, std::size_t y,
                  LiftScratch& scratch) {
  Rational gap = 0;
  for (std::size_t sym = 0; sym < l.symbol_count(); ++sym)
    for (int side = 0; side < 2; ++side) {
      fill_masses(l.dist(side == 0 ? x : y, sym), scratch.challenger);
      fill_masses(l.dist(side == 0 ? y : x, sym), scratch.responder);
      for (Mask m = 1; m < Mask(scratch.img.size()); ++m) {
        Rational diff = scratch.challenger[m] - scratch.responder[scratch.img[m]];
        if (diff > gap) gap = std::move(diff);
      }
    }
  return gap;
}

Rational lift_value(const Lmp& l, const std::vector<Grade>& thresholds,
                    std::size_t x, std::size_t y, LiftScratch& scratch) {
  const std::size_t n = l.size();
  // Breakpoints of r |-> X_r: the distinct threshold values (plus 0).
  std::vector<Rational> breaks{Rational(0)};
  for (const Grade& g : thresholds)
    if (g.is_finite() && g.value() <= 1) breaks.push_back(g.value());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Over [break_j, break_{j+1}) the balls are constant and feasibility is
  // r >= gap, so the least feasible r in the interval is max(break_j, gap)
  // when that stays inside; the first interval that admits a candidate
  // wins, since later candidates exceed this interval's right end.
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    std::vector<Mask> ball = ball_masks(thresholds, n, breaks[j]);
    fill_images(ball, scratch.img);
    Rational candidate = std::max(breaks[j], mass_gap(l, x, y, scratch));
    if (j + 1 == breaks.size()) return candidate;  // gap <= 1, so always ok
    if (candidate < breaks[j + 1]) return candidate;
  }
  throw Error("unreachable");
}

std::vector<Grade> metric_thresholds(const Pseudometric& d) {
  const std::size_t n = d.carrier_size();
  std::vector<Grade> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = Grade(d.at(i, j));
  return t;
}

void check_lift_size(std::size_t n) {
  if (n > lift_state_cap)
    throw SizeError("lifting is limited to " +
                    std::to_string(lift_state_cap) + " states, got " +
                    std::to_string(n));
}

// First violation of the grade-r clause for pair (x, y) under the given
// thresholds, scanning symbols, then directions, then subsets in canonical
// order (size, then lexicographic).
CheckResult clause_violation(const Lmp& l, const std::vector<Grade>& thresholds,
                             std::size_t x, std::size_t y, const Rational& r) {
  const std::size_t n = l.size();
  std::vector<Mask> ball = ball_masks(thresholds, n, r);
  for (std::size_t sym = 0; sym < l.symbol_count(); ++sym)
    for (int side = 0; side < 2; ++side) {
      const SubDist& mine = l.dist(side == 0 ? x : y, sym);
      const SubDist& theirs = l.dist(side == 0 ? y : x, sym);
      for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> subset(k);
        std::iota(subset.begin(), subset.end(), 0);
        do {
          Rational mass = 0;
          Mask img = 0;
          for (std::size_t member : subset) {
            mass += mine[member];
            img |= ball[member];
          }
          Rational reachable = 0;
          for (std::size_t t = 0; t < n; ++t)
            if (img & (Mask(1) << t)) reachable += theirs[t];
          if (mass > reachable + r)
            return Witness{
                {x, y},
                Witness::Kind::successor,
                l.alphabet[sym],
                std::string(side == 0 ? "left" : "right") + " mass " +
                    format_rational(mass) + " of " +
                    subset_text(subset, l.states) + " exceeds " +
                    format_rational(reachable) + " within radius " +
                    format_rational(r)};
        } while (next_combination(subset, n));
      }
    }
  return std::nullopt;
}

}  // namespace

Rational lp_lifting(const Lmp& l, const Pseudometric& d, std::size_t x,
                    std::size_t y) {
  check_carrier(l.size(), d.carrier_size(), "pseudometric");
  check_lift_size(l.size());
  if (x >= l.size() || y >= l.size())
    throw ShapeError("state index out of range");
  LiftScratch scratch(l.size());
  return lift_value(l, metric_thresholds(d), x, y, scratch);
}

CheckResult check_eps_bisimulation(const Lmp& l, const MinGradeMatrix& m) {
  check_carrier(l.size(), m.carrier_size(), "matrix");
  if (m.domain().kind() != GradeDomain::Kind::unit_interval)
    throw ShapeError("graded bisimulations on labelled Markov processes use "
                     "the unit_interval domain, got " + m.domain().name());
  if (l.size() > 16)
    throw SizeError("checking is limited to 16 states, got " +
                    std::to_string(l.size()));
  if (!is_lax_monoidal(m))
    throw PreconditionError("matrix is not lax monoidal");
  const std::size_t n = l.size();
  std::vector<Grade> thresholds(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) thresholds[i * n + j] = m.at(i, j);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Grade& r = m.at(x, y);
      if (r.is_infinite()) continue;
      if (auto witness = clause_violation(l, thresholds, x, y, r.value()))
        return witness;
    }
  return std::nullopt;
}

CheckResult check_metric_bisimulation(const Lmp& l, const Pseudometric& d) {
  check_carrier(l.size(), d.carrier_size(), "pseudometric");
  check_lift_size(l.size());
  const std::size_t n = l.size();
  std::vector<Grade> thresholds = metric_thresholds(d);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (auto witness = clause_violation(l, thresholds, x, y, d.at(x, y)))
        return witness;
  return std::nullopt;
}

FixpointOutcome<Pseudometric> metric_bisimilarity(
    const Lmp& l, const FixpointConfig& config) {
  check_lift_size(l.size());
  const std::size_t n = l.size();
  LiftScratch scratch(n);
  auto step = [&](const Pseudometric& d) {
    std::vector<Grade> thresholds = metric_thresholds(d);
    std::vector<Rational> entries(n * n, Rational(0));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        Rational value = lift_value(l, thresholds, x, y, scratch);
        entries[x * n + y] = value;
        entries[y * n + x] = std::move(value);
      }
    return Pseudometric(n, std::move(entries));
  };
  return pseudometric_fixpoint(step, n, config);
}

FixpointOutcome<MinGradeMatrix> graded_bisimilarity(
    const Lmp& l, const FixpointConfig& config) {
  FixpointOutcome<Pseudometric> metric = metric_bisimilarity(l, config);
  FixpointOutcome<MinGradeMatrix> out{galois_R(metric.value),
                                      metric.converged, metric.iterations};
  if (out.converged)
    if (auto witness = check_eps_bisimulation(l, out.value))
      throw Error("graded bisimilarity failed its own checker at (\"" +
                  l.states[witness->pair.first] + "\", \"" +
                  l.states[witness->pair.second] + "\"): " + witness->detail);
  return out;
}

}  // namespace gradedsim
