#include "gradedsim/dawr.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace gradedsim {

std::string witness_kind_name(Witness::Kind kind) {
  switch (kind) {
    case Witness::Kind::acceptance: return "acceptance";
    case Witness::Kind::reward_bound: return "reward_bound";
    case Witness::Kind::successor: return "successor";
  }
  throw Error("unreachable");
}

namespace {

void check_carrier(std::size_t system_size, std::size_t other,
                   const char* what) {
  if (system_size != other)
    throw ShapeError(std::string(what) + " carrier (" + std::to_string(other) +
                     ") does not match system carrier (" +
                     std::to_string(system_size) + ")");
}

// Saturating conversion for iteration caps derived from exact bounds.
std::size_t to_cap(const Int& value) {
  if (value > Int(std::numeric_limits<std::size_t>::max() / 2))
    return std::numeric_limits<std::size_t>::max();
  return value.convert_to<std::size_t>();
}

}  // namespace

CheckResult check_da_simulation(const Da& a, const Relation& r) {
  check_carrier(a.size(), r.carrier_size(), "relation");
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < a.size(); ++t) {
      if (!r.contains(s, t)) continue;
      if (a.accepting[s] && !a.accepting[t])
        return Witness{{s, t},
                       Witness::Kind::acceptance,
                       std::nullopt,
                       "\"" + a.states[s] + "\" is accepting but \"" +
                           a.states[t] + "\" is not"};
      for (std::size_t sym = 0; sym < a.symbol_count(); ++sym) {
        std::size_t s2 = a.step(s, sym), t2 = a.step(t, sym);
        if (!r.contains(s2, t2))
          return Witness{{s, t},
                         Witness::Kind::successor,
                         a.alphabet[sym],
                         "successor pair (\"" + a.states[s2] + "\", \"" +
                             a.states[t2] + "\") is unrelated"};
      }
    }
  return std::nullopt;
}

Relation da_similarity(const Da& a) {
  auto step = [&a](const Relation& r) {
    Relation next(a.size());
    for (std::size_t s = 0; s < a.size(); ++s)
      for (std::size_t t = 0; t < a.size(); ++t) {
        if (!r.contains(s, t)) continue;
        if (a.accepting[s] && !a.accepting[t]) continue;
        bool ok = true;
        for (std::size_t sym = 0; ok && sym < a.symbol_count(); ++sym)
          ok = r.contains(a.step(s, sym), a.step(t, sym));
        if (ok) next.set(s, t);
      }
    return next;
  };
  return greatest_relation_fixpoint(step, a.size());
}

std::optional<Int> accumulated_reward(const Dawr& a, std::size_t s,
                                      const std::vector<std::size_t>& word) {
  if (s >= a.size()) throw ShapeError("state index out of range");
  Int total = 0;
  std::size_t state = s;
  for (std::size_t sym : word) {
    if (sym >= a.symbol_count())
      throw SemanticError("unknown symbol index " + std::to_string(sym));
    total += a.reward_at(state, sym);
    state = a.automaton.step(state, sym);
  }
  if (!a.automaton.accepting[state]) return std::nullopt;
  return total;
}

CheckResult check_dawr_graded_simulation(const Dawr& a,
                                         const MinGradeMatrix& m) {
  check_carrier(a.size(), m.carrier_size(), "matrix");
  if (m.domain().kind() != GradeDomain::Kind::nat)
    throw ShapeError("graded simulations on reward automata use the nat "
                     "domain, got " + m.domain().name());
  const Da& da = a.automaton;
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < a.size(); ++t) {
      const Grade& n = m.at(s, t);
      if (n.is_infinite()) continue;
      if (da.accepting[s] && !da.accepting[t])
        return Witness{{s, t},
                       Witness::Kind::acceptance,
                       std::nullopt,
                       "\"" + da.states[s] + "\" is accepting but \"" +
                           da.states[t] + "\" is not"};
      for (std::size_t sym = 0; sym < a.symbol_count(); ++sym) {
        // The successor pair must be related at n - r0 + r1; a negative
        // bound (equivalently a violated reward clause) has no witnessing
        // grade at all.
        Rational need =
            n.value() - Rational(a.reward_at(s, sym)) +
            Rational(a.reward_at(t, sym));
        const Grade& have = m.at(da.step(s, sym), da.step(t, sym));
        if (need < 0 || Grade(need) < have)
          return Witness{
              {s, t},
              Witness::Kind::successor,
              da.alphabet[sym],
              "successor pair (\"" + da.states[da.step(s, sym)] + "\", \"" +
                  da.states[da.step(t, sym)] + "\") needs grade " +
                  numerator(need).str() +
                  (have.is_infinite()
                       ? ", but is never related"
                       : ", but its minimal grade is " +
                             numerator(have.value()).str())};
      }
    }
  return std::nullopt;
}

MinGradeMatrix dawr_graded_similarity(const Dawr& a) {
  const std::size_t n = a.size();
  const Da& da = a.automaton;

  // W bounds how much one step can raise a grade; along a cycle-free path
  // in the n^2 product space a finite fixpoint entry stays within n^2 * W,
  // so anything beyond that certifies a positive-deficit cycle.
  Int w = 0;
  for (std::size_t sym = 0; sym < a.symbol_count(); ++sym)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        Int diff = a.reward_at(s, sym) - a.reward_at(t, sym);
        if (diff < 0) diff = -diff;
        if (diff > w) w = diff;
      }
  const Int bound = Int(n) * Int(n) * w + 1;

  auto step = [&](const MinGradeMatrix& g) {
    MinGradeMatrix next(GradeDomain::nat(), n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (da.accepting[s] && !da.accepting[t]) continue;  // stays infinite
        Grade value = Grade();
        for (std::size_t sym = 0; sym < a.symbol_count(); ++sym) {
          const Grade& succ = g.at(da.step(s, sym), da.step(t, sym));
          if (succ.is_infinite()) {
            value = Grade::infinity();
            break;
          }
          Rational needed = succ.value() + Rational(a.reward_at(s, sym)) -
                            Rational(a.reward_at(t, sym));
          if (needed < 0) needed = 0;
          if (value < Grade(needed)) value = Grade(needed);
        }
        next.set(s, t, value);
      }
    return next;
  };

  FixpointConfig config;
  config.widening_bound = Grade(bound);
  // Entries only climb through {0..bound} then infinity, and every
  // non-final iteration raises at least one entry.
  config.iteration_cap = to_cap(Int(n) * Int(n) * (bound + 2) + 2);
  config.on_cap = FixpointConfig::OnCap::error;
  return least_grade_fixpoint(step, MinGradeMatrix::zero(GradeDomain::nat(), n),
                              config)
      .value;
}

std::optional<std::vector<std::size_t>> star_condition_probe(
    const Dawr& a, std::size_t s, std::size_t s_prime, const Int& n,
    std::size_t max_len) {
  if (s >= a.size() || s_prime >= a.size())
    throw ShapeError("state index out of range");
  const Da& da = a.automaton;

  std::optional<std::vector<std::size_t>> best;
  std::vector<std::size_t> word;

  // Depth-first over the word tree in symbol order, keeping the shortest
  // (then lexicographically least) violating word. Once one is found,
  // deeper or equal-length words cannot improve on it.
  auto visit = [&](auto&& self, std::size_t u, std::size_t v,
                   const Int& deficit, bool bad_prefix) -> void {
    if (da.accepting[u] && (!da.accepting[v] || bad_prefix)) {
      if (!best || word.size() < best->size()) best = word;
      return;
    }
    if (word.size() >= max_len) return;
    if (best && word.size() + 1 >= best->size()) return;
    for (std::size_t sym = 0; sym < a.symbol_count(); ++sym) {
      Int next_deficit =
          deficit + a.reward_at(u, sym) - a.reward_at(v, sym);
      word.push_back(sym);
      self(self, da.step(u, sym), da.step(v, sym), next_deficit,
           bad_prefix || next_deficit > n);
      word.pop_back();
    }
  };
  visit(visit, s, s_prime, Int(0), false);
  return best;
}

std::optional<std::vector<std::size_t>> bounded_language_gap(
    const Da& a, std::size_t s, std::size_t s_prime, std::size_t max_len) {
  if (s >= a.size() || s_prime >= a.size())
    throw ShapeError("state index out of range");
  const std::size_t n = a.size();
  const std::size_t none = std::numeric_limits<std::size_t>::max();

  // Breadth-first over product pairs, expanding symbols in order: the first
  // separating pair reached is via the shortest, lexicographically least
  // word.
  std::vector<std::size_t> parent(n * n, none), via(n * n, 0), depth(n * n, 0);
  std::deque<std::size_t> queue;
  auto cell = [n](std::size_t u, std::size_t v) { return u * n + v; };
  auto separating = [&a](std::size_t c, std::size_t n_) {
    return a.accepting[c / n_] && !a.accepting[c % n_];
  };

  std::size_t start = cell(s, s_prime);
  std::vector<bool> seen(n * n, false);
  seen[start] = true;
  queue.push_back(start);
  while (!queue.empty()) {
    std::size_t c = queue.front();
    queue.pop_front();
    if (separating(c, n)) {
      std::vector<std::size_t> word;
      for (std::size_t at = c; parent[at] != none; at = parent[at])
        word.push_back(via[at]);
      std::reverse(word.begin(), word.end());
      return word;
    }
    if (depth[c] >= max_len) continue;
    for (std::size_t sym = 0; sym < a.symbol_count(); ++sym) {
      std::size_t next = cell(a.step(c / n, sym), a.step(c % n, sym));
      if (seen[next]) continue;
      seen[next] = true;
      parent[next] = c;
      via[next] = sym;
      depth[next] = depth[c] + 1;
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

}  // namespace gradedsim
