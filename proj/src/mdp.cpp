#include "gradedsim/mdp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace gradedsim {

namespace {

void check_dist_shapes(const SubDist& p, const SubDist& q, const Relation& r) {
  if (p.size() != q.size() || p.size() != r.carrier_size())
    throw ShapeError("subdistributions and relation have mismatched carriers");
}

void check_carrier(std::size_t system_size, std::size_t other,
                   const char* what) {
  if (system_size != other)
    throw ShapeError(std::string(what) + " carrier (" + std::to_string(other) +
                     ") does not match system carrier (" +
                     std::to_string(system_size) + ")");
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

// Advances indices to the next same-size combination; false when exhausted.
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

}  // namespace

std::optional<std::vector<std::size_t>> subset_dominance(const SubDist& p,
                                                         const SubDist& q,
                                                         const Relation& r) {
  check_dist_shapes(p, q, r);
  const std::size_t n = p.size();
  if (n > 20)
    throw SizeError("subset dominance is limited to 20 states, got " +
                    std::to_string(n));
  // Forward images of singletons, as bitmasks.
  std::vector<std::uint32_t> image(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (r.contains(x, y)) image[x] |= std::uint32_t(1) << y;

  std::vector<Rational> q_prefix(n, Rational(0));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    do {
      Rational p_mass = 0;
      std::uint32_t img = 0;
      for (std::size_t x : subset) {
        p_mass += p[x];
        img |= image[x];
      }
      Rational q_mass = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (img & (std::uint32_t(1) << y)) q_mass += q[y];
      if (p_mass > q_mass) return subset;
    } while (next_combination(subset, n));
  }
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> flow_dominance(const SubDist& p,
                                                       const SubDist& q,
                                                       const Relation& r) {
  check_dist_shapes(p, q, r);
  const std::size_t n = p.size();
  // Nodes: 0 = source, 1..n = left copies, n+1..2n = right copies,
  // 2n+1 = sink.  All capacities exact; total supply is at most 1, so 2
  // acts as an unbounded capacity on relation edges.
  const std::size_t source = 0, sink = 2 * n + 1, nodes = 2 * n + 2;
  std::vector<std::vector<Rational>> cap(nodes,
                                         std::vector<Rational>(nodes, 0));
  Rational supply = 0;
  for (std::size_t x = 0; x < n; ++x) {
    cap[source][1 + x] = p[x];
    supply += p[x];
    cap[1 + n + x][sink] = q[x];
    for (std::size_t y = 0; y < n; ++y)
      if (r.contains(x, y)) cap[1 + x][1 + n + y] = 2;
  }

  Rational shipped = 0;
  std::vector<std::size_t> parent(nodes);
  while (true) {
    // Shortest augmenting path (Edmonds–Karp).
    std::fill(parent.begin(), parent.end(), nodes);
    parent[source] = source;
    std::deque<std::size_t> queue{source};
    while (!queue.empty() && parent[sink] == nodes) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < nodes; ++v)
        if (parent[v] == nodes && cap[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
    }
    if (parent[sink] == nodes) break;
    Rational bottleneck = cap[parent[sink]][sink];
    for (std::size_t v = sink; v != source; v = parent[v])
      bottleneck = std::min(bottleneck, cap[parent[v]][v]);
    for (std::size_t v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= bottleneck;
      cap[v][parent[v]] += bottleneck;
    }
    shipped += bottleneck;
  }
  if (shipped == supply) return std::nullopt;

  // Left states still reachable in the residual graph form the min-cut
  // side; their mass cannot all cross, so they violate dominance.
  std::vector<bool> reach(nodes, false);
  reach[source] = true;
  std::deque<std::size_t> queue{source};
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < nodes; ++v)
      if (!reach[v] && cap[u][v] > 0) {
        reach[v] = true;
        queue.push_back(v);
      }
  }
  std::vector<std::size_t> subset;
  for (std::size_t x = 0; x < n; ++x)
    if (reach[1 + x]) subset.push_back(x);
  return subset;
}

namespace {

Rational image_mass(const SubDist& q, const Relation& r,
                    const std::vector<std::size_t>& subset) {
  std::vector<bool> hit(q.size(), false);
  for (std::size_t x : subset)
    for (std::size_t y = 0; y < q.size(); ++y)
      if (r.contains(x, y)) hit[y] = true;
  Rational total = 0;
  for (std::size_t y = 0; y < q.size(); ++y)
    if (hit[y]) total += q[y];
  return total;
}

Rational mass_of(const SubDist& p, const std::vector<std::size_t>& subset) {
  Rational total = 0;
  for (std::size_t x : subset) total += p[x];
  return total;
}

}  // namespace

CheckResult check_mdp_simulation(const Mdp& m, const Relation& r) {
  check_carrier(m.states.size(), r.carrier_size(), "relation");
  for (std::size_t s = 0; s < m.states.size(); ++s)
    for (std::size_t t = 0; t < m.states.size(); ++t) {
      if (!r.contains(s, t)) continue;
      for (std::size_t sym = 0; sym < m.alphabet.size(); ++sym) {
        const SubDist& p = m.dist(s, sym);
        const SubDist& q = m.dist(t, sym);
        if (auto bad = flow_dominance(p, q, r))
          return Witness{
              {s, t},
              Witness::Kind::successor,
              m.alphabet[sym],
              "mass " + format_rational(mass_of(p, *bad)) + " of " +
                  subset_text(*bad, m.states) +
                  " exceeds the related mass " +
                  format_rational(image_mass(q, r, *bad))};
      }
    }
  return std::nullopt;
}

Relation mdp_similarity(const Mdp& m) {
  const std::size_t n = m.states.size();
  auto step = [&](const Relation& r) {
    Relation next(n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (!r.contains(s, t)) continue;
        bool ok = true;
        for (std::size_t sym = 0; ok && sym < m.alphabet.size(); ++sym)
          ok = !flow_dominance(m.dist(s, sym), m.dist(t, sym), r).has_value();
        if (ok) next.set(s, t);
      }
    return next;
  };
  return greatest_relation_fixpoint(step, n);
}

CheckResult check_mdp_graded_simulation(const Mdp& m,
                                        const MinGradeMatrix& g) {
  check_carrier(m.states.size(), g.carrier_size(), "matrix");
  if (g.domain().kind() != GradeDomain::Kind::nonneg_rational)
    throw ShapeError(
        "graded simulations on Markov decision processes use the "
        "nonneg_rational domain, got " + g.domain().name());
  const std::size_t n = m.states.size();
  if (n > 20)
    throw SizeError("graded simulation checking is limited to 20 states, "
                    "got " + std::to_string(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      const Grade& grade = g.at(s, t);
      if (grade.is_infinite()) continue;
      for (std::size_t sym = 0; sym < m.alphabet.size(); ++sym) {
        Rational shifted = grade.value() - m.reward_at(s, sym) +
                           m.reward_at(t, sym);
        if (shifted < 0)
          return Witness{
              {s, t},
              Witness::Kind::reward_bound,
              m.alphabet[sym],
              "reward " + format_rational(m.reward_at(s, sym)) +
                  " exceeds the grade plus reward " +
                  format_rational(grade.value() + m.reward_at(t, sym)) +
                  " on the other side"};
        Relation sliced = slice(g, Grade(shifted));
        if (auto bad =
                subset_dominance(m.dist(s, sym), m.dist(t, sym), sliced))
          return Witness{
              {s, t},
              Witness::Kind::successor,
              m.alphabet[sym],
              "at grade " + format_rational(shifted) + ", mass " +
                  format_rational(mass_of(m.dist(s, sym), *bad)) + " of " +
                  subset_text(*bad, m.states) +
                  " exceeds the related mass " +
                  format_rational(image_mass(m.dist(t, sym), sliced, *bad))};
      }
    }
  return std::nullopt;
}

}  // namespace gradedsim
