#pragma once

// Simulations on deterministic automata and graded simulations on their
// reward-carrying variant, plus the bounded word-level semantic probes that
// tie both back to accepted languages and accumulated rewards.

#include <cstddef>
#include <optional>
#include <vector>

#include "gradedsim/fixpoint.hpp"
#include "gradedsim/grades.hpp"
#include "gradedsim/systems.hpp"
#include "gradedsim/witness.hpp"

namespace gradedsim {

// R is a simulation iff for every (s,s') in R: s accepting implies s'
// accepting, and all successor pairs stay in R. Returns the first violated
// clause (pairs row-major, symbols in declaration order).
CheckResult check_da_simulation(const Da& a, const Relation& r);

// Largest simulation, by greatest-fixpoint iteration of the clause operator.
Relation da_similarity(const Da& a);

// Reward summed along the run of w from s; empty when w is not accepted
// from s. Word symbols are alphabet indices.
std::optional<Int> accumulated_reward(const Dawr& a, std::size_t s,
                                      const std::vector<std::size_t>& word);

// Graded-simulation check of the family encoded by m (Nat domain): each
// pair is checked at its minimal grade, which suffices for monotone
// families (a tested property, see the module tests).
CheckResult check_dawr_graded_simulation(const Dawr& a,
                                         const MinGradeMatrix& m);

// Largest graded simulation as a min-grade matrix: least fixpoint of
//   phi(G)(s,s') = inf { n | clauses hold at n given G }
//               = max over a of max(0, G(delta s a, delta s' a)
//                                     + rew(s,a) - rew(s',a)),
// infinity when s is accepting and s' is not (or a successor grade is
// infinite). Diverging entries are widened to infinity at |S|^2 * W, the
// largest grade a cycle-free product path can need.
MinGradeMatrix dawr_graded_similarity(const Dawr& a);

// Word-level probe of the grade-n tolerance: scans every word up to
// max_len; a word w violates iff w is accepted from s but either not
// accepted from s', or some prefix of w accumulates reward more than n
// beyond the reward accumulated from s'. Returns the shortest violating
// word (lexicographically least among those), or empty if none.
std::optional<std::vector<std::size_t>> star_condition_probe(
    const Dawr& a, std::size_t s, std::size_t s_prime, const Int& n,
    std::size_t max_len);

// Shortest (then lexicographically least) word accepted from s but not from
// s', up to max_len; walks the product automaton, which decides bounded
// inclusion exactly. At max_len >= |S|^2 this decides full language
// inclusion: a separating word, if any, reaches a separating product pair,
// and loop-cutting shortens its path below the number of product pairs.
std::optional<std::vector<std::size_t>> bounded_language_gap(
    const Da& a, std::size_t s, std::size_t s_prime, std::size_t max_len);

}  // namespace gradedsim
