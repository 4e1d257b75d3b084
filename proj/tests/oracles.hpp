#pragma once

// Independent reference implementations the tests compare the library
// against: rule iteration instead of shortest paths, explicit family
// descent instead of numeric fixpoints, full enumeration instead of flow
// or interval reasoning. Plus deterministic generators for the random
// property corpora. Nothing here shares algorithmic structure with the
// code under test beyond the data types.

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "gradedsim/grades.hpp"
#include "gradedsim/systems.hpp"

namespace gradedsim::oracles {

// Rule iteration: force the zero diagonal and the triangle law over and
// over until nothing changes.
MinGradeMatrix naive_closure(MinGradeMatrix m);

// All 2^(n*n) relations on an n-element carrier; guarded to n <= 3.
std::vector<Relation> all_relations(std::size_t n);

// Union of every relation accepted by `holds`: the Knaster-Tarski reading
// of a greatest fixpoint, by exhaustive enumeration.
Relation post_fixed_union(std::size_t n,
                          const std::function<bool(const Relation&)>& holds);

// Bounded-grade family descent for reward automata: keep one relation per
// grade level 0..B, start all-full, delete clause violations (successor
// lookups clamped at B) until stable, read off each pair's least level.
// B is twice the divergence threshold, so every finite grade the library
// can report lies strictly inside the table.
MinGradeMatrix dawr_family_similarity(const Dawr& a);

// The same descent for amortised bisimulations on transition systems.
MinGradeMatrix ltsr_family_similarity(const Ltsr& l);

// Language inclusion between two automaton states by plain reachability in
// the product automaton (no depth bookkeeping).
bool language_included(const Da& a, std::size_t s, std::size_t t);

// Literal word scan: every word of length <= max_len accepted from s is
// accepted from t. Exponential in max_len; small inputs only.
bool words_included(const Da& a, std::size_t s, std::size_t t,
                    std::size_t max_len);

// Plain boolean subset dominance by full enumeration.
bool dominated(const SubDist& p, const SubDist& q, const Relation& r);

// Direct evaluation of the graded-simulation clauses on a Markov decision
// process, one finite entry at a time.
bool mdp_graded_clauses_hold(const Mdp& m, const MinGradeMatrix& g);

// Levy-Prokhorov lifting by candidate brute force: gather every distance
// value and every mass gap seen at those values, test each candidate by
// full subset enumeration, return the least feasible one.
Rational lift_brute_force(const Lmp& l, const Pseudometric& d, std::size_t x,
                          std::size_t y);

// Graded bisimilarity computed without the metric engine: iterate the
// graded lifting on min-grade matrices from all-zero, with per-pair least
// feasible radii found by candidate brute force over the current matrix.
MinGradeMatrix lmp_graded_fixpoint(const Lmp& l);

// Deterministic corpus generators.
Rational random_unit_rational(std::mt19937_64& rng, long max_denominator);
Pseudometric random_pseudometric(std::mt19937_64& rng, std::size_t n,
                                 long max_denominator);
// Symmetric, zero-diagonal, triangle-closed matrix over the unit interval,
// possibly with infinite entries.
MinGradeMatrix random_monoidal_matrix(std::mt19937_64& rng, std::size_t n,
                                      long max_denominator);
// Arbitrary matrix over the domain: nat entries in 0..bound, rational
// entries with denominators up to bound, one fifth infinite.
MinGradeMatrix random_matrix(std::mt19937_64& rng, const GradeDomain& domain,
                             std::size_t n, long bound);
Relation random_relation(std::mt19937_64& rng, std::size_t n);
SubDist random_subdist(std::mt19937_64& rng, std::size_t n,
                       long max_denominator);

// Every reward automaton with exactly `states` states, one symbol, and
// rewards in 0..max_reward.
std::vector<Dawr> all_one_symbol_dawrs(std::size_t states, long max_reward);

// Seed a graded matrix from an ungraded similarity (least grade the reward
// clause allows per pair), then delete checker witnesses until it passes.
MinGradeMatrix shrink_mdp_matrix(const Mdp& m, const Relation& similar);

}  // namespace gradedsim::oracles
