#pragma once

#include <optional>
#include <vector>

#include "gradedsim/fixpoint.hpp"
#include "gradedsim/grades.hpp"
#include "gradedsim/systems.hpp"
#include "gradedsim/witness.hpp"

namespace gradedsim {

// Subdistribution p is dominated by q through relation r when
// p(X) <= q(r(X)) for every subset X of the carrier, with r(X) the
// forward image.  Returns the first violating X in canonical subset order
// (increasing size, then lexicographic), or nothing when dominated.
// Carriers above 20 states are rejected (SizeError): the check is
// exponential by design.
std::optional<std::vector<std::size_t>> subset_dominance(
    const SubDist& p, const SubDist& q, const Relation& r);

// Same question decided in polynomial time via a feasible-flow instance:
// source -> x with capacity p(x), x -> y unbounded for (x, y) in r,
// y -> sink with capacity q(y).  Dominance holds exactly when the maximum
// flow ships all of p; otherwise the min-cut yields a violating subset,
// returned in canonical form (sorted indices).
std::optional<std::vector<std::size_t>> flow_dominance(const SubDist& p,
                                                       const SubDist& q,
                                                       const Relation& r);

// Ungraded simulation on a Markov decision process: rewards are ignored
// and every action's successor subdistributions must be related by
// dominance through r.  First violation in pair-major, then symbol, order.
CheckResult check_mdp_simulation(const Mdp& m, const Relation& r);

// Greatest ungraded simulation.
Relation mdp_similarity(const Mdp& m);

// Graded simulation over nonnegative rational grades: a pair (s, t) at
// grade g needs, for every action a, rew(s, a) <= g + rew(t, a) and
// dominance of the successor subdistributions through the slice of the
// matrix at g - rew(s, a) + rew(t, a).  Each finite entry is checked at
// its minimal grade.  Dominance uses the subset check, so carriers above
// 20 states are rejected.
CheckResult check_mdp_graded_simulation(const Mdp& m, const MinGradeMatrix& g);

}  // namespace gradedsim
