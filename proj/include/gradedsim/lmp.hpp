#pragma once

#include "gradedsim/fixpoint.hpp"
#include "gradedsim/grades.hpp"
#include "gradedsim/systems.hpp"
#include "gradedsim/witness.hpp"

namespace gradedsim {

// Closed-ball embedding of a pseudometric as a graded relation family:
// entry (x, y) is d(x, y), so the slice at radius r is exactly the set of
// pairs within distance r. UnitInterval domain; always lax monoidal.
MinGradeMatrix galois_R(const Pseudometric& d);

// Left adjoint: distance = least radius whose slice contains the pair,
// with infinity truncated to 1.  The matrix must be lax monoidal over the
// UnitInterval domain; violations raise PreconditionError naming the axiom
// (non-zero diagonal, asymmetry, or a failed triangle).
Pseudometric galois_L(const MinGradeMatrix& m);

// Lévy–Prokhorov style lifting: the least r in [0, 1] such that for every
// symbol a, subset X, and direction i,
//   f_i(a)(X) <= f_{1-i}(a)(X_r) + r,
// where f_0 / f_1 are the successor subdistributions of states x / y and
// X_r is the closed d-ball of X.  Exact: the infimum is attained within
// the finite candidate set given by the distinct values of d and the mass
// gaps at each of them.  Carriers above 20 states are rejected.
Rational lp_lifting(const Lmp& l, const Pseudometric& d, std::size_t x,
                    std::size_t y);

// Graded bisimulation checker: every pair with finite entry r must satisfy
// the grade-r clause, with balls taken through the slices of m itself.
// Requires a lax monoidal UnitInterval matrix and at most 16 states.
CheckResult check_eps_bisimulation(const Lmp& l, const MinGradeMatrix& m);

// Pseudometric bisimulation checker: ok iff the lifted distance of every
// pair's successors is at most the pair's distance.
CheckResult check_metric_bisimulation(const Lmp& l, const Pseudometric& d);

// Least fixpoint (in the pointwise order; the greatest bisimulation in the
// reverse order convention) of d |-> lp_lifting(l, d, -, -), from the zero
// pseudometric.  Stabilizes exactly on rational inputs or hits the cap.
FixpointOutcome<Pseudometric> metric_bisimilarity(const Lmp& l,
                                                  const FixpointConfig& config);

// The same fixpoint presented as a min-grade matrix (the two liftings agree
// on closed-ball families); the converged result is re-validated with
// check_eps_bisimulation.
FixpointOutcome<MinGradeMatrix> graded_bisimilarity(
    const Lmp& l, const FixpointConfig& config);

}  // namespace gradedsim
