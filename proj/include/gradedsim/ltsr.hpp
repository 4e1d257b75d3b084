#pragma once

#include "gradedsim/fixpoint.hpp"
#include "gradedsim/grades.hpp"
#include "gradedsim/systems.hpp"
#include "gradedsim/witness.hpp"

namespace gradedsim {

// Ordinary strong bisimulation, ignoring rewards: for every related pair
// and every symbol, each move on one side has a matching move on the other
// with related targets. Returns the first violation in pair-major order.
CheckResult check_lts_bisimulation(const Ltsr& l, const Relation& r);

// Greatest strong bisimulation (rewards ignored).
Relation lts_bisimilarity(const Ltsr& l);

// Amortised graded bisimulation over nat grades: a pair carries grade n
// when either side's move (x_i, a, y_i, r_i) can be answered by a move
// (x_{1-i}, a, y_{1-i}, r_{1-i}) with r_0 <= n + r_1 and the targets
// related at n - r_0 + r_1, where index 0 is always the left state of the
// pair.  Checks each finite entry at its minimal grade.
CheckResult check_lts_amortised_bisimulation(const Ltsr& l,
                                             const MinGradeMatrix& m);

// Least fixpoint of the amortised one-step operator
//   F(G)(x0, x1) = max over directions i, symbols a, and moves of x_i of
//     min over answering moves of x_{1-i} of max(0, G(y0, y1) + r0 - r1)
// (an unanswerable move yields infinity; a pair of deadlocks yields 0).
// Entries above |S|^2 * W, with W the largest same-symbol reward spread,
// are widened to infinity.
MinGradeMatrix lts_amortised_bisimilarity(const Ltsr& l);

}  // namespace gradedsim
