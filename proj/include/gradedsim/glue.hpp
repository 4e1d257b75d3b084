#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gradedsim/grades.hpp"
#include "gradedsim/systems.hpp"
#include "gradedsim/witness.hpp"

namespace gradedsim {

// The ungraded side of a glued simulation: a plain relation for automata,
// transition systems, and Markov decision processes; a pseudometric for
// labelled Markov processes (whose ungraded bisimulations are metric).
using UngradedPart = std::variant<Relation, Pseudometric>;

// A graded simulation, an ungraded one, and the containment fact between
// them, all over one system. Constructed only through glue /
// glued_from_graded, which validate every invariant.
struct GluedSimulation {
  SystemDescription system;
  MinGradeMatrix graded;
  UngradedPart ungraded;
};

// Grade domain used by a kind's graded simulations; `da` and any future
// ungraded-only kind have none (SemanticError).
GradeDomain graded_domain_of(SystemKind kind);

// Kind-dispatched graded checker (dawr / ltsr / mdp / lmp; SemanticError
// for da, which has no graded notion).
CheckResult check_graded_simulation(const SystemDescription& system,
                                    const MinGradeMatrix& graded);

// Kind-dispatched ungraded checker. The part must be a Relation for
// da / dawr / ltsr / mdp (a dawr relation is checked on the underlying
// automaton) and a Pseudometric for lmp; a mismatch is a ShapeError.
CheckResult check_ungraded_simulation(const SystemDescription& system,
                                      const UngradedPart& ungraded);

// Push-forward of a graded family to the ungraded fibre: the union of all
// slices (collapse) for relation kinds, the induced distance (galois_L)
// for lmp.
UngradedPart ungraded_collapse(const SystemDescription& system,
                               const MinGradeMatrix& graded);

// Validates carriers, the containment of the collapse in the ungraded
// part (for metrics: ungraded distance <= every finite grade), and both
// checkers. Containment or checker failures raise PreconditionError
// naming the offending pair.
GluedSimulation glue(const SystemDescription& system, MinGradeMatrix graded,
                     UngradedPart ungraded);

// Pushes a checked graded simulation forward to its collapse. That the
// collapse passes the ungraded checker is asserted, not assumed: this is
// the executable form of the soundness theorem for every kind.
GluedSimulation glued_from_graded(const SystemDescription& system,
                                  MinGradeMatrix graded);

// Componentwise meet of two glued simulations over the same system:
// pointwise max of grade matrices, intersection of relations (pointwise
// max of metrics), then full re-validation.
GluedSimulation meet(const GluedSimulation& a, const GluedSimulation& b);

// Sanity check for the automaton instance: mutual similarity must coincide
// with language equality, decided exactly by bounded search at length
// |S|^2. Returns nothing when they agree everywhere, otherwise a word
// accepted from one of a pair of supposedly equivalent states and not the
// other. At most 8 states (SizeError).
std::optional<std::vector<std::size_t>> final_language_check(const Da& a);

}  // namespace gradedsim
