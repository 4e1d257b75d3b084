#pragma once

// Kleene-iteration fixpoint engines over the three lattice shapes the system
// modules use. Greatest fixpoints over graded relation families become
// least fixpoints on matrices because a larger family has pointwise smaller
// minimal grades; relation fixpoints stay greatest fixpoints.

#include <cstddef>
#include <functional>

#include "gradedsim/grades.hpp"

namespace gradedsim {

struct FixpointConfig {
  enum class OnCap { error, report_partial };

  // Finite bound: any Nat-domain entry strictly above it is promoted to
  // infinity after each step (divergence widening). Ignored when infinite
  // and for non-Nat domains and relation runs.
  Grade widening_bound = Grade::infinity();
  std::size_t iteration_cap = 64;
  OnCap on_cap = OnCap::error;
};

template <typename T>
struct FixpointOutcome {
  T value;
  bool converged = true;
  std::size_t iterations = 0;  // number of step applications performed
};

// Greatest fixpoint of a monotone step, iterating down from the full
// relation until two consecutive iterates agree. Terminates in at most
// carrier_size^2 + 1 iterations.
Relation greatest_relation_fixpoint(
    const std::function<Relation(const Relation&)>& step,
    std::size_t carrier_size);

// Least fixpoint of a monotone step on min-grade matrices, iterating up from
// `init` (typically the all-zero matrix). With on_cap = error a cap overrun
// throws FixpointCapError carrying the last iterate.
FixpointOutcome<MinGradeMatrix> least_grade_fixpoint(
    const std::function<MinGradeMatrix(const MinGradeMatrix&)>& step,
    MinGradeMatrix init, const FixpointConfig& config);

// Least fixpoint of a monotone step on pseudometrics, iterating up from the
// zero pseudometric; exact rational stabilization or cap.
FixpointOutcome<Pseudometric> pseudometric_fixpoint(
    const std::function<Pseudometric(const Pseudometric&)>& step,
    std::size_t carrier_size, const FixpointConfig& config);

}  // namespace gradedsim
