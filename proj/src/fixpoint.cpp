#include "gradedsim/fixpoint.hpp"

#include <utility>

namespace gradedsim {

Relation greatest_relation_fixpoint(
    const std::function<Relation(const Relation&)>& step,
    std::size_t carrier_size) {
  Relation current = Relation::full(carrier_size);
  for (;;) {
    Relation next = step(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

namespace {

// Promote Nat entries strictly above the bound to infinity.
MinGradeMatrix widen(MinGradeMatrix m, const Grade& bound) {
  if (bound.is_infinite() || m.domain().kind() != GradeDomain::Kind::nat)
    return m;
  for (std::size_t i = 0; i < m.carrier_size(); ++i)
    for (std::size_t j = 0; j < m.carrier_size(); ++j)
      if (m.at(i, j).is_finite() && bound < m.at(i, j))
        m.set(i, j, Grade::infinity());
  return m;
}

}  // namespace

FixpointOutcome<MinGradeMatrix> least_grade_fixpoint(
    const std::function<MinGradeMatrix(const MinGradeMatrix&)>& step,
    MinGradeMatrix init, const FixpointConfig& config) {
  MinGradeMatrix current = widen(std::move(init), config.widening_bound);
  for (std::size_t iteration = 1; iteration <= config.iteration_cap;
       ++iteration) {
    MinGradeMatrix next = widen(step(current), config.widening_bound);
    if (next == current)
      return {std::move(current), true, iteration};
    current = std::move(next);
  }
  if (config.on_cap == FixpointConfig::OnCap::report_partial)
    return {std::move(current), false, config.iteration_cap};
  throw FixpointCapError("grade fixpoint did not stabilize within " +
                             std::to_string(config.iteration_cap) +
                             " iterations",
                         current, config.iteration_cap);
}

FixpointOutcome<Pseudometric> pseudometric_fixpoint(
    const std::function<Pseudometric(const Pseudometric&)>& step,
    std::size_t carrier_size, const FixpointConfig& config) {
  Pseudometric current = Pseudometric::zero(carrier_size);
  for (std::size_t iteration = 1; iteration <= config.iteration_cap;
       ++iteration) {
    Pseudometric next = step(current);
    if (next == current)
      return {std::move(current), true, iteration};
    current = std::move(next);
  }
  if (config.on_cap == FixpointConfig::OnCap::report_partial)
    return {std::move(current), false, config.iteration_cap};
  throw FixpointCapError("pseudometric fixpoint did not stabilize within " +
                             std::to_string(config.iteration_cap) +
                             " iterations",
                         current, config.iteration_cap);
}

}  // namespace gradedsim
