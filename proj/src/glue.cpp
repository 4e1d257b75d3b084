#include "gradedsim/glue.hpp"

#include "gradedsim/dawr.hpp"
#include "gradedsim/lmp.hpp"
#include "gradedsim/ltsr.hpp"
#include "gradedsim/mdp.hpp"

namespace gradedsim {

namespace {

std::string pair_text(const std::vector<std::string>& names, std::size_t i,
                      std::size_t j) {
  return "(\"" + names[i] + "\", \"" + names[j] + "\")";
}

void require_carrier(const SystemDescription& system, std::size_t other,
                     const char* what) {
  if (states_of(system).size() != other)
    throw ShapeError(std::string(what) + " carrier (" + std::to_string(other) +
                     ") does not match system carrier (" +
                     std::to_string(states_of(system).size()) + ")");
}

}  // namespace

GradeDomain graded_domain_of(SystemKind kind) {
  switch (kind) {
    case SystemKind::dawr:
    case SystemKind::ltsr:
      return GradeDomain::nat();
    case SystemKind::mdp:
      return GradeDomain::nonneg_rational();
    case SystemKind::lmp:
      return GradeDomain::unit_interval();
    case SystemKind::da:
      break;
  }
  throw SemanticError("deterministic automata have no graded simulations; "
                      "attach rewards (kind dawr) first");
}

CheckResult check_graded_simulation(const SystemDescription& system,
                                    const MinGradeMatrix& graded) {
  graded_domain_of(kind_of(system));  // rejects kind da
  switch (kind_of(system)) {
    case SystemKind::dawr:
      return check_dawr_graded_simulation(std::get<Dawr>(system), graded);
    case SystemKind::ltsr:
      return check_lts_amortised_bisimulation(std::get<Ltsr>(system), graded);
    case SystemKind::mdp:
      return check_mdp_graded_simulation(std::get<Mdp>(system), graded);
    case SystemKind::lmp:
      return check_eps_bisimulation(std::get<Lmp>(system), graded);
    default:
      throw Error("unreachable");
  }
}

CheckResult check_ungraded_simulation(const SystemDescription& system,
                                      const UngradedPart& ungraded) {
  if (kind_of(system) == SystemKind::lmp) {
    if (!std::holds_alternative<Pseudometric>(ungraded))
      throw ShapeError("ungraded bisimulations on labelled Markov processes "
                       "are pseudometrics, not relations");
    return check_metric_bisimulation(std::get<Lmp>(system),
                                     std::get<Pseudometric>(ungraded));
  }
  if (!std::holds_alternative<Relation>(ungraded))
    throw ShapeError("ungraded simulations on this kind are relations, not "
                     "pseudometrics");
  const Relation& relation = std::get<Relation>(ungraded);
  switch (kind_of(system)) {
    case SystemKind::da:
      return check_da_simulation(std::get<Da>(system), relation);
    case SystemKind::dawr:
      return check_da_simulation(std::get<Dawr>(system).automaton, relation);
    case SystemKind::ltsr:
      return check_lts_bisimulation(std::get<Ltsr>(system), relation);
    case SystemKind::mdp:
      return check_mdp_simulation(std::get<Mdp>(system), relation);
    default:
      throw Error("unreachable");
  }
}

UngradedPart ungraded_collapse(const SystemDescription& system,
                               const MinGradeMatrix& graded) {
  if (kind_of(system) == SystemKind::lmp) return galois_L(graded);
  return collapse(graded);
}

namespace {

void require_containment(const SystemDescription& system,
                         const MinGradeMatrix& graded,
                         const UngradedPart& ungraded) {
  const std::vector<std::string>& names = states_of(system);
  const std::size_t n = names.size();
  if (const Relation* relation = std::get_if<Relation>(&ungraded)) {
    Relation collapsed = collapse(graded);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (collapsed.contains(i, j) && !relation->contains(i, j))
          throw PreconditionError(
              "containment fails: pair " + pair_text(names, i, j) +
              " has finite grade " + format_grade(graded.at(i, j)) +
              " but is outside the ungraded relation");
    return;
  }
  // Metric side: the pushed-forward distance min(grade, 1) must dominate
  // the ungraded distance (smaller distances sit higher in the fibre).
  const Pseudometric& d = std::get<Pseudometric>(ungraded);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (graded.at(i, j).is_finite() &&
          d.at(i, j) > graded.at(i, j).value())
        throw PreconditionError(
            "containment fails: pair " + pair_text(names, i, j) +
            " has grade " + format_grade(graded.at(i, j)) +
            " but ungraded distance " + format_rational(d.at(i, j)));
}

std::size_t ungraded_carrier(const UngradedPart& part) {
  if (const Relation* relation = std::get_if<Relation>(&part))
    return relation->carrier_size();
  return std::get<Pseudometric>(part).carrier_size();
}

}  // namespace

GluedSimulation glue(const SystemDescription& system, MinGradeMatrix graded,
                     UngradedPart ungraded) {
  require_carrier(system, graded.carrier_size(), "graded");
  require_carrier(system, ungraded_carrier(ungraded), "ungraded");
  if (!(graded.domain() == graded_domain_of(kind_of(system))))
    throw ShapeError("graded component uses domain " + graded.domain().name() +
                     ", expected " +
                     graded_domain_of(kind_of(system)).name());
  require_containment(system, graded, ungraded);
  const std::vector<std::string>& names = states_of(system);
  if (auto witness = check_graded_simulation(system, graded))
    throw PreconditionError(
        "graded component fails its checker at " +
        pair_text(names, witness->pair.first, witness->pair.second) + ": " +
        witness->detail);
  if (auto witness = check_ungraded_simulation(system, ungraded))
    throw PreconditionError(
        "ungraded component fails its checker at " +
        pair_text(names, witness->pair.first, witness->pair.second) + ": " +
        witness->detail);
  return GluedSimulation{system, std::move(graded), std::move(ungraded)};
}

GluedSimulation glued_from_graded(const SystemDescription& system,
                                  MinGradeMatrix graded) {
  require_carrier(system, graded.carrier_size(), "graded");
  const std::vector<std::string>& names = states_of(system);
  if (auto witness = check_graded_simulation(system, graded))
    throw PreconditionError(
        "graded component fails its checker at " +
        pair_text(names, witness->pair.first, witness->pair.second) + ": " +
        witness->detail);
  UngradedPart pushed = ungraded_collapse(system, graded);
  // Soundness theorem, executed: the collapse of a graded simulation is an
  // ungraded one. A witness here is a library bug, not bad input.
  if (auto witness = check_ungraded_simulation(system, pushed))
    throw Error("soundness violation: collapse fails the ungraded checker "
                "at " +
                pair_text(names, witness->pair.first, witness->pair.second) +
                ": " + witness->detail);
  return GluedSimulation{system, std::move(graded), std::move(pushed)};
}

GluedSimulation meet(const GluedSimulation& a, const GluedSimulation& b) {
  if (!(a.system == b.system))
    throw ShapeError("meet requires two glued simulations over one system");
  if (a.ungraded.index() != b.ungraded.index())
    throw ShapeError("meet requires matching ungraded components");
  MinGradeMatrix graded = pointwise_max(a.graded, b.graded);
  UngradedPart ungraded = [&]() -> UngradedPart {
    if (const Relation* left = std::get_if<Relation>(&a.ungraded))
      return intersect(*left, std::get<Relation>(b.ungraded));
    const Pseudometric& x = std::get<Pseudometric>(a.ungraded);
    const Pseudometric& y = std::get<Pseudometric>(b.ungraded);
    const std::size_t n = x.carrier_size();
    std::vector<Rational> entries(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        entries[i * n + j] = std::max(x.at(i, j), y.at(i, j));
    return Pseudometric(n, std::move(entries));
  }();
  return glue(a.system, std::move(graded), std::move(ungraded));
}

std::optional<std::vector<std::size_t>> final_language_check(const Da& a) {
  if (a.size() > 8)
    throw SizeError("language check is limited to 8 states, got " +
                    std::to_string(a.size()));
  Relation similar = da_similarity(a);
  const std::size_t horizon = a.size() * a.size();
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < a.size(); ++t) {
      auto gap = bounded_language_gap(a, s, t, horizon);
      if (similar.contains(s, t) && gap) return gap;
      // Similarity complete for language inclusion: a missing pair must be
      // separated by some word within the horizon.
      if (!similar.contains(s, t) && !gap)
        throw Error("similarity denies (\"" + a.states[s] + "\", \"" +
                    a.states[t] + "\") but no separating word exists");
    }
  return std::nullopt;
}

}  // namespace gradedsim
