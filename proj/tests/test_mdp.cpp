#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "gradedsim/errors.hpp"
#include "gradedsim/mdp.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gradedsim;
using testing::matrix;

namespace {

Mdp random_mdp(std::uint64_t seed, std::size_t states, std::size_t alphabet) {
  SizeParams params;
  params.states = states;
  params.alphabet = alphabet;
  return std::get<Mdp>(random_system(SystemKind::mdp, params, seed));
}

Rational mass(const SubDist& p, const std::vector<std::size_t>& xs) {
  Rational total(0);
  for (std::size_t x : xs) total += p[x];
  return total;
}

Rational image_mass(const SubDist& q, const Relation& r,
                    const std::vector<std::size_t>& xs) {
  Rational total(0);
  for (std::size_t y = 0; y < q.size(); ++y) {
    bool hit = false;
    for (std::size_t x : xs)
      if (r.contains(x, y)) hit = true;
    if (hit) total += q[y];
  }
  return total;
}

}  // namespace

TEST_CASE("subset dominance: reflexive cases and canonical violations") {
  SubDist p = {Rational(1, 2), Rational(1, 4), Rational(0)};
  CHECK_FALSE(subset_dominance(p, p, Relation::identity(3)));

  SubDist point = {Rational(0), Rational(1), Rational(0)};
  SubDist nothing = {Rational(0), Rational(0), Rational(0)};
  auto bad = subset_dominance(point, nothing, Relation::full(3));
  REQUIRE(bad);
  CHECK(*bad == std::vector<std::size_t>{1});

  CHECK_THROWS_AS(
      subset_dominance(SubDist(21, Rational(0)), SubDist(21, Rational(0)),
                       Relation(21)),
      SizeError);
  CHECK_THROWS_AS(subset_dominance(p, p, Relation(2)), ShapeError);
}

TEST_CASE("flow dominance: uniform case and cut certificates") {
  SubDist uniform = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  CHECK_FALSE(flow_dominance(uniform, uniform, Relation::identity(3)));

  SubDist p = {Rational(1, 2), Rational(0), Rational(1, 3)};
  auto bad = flow_dominance(p, p, Relation(3));
  REQUIRE(bad);
  CHECK(*bad == std::vector<std::size_t>{0, 2});
}

TEST_CASE("subset and flow dominance agree, certificates genuinely violate") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 60; ++round) {
    SubDist p = oracles::random_subdist(rng, 6, 8);
    SubDist q = oracles::random_subdist(rng, 6, 8);
    Relation r = oracles::random_relation(rng, 6);
    auto via_subset = subset_dominance(p, q, r);
    auto via_flow = flow_dominance(p, q, r);
    CHECK(via_subset.has_value() == via_flow.has_value());
    CHECK(via_subset.has_value() == !oracles::dominated(p, q, r));
    if (via_subset) CHECK(mass(p, *via_subset) > image_mass(q, r, *via_subset));
    if (via_flow) CHECK(mass(p, *via_flow) > image_mass(q, r, *via_flow));
  }
}

TEST_CASE("plain simulation checker") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Mdp m = random_mdp(seed, 1 + seed % 5, 2);
    CHECK_FALSE(check_mdp_simulation(m, Relation::identity(m.size())));
    CHECK_FALSE(check_mdp_simulation(m, mdp_similarity(m)));
    CHECK_FALSE(check_mdp_simulation(m, Relation(m.size())));
  }

  // A state shipping mass 1 claimed below a deadlocked one.
  Mdp m;
  m.states = {"live", "dead"};
  m.alphabet = {"a"};
  m.trans = {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}};
  m.reward = {Rational(0), Rational(0)};
  Relation r = Relation::identity(2);
  r.set(0, 1);
  auto witness = check_mdp_simulation(m, r);
  REQUIRE(witness);
  CHECK(witness->kind == Witness::Kind::successor);
  CHECK(witness->pair == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(witness->symbol == "a");
  CHECK(witness->detail.find("exceeds") != std::string::npos);
  CHECK_THROWS_AS(check_mdp_simulation(m, Relation(5)), ShapeError);
}

TEST_CASE("similarity: singletons, enumeration oracle") {
  Mdp single;
  single.states = {"s"};
  single.alphabet = {"a"};
  single.trans = {{Rational(1)}};
  single.reward = {Rational(0)};
  CHECK(mdp_similarity(single) == Relation::full(1));

  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Mdp m = random_mdp(seed, 1 + seed % 3, 2);
    Relation expected = oracles::post_fixed_union(
        m.size(),
        [&](const Relation& r) { return !check_mdp_simulation(m, r); });
    CHECK(mdp_similarity(m) == expected);
  }
}

TEST_CASE("graded checker: reward clause and sliced dominance") {
  const char* text = R"({
    "kind": "mdp",
    "states": ["s", "t"],
    "alphabet": ["a"],
    "transitions": [
      {"from": "s", "symbol": "a", "reward": "1/2",
       "probs": [{"to": "s", "prob": "1/2"}]},
      {"from": "t", "symbol": "a", "reward": "0",
       "probs": [{"to": "s", "prob": "1/2"}]}
    ]
  })";
  Mdp m = std::get<Mdp>(parse_system(text));

  const GradeDomain dom = GradeDomain::nonneg_rational();
  CHECK_FALSE(
      check_mdp_graded_simulation(m, MinGradeMatrix::diagonal_zero(dom, 2)));

  // Entry below the reward difference: the reward clause trips first.
  auto witness = check_mdp_graded_simulation(
      m, matrix(dom, {{"0", "1/4"}, {"inf", "0"}}));
  REQUIRE(witness);
  CHECK(witness->kind == Witness::Kind::reward_bound);
  CHECK(witness->pair == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(witness->symbol == "a");

  // Entry covering the difference is fine: the successors coincide.
  CHECK_FALSE(check_mdp_graded_simulation(
      m, matrix(dom, {{"0", "1/2"}, {"inf", "0"}})));
}

TEST_CASE("graded checker: dominance failures carry the slice grade") {
  Mdp m;
  m.states = {"s", "t"};
  m.alphabet = {"a"};
  m.trans = {{Rational(1), Rational(0)}, {Rational(0), Rational(1, 2)}};
  m.reward = {Rational(0), Rational(0)};
  auto witness = check_mdp_graded_simulation(
      m, matrix(GradeDomain::nonneg_rational(), {{"0", "0"}, {"inf", "0"}}));
  REQUIRE(witness);
  CHECK(witness->kind == Witness::Kind::successor);
  CHECK(witness->detail.find("at grade 0/1") != std::string::npos);
}

TEST_CASE("graded checker: a hand-built matrix verified clause by clause") {
  Mdp m;
  m.states = {"x", "y", "z"};
  m.alphabet = {"a"};
  m.trans = {{Rational(0), Rational(0), Rational(1, 2)},
             {Rational(0), Rational(0), Rational(1, 2)},
             {Rational(0), Rational(0), Rational(0)}};
  m.reward = {Rational(1), Rational(0), Rational(0)};
  MinGradeMatrix g = matrix(GradeDomain::nonneg_rational(),
                            {{"0", "1", "inf"},
                             {"inf", "0", "inf"},
                             {"inf", "inf", "0"}});
  CHECK_FALSE(check_mdp_graded_simulation(m, g));
  CHECK(oracles::mdp_graded_clauses_hold(m, g));
  // Halving the (x, y) entry breaks the reward clause.
  MinGradeMatrix tight = g;
  tight.set(0, 1, Grade(Rational(1, 2)));
  auto witness = check_mdp_graded_simulation(m, tight);
  REQUIRE(witness);
  CHECK(witness->kind == Witness::Kind::reward_bound);
  CHECK_FALSE(oracles::mdp_graded_clauses_hold(m, tight));
}

TEST_CASE("graded checker: domain and size guards") {
  Mdp m = random_mdp(3, 2, 1);
  CHECK_THROWS_AS(check_mdp_graded_simulation(
                      m, MinGradeMatrix::diagonal_zero(GradeDomain::nat(), 2)),
                  ShapeError);
  Mdp big;
  big.states.assign(21, "s");
  for (std::size_t i = 0; i < big.states.size(); ++i)
    big.states[i] += std::to_string(i);
  CHECK_THROWS_AS(
      check_mdp_graded_simulation(
          big, MinGradeMatrix::diagonal_zero(GradeDomain::nonneg_rational(),
                                             21)),
      SizeError);
}

TEST_CASE("shrunk matrices pass the checker and the clause oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Mdp m = random_mdp(seed, 1 + seed % 4, 2);
    MinGradeMatrix g = oracles::shrink_mdp_matrix(m, mdp_similarity(m));
    CHECK_FALSE(check_mdp_graded_simulation(m, g));
    CHECK(oracles::mdp_graded_clauses_hold(m, g));
    CHECK_FALSE(check_mdp_simulation(m, collapse(g)));
    CHECK(collapse(g).subset_of(mdp_similarity(m)));
  }
}

TEST_CASE("relations shrunk to pass the checker land inside similarity") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    Mdp m = random_mdp(static_cast<std::uint64_t>(round), 4, 2);
    Relation r = oracles::random_relation(rng, 4);
    while (auto witness = check_mdp_simulation(m, r))
      r.set(witness->pair.first, witness->pair.second, false);
    CHECK(r.subset_of(mdp_similarity(m)));
  }
}
