#pragma once

// The five finite system kinds, their JSON file format, and deterministic
// random generation for test corpora. States and symbols are referenced by
// name in documents and by dense index internally.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gradedsim/errors.hpp"
#include "gradedsim/numbers.hpp"

namespace gradedsim {

// Deterministic automaton: total transition function plus accepting set.
struct Da {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<std::size_t> next;  // next[s * |alphabet| + a]
  std::vector<bool> accepting;    // per state

  std::size_t size() const { return states.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }
  std::size_t step(std::size_t s, std::size_t a) const {
    return next[s * alphabet.size() + a];
  }
  bool operator==(const Da&) const = default;
};

// Deterministic automaton with a natural-number reward per transition.
struct Dawr {
  Da automaton;
  std::vector<Int> reward;  // reward[s * |alphabet| + a], nonnegative

  std::size_t size() const { return automaton.size(); }
  std::size_t symbol_count() const { return automaton.symbol_count(); }
  const Int& reward_at(std::size_t s, std::size_t a) const {
    return reward[s * automaton.alphabet.size() + a];
  }
  bool operator==(const Dawr&) const = default;
};

struct LtsEdge {
  std::size_t target;
  Int reward;
  bool operator==(const LtsEdge&) const = default;
  bool operator<(const LtsEdge& other) const {
    return target != other.target ? target < other.target
                                  : reward < other.reward;
  }
};

// Labelled transition system with a reward on every transition; finitely
// branching, edge lists kept sorted and duplicate-free.
struct Ltsr {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<std::vector<LtsEdge>> moves;  // moves[s * |alphabet| + a]

  std::size_t size() const { return states.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }
  const std::vector<LtsEdge>& edges(std::size_t s, std::size_t a) const {
    return moves[s * alphabet.size() + a];
  }
  bool operator==(const Ltsr&) const = default;
};

// Subdistribution over the carrier, dense; total mass at most 1.
using SubDist = std::vector<Rational>;

// Markov decision process: per (state, symbol) a subdistribution and a
// nonnegative rational reward.
struct Mdp {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<SubDist> trans;     // trans[s * |alphabet| + a]
  std::vector<Rational> reward;   // reward[s * |alphabet| + a]

  std::size_t size() const { return states.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }
  const SubDist& dist(std::size_t s, std::size_t a) const {
    return trans[s * alphabet.size() + a];
  }
  const Rational& reward_at(std::size_t s, std::size_t a) const {
    return reward[s * alphabet.size() + a];
  }
  bool operator==(const Mdp&) const = default;
};

// Labelled Markov process: per (state, symbol) a subdistribution.
struct Lmp {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<SubDist> trans;

  std::size_t size() const { return states.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }
  const SubDist& dist(std::size_t s, std::size_t a) const {
    return trans[s * alphabet.size() + a];
  }
  bool operator==(const Lmp&) const = default;
};

using SystemDescription = std::variant<Da, Dawr, Ltsr, Mdp, Lmp>;

enum class SystemKind { da, dawr, ltsr, mdp, lmp };

SystemKind kind_of(const SystemDescription& system);
std::string kind_name(SystemKind kind);
std::optional<SystemKind> kind_from_name(const std::string& name);

const std::vector<std::string>& states_of(const SystemDescription& system);
const std::vector<std::string>& alphabet_of(const SystemDescription& system);

// Parses and fully validates a system document (format: docs/format.md).
// Throws ParseError for malformed JSON, SemanticError for schema or
// consistency violations; messages name the offending element.
SystemDescription parse_system(const std::string& text);

// Canonical document for a system; parse_system(serialize_system(s)) == s.
std::string serialize_system(const SystemDescription& system);

// Generation caps: 1 <= states <= 16, alphabet <= 4, 0 <= max_reward <= 8,
// 1 <= max_denominator <= 16.
struct SizeParams {
  std::size_t states = 4;
  std::size_t alphabet = 2;
  Int max_reward = 3;
  Int max_denominator = 8;
};

// Deterministic in (kind, params, seed) across platforms; every generated
// system satisfies its type invariants. Parameters outside the caps throw
// SizeError.
SystemDescription random_system(SystemKind kind, const SizeParams& params,
                                std::uint64_t seed);

}  // namespace gradedsim
