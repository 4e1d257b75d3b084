#pragma once

// Counterexample reporting for failed simulation checks, shared by all
// system modules.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

namespace gradedsim {

struct Witness {
  enum class Kind { acceptance, reward_bound, successor };

  std::pair<std::size_t, std::size_t> pair;  // (left state, right state)
  Kind kind;
  std::optional<std::string> symbol;  // symbol name, when one is involved
  std::string detail;                 // names the violated clause's data
};

std::string witness_kind_name(Witness::Kind kind);

// Empty result means the check passed.
using CheckResult = std::optional<Witness>;

}  // namespace gradedsim
