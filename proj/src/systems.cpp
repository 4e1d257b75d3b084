#include "gradedsim/systems.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace gradedsim {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr std::size_t kMaxStates = 16;
constexpr std::size_t kMaxAlphabet = 4;
constexpr long kMaxReward = 8;
constexpr long kMaxDenominator = 16;

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void expect_fields(const Json& object,
                   std::initializer_list<const char*> allowed,
                   const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (const char* name : allowed)
      if (it.key() == name) known = true;
    if (!known)
      throw SemanticError("unknown field \"" + it.key() + "\" in " + where);
  }
  for (const char* name : allowed)
    if (!object.contains(name))
      throw SemanticError("missing field \"" + std::string(name) + "\" in " +
                          where);
}

std::vector<std::string> parse_name_list(const Json& j, const char* what) {
  if (!j.is_array())
    throw SemanticError(std::string("\"") + what + "\" must be an array");
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (const Json& item : j) {
    if (!item.is_string() || item.get<std::string>().empty())
      throw SemanticError(std::string("\"") + what +
                          "\" entries must be nonempty strings");
    if (!seen.insert(item.get<std::string>()).second)
      throw SemanticError(std::string("duplicate ") + what + " name \"" +
                          item.get<std::string>() + "\"");
    names.push_back(item.get<std::string>());
  }
  return names;
}

std::size_t index_of(const std::vector<std::string>& names, const Json& j,
                     const char* what) {
  if (!j.is_string())
    throw SemanticError(std::string(what) + " reference must be a string");
  const std::string name = j.get<std::string>();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw SemanticError(std::string("unknown ") + what + " \"" + name + "\"");
  return static_cast<std::size_t>(it - names.begin());
}

Int parse_natural(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw SemanticError(std::string(what) + " must be a JSON integer");
  if (j.is_number_integer() && j.get<std::int64_t>() < 0)
    throw SemanticError(std::string(what) + " must be nonnegative");
  return Int(j.get<std::int64_t>());
}

Rational parse_rational_field(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) {
    Int n = parse_natural(j, what);
    return Rational(n);
  }
  throw SemanticError(std::string(what) +
                      " must be a \"p/q\" string or a JSON integer");
}

struct Header {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
};

Header parse_header(const Json& doc) {
  Header h;
  h.states = parse_name_list(doc.at("states"), "state");
  if (h.states.empty()) throw SemanticError("\"states\" must be nonempty");
  h.alphabet = parse_name_list(doc.at("alphabet"), "symbol");
  return h;
}

std::vector<bool> parse_accepting(const Json& j, const Header& h) {
  if (!j.is_array())
    throw SemanticError("\"accepting\" must be an array of state names");
  std::vector<bool> accepting(h.states.size(), false);
  for (const Json& item : j) {
    std::size_t s = index_of(h.states, item, "state");
    if (accepting[s])
      throw SemanticError("duplicate accepting state \"" + h.states[s] + "\"");
    accepting[s] = true;
  }
  return accepting;
}

// Shared parse of da/dawr transition rows; rewards only read when wanted.
void parse_deterministic_rows(const Json& rows, const Header& h,
                              bool with_reward, std::vector<std::size_t>& next,
                              std::vector<Int>& reward) {
  const std::size_t cells = h.states.size() * h.alphabet.size();
  next.assign(cells, 0);
  reward.assign(cells, Int(0));
  std::vector<bool> defined(cells, false);
  if (!rows.is_array())
    throw SemanticError("\"transitions\" must be an array");
  for (const Json& row : rows) {
    if (!row.is_object())
      throw SemanticError("transition entries must be objects");
    if (with_reward)
      expect_fields(row, {"from", "symbol", "to", "reward"}, "transition");
    else
      expect_fields(row, {"from", "symbol", "to"}, "transition");
    std::size_t s = index_of(h.states, row.at("from"), "state");
    std::size_t a = index_of(h.alphabet, row.at("symbol"), "symbol");
    std::size_t cell = s * h.alphabet.size() + a;
    if (defined[cell])
      throw SemanticError("duplicate transition for state \"" + h.states[s] +
                          "\" symbol \"" + h.alphabet[a] + "\"");
    defined[cell] = true;
    next[cell] = index_of(h.states, row.at("to"), "state");
    if (with_reward) reward[cell] = parse_natural(row.at("reward"), "reward");
  }
  for (std::size_t s = 0; s < h.states.size(); ++s)
    for (std::size_t a = 0; a < h.alphabet.size(); ++a)
      if (!defined[s * h.alphabet.size() + a])
        throw SemanticError("missing transition for state \"" + h.states[s] +
                            "\" symbol \"" + h.alphabet[a] + "\"");
}

SubDist parse_probs(const Json& j, const Header& h, const std::string& where) {
  if (!j.is_array())
    throw SemanticError("\"probs\" must be an array in " + where);
  SubDist dist(h.states.size(), Rational(0));
  std::vector<bool> seen(h.states.size(), false);
  for (const Json& entry : j) {
    if (!entry.is_object())
      throw SemanticError("\"probs\" entries must be objects in " + where);
    expect_fields(entry, {"to", "prob"}, "probability entry of " + where);
    std::size_t t = index_of(h.states, entry.at("to"), "state");
    if (seen[t])
      throw SemanticError("duplicate target \"" + h.states[t] + "\" in " +
                          where);
    seen[t] = true;
    Rational p = parse_rational_field(entry.at("prob"), "prob");
    if (p < 0)
      throw SemanticError("negative probability for target \"" + h.states[t] +
                          "\" in " + where);
    dist[t] = p;
  }
  Rational total = 0;
  for (const Rational& p : dist) total += p;
  if (total > 1)
    throw SemanticError("mass exceeds 1 in " + where + " (total " +
                        format_rational(total) + ")");
  return dist;
}

// Parse of mdp/lmp transition rows: at most one row per (state, symbol);
// missing rows mean the empty subdistribution (and reward 0 for mdp).
void parse_distribution_rows(const Json& rows, const Header& h,
                             bool with_reward, std::vector<SubDist>& trans,
                             std::vector<Rational>& reward) {
  const std::size_t cells = h.states.size() * h.alphabet.size();
  trans.assign(cells, SubDist(h.states.size(), Rational(0)));
  reward.assign(cells, Rational(0));
  std::vector<bool> defined(cells, false);
  if (!rows.is_array())
    throw SemanticError("\"transitions\" must be an array");
  for (const Json& row : rows) {
    if (!row.is_object())
      throw SemanticError("transition entries must be objects");
    if (with_reward)
      expect_fields(row, {"from", "symbol", "reward", "probs"}, "transition");
    else
      expect_fields(row, {"from", "symbol", "probs"}, "transition");
    std::size_t s = index_of(h.states, row.at("from"), "state");
    std::size_t a = index_of(h.alphabet, row.at("symbol"), "symbol");
    std::size_t cell = s * h.alphabet.size() + a;
    if (defined[cell])
      throw SemanticError("duplicate transition row for state \"" +
                          h.states[s] + "\" symbol \"" + h.alphabet[a] + "\"");
    defined[cell] = true;
    const std::string where = "transition of state \"" + h.states[s] +
                              "\" symbol \"" + h.alphabet[a] + "\"";
    trans[cell] = parse_probs(row.at("probs"), h, where);
    if (with_reward) {
      Rational r = parse_rational_field(row.at("reward"), "reward");
      if (r < 0) throw SemanticError("negative reward in " + where);
      reward[cell] = r;
    }
  }
}

}  // namespace

SystemKind kind_of(const SystemDescription& system) {
  return static_cast<SystemKind>(system.index());
}

std::string kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::da: return "da";
    case SystemKind::dawr: return "dawr";
    case SystemKind::ltsr: return "ltsr";
    case SystemKind::mdp: return "mdp";
    case SystemKind::lmp: return "lmp";
  }
  throw Error("unreachable");
}

std::optional<SystemKind> kind_from_name(const std::string& name) {
  for (SystemKind kind : {SystemKind::da, SystemKind::dawr, SystemKind::ltsr,
                          SystemKind::mdp, SystemKind::lmp})
    if (kind_name(kind) == name) return kind;
  return std::nullopt;
}

const std::vector<std::string>& states_of(const SystemDescription& system) {
  return std::visit(
      [](const auto& s) -> const std::vector<std::string>& {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Dawr>)
          return s.automaton.states;
        else
          return s.states;
      },
      system);
}

const std::vector<std::string>& alphabet_of(const SystemDescription& system) {
  return std::visit(
      [](const auto& s) -> const std::vector<std::string>& {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Dawr>)
          return s.automaton.alphabet;
        else
          return s.alphabet;
      },
      system);
}

SystemDescription parse_system(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    throw ParseError(e.what(), line, column);
  }
  if (!doc.is_object())
    throw SemanticError("system document must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string())
    throw SemanticError("missing or non-string \"kind\" field");
  auto kind = kind_from_name(doc.at("kind").get<std::string>());
  if (!kind)
    throw SemanticError("unknown system kind \"" +
                        doc.at("kind").get<std::string>() + "\"");

  const bool has_accepting =
      *kind == SystemKind::da || *kind == SystemKind::dawr;
  if (has_accepting)
    expect_fields(doc, {"kind", "states", "alphabet", "accepting",
                        "transitions"},
                  "system document");
  else
    expect_fields(doc, {"kind", "states", "alphabet", "transitions"},
                  "system document");
  Header h = parse_header(doc);

  switch (*kind) {
    case SystemKind::da: {
      Da da{h.states, h.alphabet, {}, parse_accepting(doc.at("accepting"), h)};
      std::vector<Int> unused;
      parse_deterministic_rows(doc.at("transitions"), h, false, da.next,
                               unused);
      return da;
    }
    case SystemKind::dawr: {
      Dawr dawr;
      dawr.automaton =
          Da{h.states, h.alphabet, {}, parse_accepting(doc.at("accepting"), h)};
      parse_deterministic_rows(doc.at("transitions"), h, true,
                               dawr.automaton.next, dawr.reward);
      return dawr;
    }
    case SystemKind::ltsr: {
      Ltsr lts{h.states, h.alphabet, {}};
      lts.moves.assign(h.states.size() * h.alphabet.size(), {});
      const Json& rows = doc.at("transitions");
      if (!rows.is_array())
        throw SemanticError("\"transitions\" must be an array");
      for (const Json& row : rows) {
        if (!row.is_object())
          throw SemanticError("transition entries must be objects");
        expect_fields(row, {"from", "symbol", "to", "reward"}, "transition");
        std::size_t s = index_of(h.states, row.at("from"), "state");
        std::size_t a = index_of(h.alphabet, row.at("symbol"), "symbol");
        LtsEdge edge{index_of(h.states, row.at("to"), "state"),
                     parse_natural(row.at("reward"), "reward")};
        auto& list = lts.moves[s * h.alphabet.size() + a];
        if (std::find(list.begin(), list.end(), edge) != list.end())
          throw SemanticError("duplicate transition from state \"" +
                              h.states[s] + "\" symbol \"" + h.alphabet[a] +
                              "\" to \"" + h.states[edge.target] + "\"");
        list.push_back(edge);
      }
      for (auto& list : lts.moves) std::sort(list.begin(), list.end());
      return lts;
    }
    case SystemKind::mdp: {
      Mdp mdp{h.states, h.alphabet, {}, {}};
      parse_distribution_rows(doc.at("transitions"), h, true, mdp.trans,
                              mdp.reward);
      return mdp;
    }
    case SystemKind::lmp: {
      Lmp lmp{h.states, h.alphabet, {}};
      std::vector<Rational> unused;
      parse_distribution_rows(doc.at("transitions"), h, false, lmp.trans,
                              unused);
      return lmp;
    }
  }
  throw Error("unreachable");
}

namespace {

OrderedJson header_json(SystemKind kind,
                        const std::vector<std::string>& states,
                        const std::vector<std::string>& alphabet) {
  OrderedJson doc;
  doc["kind"] = kind_name(kind);
  doc["states"] = states;
  doc["alphabet"] = alphabet;
  return doc;
}

std::int64_t natural_to_json(const Int& n) {
  if (n > Int(std::numeric_limits<std::int64_t>::max()))
    throw SemanticError("reward too large for the document format");
  return n.convert_to<std::int64_t>();
}

OrderedJson probs_json(const SubDist& dist,
                       const std::vector<std::string>& states) {
  OrderedJson probs = OrderedJson::array();
  for (std::size_t t = 0; t < dist.size(); ++t) {
    if (dist[t] == 0) continue;
    OrderedJson entry;
    entry["to"] = states[t];
    entry["prob"] = format_rational(dist[t]);
    probs.push_back(entry);
  }
  return probs;
}

bool dist_empty(const SubDist& dist) {
  return std::all_of(dist.begin(), dist.end(),
                     [](const Rational& p) { return p == 0; });
}

}  // namespace

std::string serialize_system(const SystemDescription& system) {
  const SystemKind kind = kind_of(system);
  OrderedJson doc = header_json(kind, states_of(system), alphabet_of(system));
  const std::vector<std::string>& states = states_of(system);
  const std::vector<std::string>& alphabet = alphabet_of(system);

  auto accepting_json = [&](const Da& da) {
    OrderedJson list = OrderedJson::array();
    for (std::size_t s = 0; s < da.size(); ++s)
      if (da.accepting[s]) list.push_back(da.states[s]);
    return list;
  };

  OrderedJson rows = OrderedJson::array();
  switch (kind) {
    case SystemKind::da:
    case SystemKind::dawr: {
      const Da& da = kind == SystemKind::da ? std::get<Da>(system)
                                            : std::get<Dawr>(system).automaton;
      doc["accepting"] = accepting_json(da);
      for (std::size_t s = 0; s < da.size(); ++s)
        for (std::size_t a = 0; a < da.symbol_count(); ++a) {
          OrderedJson row;
          row["from"] = states[s];
          row["symbol"] = alphabet[a];
          row["to"] = states[da.step(s, a)];
          if (kind == SystemKind::dawr)
            row["reward"] =
                natural_to_json(std::get<Dawr>(system).reward_at(s, a));
          rows.push_back(row);
        }
      break;
    }
    case SystemKind::ltsr: {
      const Ltsr& lts = std::get<Ltsr>(system);
      for (std::size_t s = 0; s < lts.size(); ++s)
        for (std::size_t a = 0; a < lts.symbol_count(); ++a)
          for (const LtsEdge& edge : lts.edges(s, a)) {
            OrderedJson row;
            row["from"] = states[s];
            row["symbol"] = alphabet[a];
            row["to"] = states[edge.target];
            row["reward"] = natural_to_json(edge.reward);
            rows.push_back(row);
          }
      break;
    }
    case SystemKind::mdp: {
      const Mdp& mdp = std::get<Mdp>(system);
      for (std::size_t s = 0; s < mdp.size(); ++s)
        for (std::size_t a = 0; a < mdp.symbol_count(); ++a) {
          if (dist_empty(mdp.dist(s, a)) && mdp.reward_at(s, a) == 0) continue;
          OrderedJson row;
          row["from"] = states[s];
          row["symbol"] = alphabet[a];
          row["reward"] = format_rational(mdp.reward_at(s, a));
          row["probs"] = probs_json(mdp.dist(s, a), states);
          rows.push_back(row);
        }
      break;
    }
    case SystemKind::lmp: {
      const Lmp& lmp = std::get<Lmp>(system);
      for (std::size_t s = 0; s < lmp.size(); ++s)
        for (std::size_t a = 0; a < lmp.symbol_count(); ++a) {
          if (dist_empty(lmp.dist(s, a))) continue;
          OrderedJson row;
          row["from"] = states[s];
          row["symbol"] = alphabet[a];
          row["probs"] = probs_json(lmp.dist(s, a), states);
          rows.push_back(row);
        }
      break;
    }
  }
  doc["transitions"] = rows;
  return doc.dump(2) + "\n";
}

namespace {

// Deterministic bounded sampler. std::mt19937_64 output is specified by the
// standard; the distribution classes are not, so bounding is done by hand.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() / bound * bound;
    for (;;) {
      std::uint64_t draw = engine();
      if (draw < limit) return draw % bound;
    }
  }
};

std::vector<std::string> state_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) names.push_back("s" + std::to_string(s));
  return names;
}

std::vector<std::string> symbol_names(std::size_t k) {
  static const std::vector<std::string> pool = {"a", "b", "c", "d"};
  return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)};
}

SubDist random_subdist(Rng& rng, std::size_t n, std::uint64_t max_den) {
  const std::uint64_t den = 1 + rng.below(max_den);
  SubDist dist(n, Rational(0));
  std::uint64_t remaining = den;
  std::size_t support = rng.below(n + 1);
  for (std::size_t k = 0; k < support && remaining > 0; ++k) {
    std::size_t target = rng.below(n);
    std::uint64_t weight = rng.below(remaining + 1);
    remaining -= weight;
    dist[target] += Rational(Int(weight)) / Rational(Int(den));
  }
  return dist;
}

}  // namespace

SystemDescription random_system(SystemKind kind, const SizeParams& params,
                                std::uint64_t seed) {
  if (params.states < 1 || params.states > kMaxStates)
    throw SizeError("states parameter must be in [1, " +
                    std::to_string(kMaxStates) + "]");
  if (params.alphabet > kMaxAlphabet)
    throw SizeError("alphabet parameter must be at most " +
                    std::to_string(kMaxAlphabet));
  if (params.max_reward < 0 || params.max_reward > kMaxReward)
    throw SizeError("max_reward parameter must be in [0, " +
                    std::to_string(kMaxReward) + "]");
  if (params.max_denominator < 1 || params.max_denominator > kMaxDenominator)
    throw SizeError("max_denominator parameter must be in [1, " +
                    std::to_string(kMaxDenominator) + "]");

  Rng rng(seed);
  const std::size_t n = params.states;
  const std::size_t k = params.alphabet;
  const std::uint64_t max_reward = params.max_reward.convert_to<std::uint64_t>();
  const std::uint64_t max_den =
      params.max_denominator.convert_to<std::uint64_t>();

  auto random_da = [&]() {
    Da da{state_names(n), symbol_names(k), {}, {}};
    for (std::size_t s = 0; s < n; ++s)
      da.accepting.push_back(rng.below(2) == 1);
    for (std::size_t cell = 0; cell < n * k; ++cell)
      da.next.push_back(rng.below(n));
    return da;
  };

  switch (kind) {
    case SystemKind::da:
      return random_da();
    case SystemKind::dawr: {
      Dawr dawr{random_da(), {}};
      for (std::size_t cell = 0; cell < n * k; ++cell)
        dawr.reward.push_back(Int(rng.below(max_reward + 1)));
      return dawr;
    }
    case SystemKind::ltsr: {
      Ltsr lts{state_names(n), symbol_names(k), {}};
      lts.moves.assign(n * k, {});
      for (auto& list : lts.moves) {
        std::set<LtsEdge> edges;
        const std::uint64_t count = rng.below(4);
        for (std::uint64_t e = 0; e < count; ++e)
          edges.insert(LtsEdge{rng.below(n), Int(rng.below(max_reward + 1))});
        list.assign(edges.begin(), edges.end());
      }
      return lts;
    }
    case SystemKind::mdp: {
      Mdp mdp{state_names(n), symbol_names(k), {}, {}};
      for (std::size_t cell = 0; cell < n * k; ++cell) {
        const std::uint64_t den = 1 + rng.below(max_den);
        const std::uint64_t num = rng.below(max_reward * den + 1);
        mdp.reward.push_back(Rational(Int(num)) / Rational(Int(den)));
        mdp.trans.push_back(random_subdist(rng, n, max_den));
      }
      return mdp;
    }
    case SystemKind::lmp: {
      Lmp lmp{state_names(n), symbol_names(k), {}};
      for (std::size_t cell = 0; cell < n * k; ++cell)
        lmp.trans.push_back(random_subdist(rng, n, max_den));
      return lmp;
    }
  }
  throw Error("unreachable");
}

}  // namespace gradedsim
