#include "gradedsim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "gradedsim/dawr.hpp"
#include "gradedsim/documents.hpp"
#include "gradedsim/glue.hpp"
#include "gradedsim/lmp.hpp"
#include "gradedsim/ltsr.hpp"
#include "gradedsim/mdp.hpp"

namespace gradedsim {

namespace {

using OrderedJson = nlohmann::ordered_json;

struct Options {
  std::string format = "table";
  std::size_t max_iter = 64;
  std::string widening = "inf";
  bool quiet = false;
};

FixpointConfig fixpoint_config(const Options& options) {
  FixpointConfig config;
  config.iteration_cap = options.max_iter;
  config.on_cap = FixpointConfig::OnCap::report_partial;
  if (options.widening != "inf")
    config.widening_bound = Grade(parse_rational(options.widening));
  return config;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SemanticError("cannot read file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SystemDescription load_system(const std::string& path) {
  return parse_system(read_file(path));
}

void require_same_states(const std::vector<std::string>& document,
                         const SystemDescription& system, const char* what) {
  if (document != states_of(system))
    throw SemanticError(std::string(what) +
                        " document states do not match the system's states");
}

// ---- payload rendering ----------------------------------------------------

std::string grade_cell(const Grade& g, const GradeDomain& domain, bool table) {
  if (g.is_infinite()) return table ? "∞" : "inf";
  if (domain.kind() == GradeDomain::Kind::nat)
    return numerator(g.value()).str();
  return format_rational(g.value());
}

std::string grid_text(const std::vector<std::string>& names,
                      const std::function<std::string(std::size_t,
                                                      std::size_t)>& cell) {
  const std::size_t n = names.size();
  std::vector<std::size_t> width(n + 1, 0);
  for (const std::string& name : names)
    width[0] = std::max(width[0], name.size());
  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
  for (std::size_t j = 0; j < n; ++j) {
    width[j + 1] = names[j].size();
    for (std::size_t i = 0; i < n; ++i) {
      cells[i][j] = cell(i, j);
      // Count display width, not bytes, so the infinity sign lines up.
      std::size_t glyphs = 0;
      for (char c : cells[i][j])
        if ((c & 0xc0) != 0x80) ++glyphs;
      width[j + 1] = std::max(width[j + 1], glyphs);
    }
  }
  auto pad = [](const std::string& text, std::size_t to) {
    std::size_t glyphs = 0;
    for (char c : text)
      if ((c & 0xc0) != 0x80) ++glyphs;
    return text + std::string(to > glyphs ? to - glyphs : 0, ' ');
  };
  std::string out = pad("", width[0]);
  for (std::size_t j = 0; j < n; ++j) out += "  " + pad(names[j], width[j + 1]);
  out += "\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += pad(names[i], width[0]);
    for (std::size_t j = 0; j < n; ++j)
      out += "  " + pad(cells[i][j], width[j + 1]);
    out += "\n";
  }
  return out;
}

OrderedJson relation_payload(const NamedRelation& value) {
  return OrderedJson::parse(serialize_relation_document(value));
}

OrderedJson grades_payload(const NamedMatrix& value) {
  return OrderedJson::parse(serialize_grades_document(value));
}

OrderedJson metric_payload(const NamedMetric& value) {
  return OrderedJson::parse(serialize_metric_document(value));
}

std::string relation_table(const NamedRelation& value) {
  return grid_text(value.states, [&](std::size_t i, std::size_t j) {
    return value.relation.contains(i, j) ? std::string("x") : std::string(".");
  });
}

std::string grades_table(const NamedMatrix& value) {
  return grid_text(value.states, [&](std::size_t i, std::size_t j) {
    return grade_cell(value.matrix.at(i, j), value.matrix.domain(), true);
  });
}

std::string metric_table(const NamedMetric& value) {
  return grid_text(value.states, [&](std::size_t i, std::size_t j) {
    return format_rational(value.metric.at(i, j));
  });
}

OrderedJson witness_payload(const Witness& w,
                            const std::vector<std::string>& names) {
  OrderedJson payload;
  payload["kind"] = "witness";
  payload["pair"] = {names[w.pair.first], names[w.pair.second]};
  payload["clause"] = witness_kind_name(w.kind);
  if (w.symbol) payload["symbol"] = *w.symbol;
  payload["detail"] = w.detail;
  return payload;
}

std::string witness_table(const Witness& w,
                          const std::vector<std::string>& names) {
  std::string out = "witness: pair (\"" + names[w.pair.first] + "\", \"" +
                    names[w.pair.second] + "\"), clause " +
                    witness_kind_name(w.kind);
  if (w.symbol) out += ", symbol \"" + *w.symbol + "\"";
  return out + "\n  " + w.detail + "\n";
}

OrderedJson word_payload(const std::vector<std::size_t>& word,
                         const std::vector<std::string>& alphabet) {
  OrderedJson symbols = OrderedJson::array();
  for (std::size_t sym : word) symbols.push_back(alphabet[sym]);
  return OrderedJson{{"kind", "word"}, {"symbols", std::move(symbols)}};
}

std::string word_table(const std::vector<std::size_t>& word,
                       const std::vector<std::string>& alphabet) {
  if (word.empty()) return "word: (empty)\n";
  std::string out = "word:";
  for (std::size_t sym : word) out += " " + alphabet[sym];
  return out + "\n";
}

// ---- report ---------------------------------------------------------------

struct Report {
  std::string command;
  std::optional<OrderedJson> system;  // kind/states/alphabet/hash summary
  std::string verdict;                // holds | fails | done | cap
  OrderedJson payload;
  std::string table;
  int exit_code = 0;
};

OrderedJson system_summary(const SystemDescription& system) {
  OrderedJson summary;
  summary["kind"] = kind_name(kind_of(system));
  summary["states"] = states_of(system).size();
  summary["alphabet"] = alphabet_of(system).size();
  summary["hash"] = document_hash(serialize_system(system));
  return summary;
}

int emit(const Report& report, const Options& options, std::ostream& out,
         std::chrono::steady_clock::time_point started) {
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  if (options.quiet) return report.exit_code;
  if (options.format == "json") {
    OrderedJson doc;
    doc["command"] = report.command;
    if (report.system) doc["system"] = *report.system;
    doc["verdict"] = report.verdict;
    doc["payload"] = report.payload;
    doc["elapsed_ms"] = elapsed;
    out << doc.dump(2) << "\n";
  } else {
    if (report.system)
      out << "system: " << (*report.system)["kind"].get<std::string>()
          << ", " << (*report.system)["states"] << " states, "
          << (*report.system)["alphabet"] << " symbols, hash "
          << (*report.system)["hash"].get<std::string>() << "\n";
    out << "verdict: " << report.verdict << "\n";
    if (!report.table.empty()) out << report.table;
    out << "elapsed: " << elapsed << " ms\n";
  }
  return report.exit_code;
}

// ---- check ----------------------------------------------------------------

Report run_check(const SystemDescription& system, const std::string& relation_path,
                 const std::string& graded_path) {
  Report report;
  report.system = system_summary(system);
  const std::vector<std::string>& names = states_of(system);
  CheckResult witness;
  if (!graded_path.empty()) {
    NamedMatrix graded = parse_grades_document(read_file(graded_path));
    require_same_states(graded.states, system, "grades");
    witness = check_graded_simulation(system, graded.matrix);
  } else if (kind_of(system) == SystemKind::lmp) {
    NamedMetric metric = parse_metric_document(read_file(relation_path));
    require_same_states(metric.states, system, "metric");
    witness = check_ungraded_simulation(system, UngradedPart(metric.metric));
  } else {
    NamedRelation relation = parse_relation_document(read_file(relation_path));
    require_same_states(relation.states, system, "relation");
    witness = check_ungraded_simulation(system, UngradedPart(relation.relation));
  }
  if (witness) {
    report.verdict = "fails";
    report.exit_code = 1;
    report.payload = witness_payload(*witness, names);
    report.table = witness_table(*witness, names);
  } else {
    report.verdict = "holds";
    report.payload = OrderedJson::object();
  }
  return report;
}

// ---- similarity -----------------------------------------------------------

Report run_similarity(const SystemDescription& system, bool graded,
                      const Options& options) {
  Report report;
  report.system = system_summary(system);
  report.verdict = "done";
  const std::vector<std::string>& names = states_of(system);
  SystemKind kind = kind_of(system);
  if (graded) {
    switch (kind) {
      case SystemKind::dawr: {
        NamedMatrix value{names, dawr_graded_similarity(std::get<Dawr>(system))};
        report.payload = grades_payload(value);
        report.table = grades_table(value);
        return report;
      }
      case SystemKind::ltsr: {
        NamedMatrix value{names,
                          lts_amortised_bisimilarity(std::get<Ltsr>(system))};
        report.payload = grades_payload(value);
        report.table = grades_table(value);
        return report;
      }
      case SystemKind::lmp: {
        auto outcome =
            graded_bisimilarity(std::get<Lmp>(system), fixpoint_config(options));
        NamedMatrix value{names, outcome.value};
        report.payload = grades_payload(value);
        report.table = grades_table(value);
        if (!outcome.converged) {
          report.verdict = "cap";
          report.exit_code = 3;
        }
        return report;
      }
      case SystemKind::da:
        throw SemanticError("deterministic automata have no graded "
                            "similarity; attach rewards (kind dawr) first");
      case SystemKind::mdp:
        throw SemanticError("graded similarity is not provided for Markov "
                            "decision processes (check-only)");
    }
    throw Error("unreachable");
  }
  switch (kind) {
    case SystemKind::da:
    case SystemKind::dawr: {
      const Da& a = kind == SystemKind::da ? std::get<Da>(system)
                                           : std::get<Dawr>(system).automaton;
      NamedRelation value{names, da_similarity(a)};
      report.payload = relation_payload(value);
      report.table = relation_table(value);
      return report;
    }
    case SystemKind::ltsr: {
      NamedRelation value{names, lts_bisimilarity(std::get<Ltsr>(system))};
      report.payload = relation_payload(value);
      report.table = relation_table(value);
      return report;
    }
    case SystemKind::mdp: {
      NamedRelation value{names, mdp_similarity(std::get<Mdp>(system))};
      report.payload = relation_payload(value);
      report.table = relation_table(value);
      return report;
    }
    case SystemKind::lmp: {
      auto outcome =
          metric_bisimilarity(std::get<Lmp>(system), fixpoint_config(options));
      NamedMetric value{names, outcome.value};
      report.payload = metric_payload(value);
      report.table = metric_table(value);
      if (!outcome.converged) {
        report.verdict = "cap";
        report.exit_code = 3;
      }
      return report;
    }
  }
  throw Error("unreachable");
}

// ---- collapse / closure / galois -------------------------------------------

Report run_collapse(const SystemDescription& system,
                    const std::string& graded_path) {
  Report report;
  report.system = system_summary(system);
  report.verdict = "done";
  NamedMatrix graded = parse_grades_document(read_file(graded_path));
  require_same_states(graded.states, system, "grades");
  UngradedPart part = ungraded_collapse(system, graded.matrix);
  if (const Relation* relation = std::get_if<Relation>(&part)) {
    NamedRelation value{graded.states, *relation};
    report.payload = relation_payload(value);
    report.table = relation_table(value);
  } else {
    NamedMetric value{graded.states, std::get<Pseudometric>(part)};
    report.payload = metric_payload(value);
    report.table = metric_table(value);
  }
  return report;
}

Report run_closure(const std::string& graded_path) {
  Report report;
  report.verdict = "done";
  NamedMatrix graded = parse_grades_document(read_file(graded_path));
  NamedMatrix value{graded.states, lax_monoidal_closure(graded.matrix)};
  report.payload = grades_payload(value);
  report.table = grades_table(value);
  return report;
}

Report run_galois(const std::string& direction, const std::string& path) {
  Report report;
  report.verdict = "done";
  if (direction == "L") {
    NamedMatrix matrix = parse_grades_document(read_file(path));
    NamedMetric value{matrix.states, galois_L(matrix.matrix)};
    report.payload = metric_payload(value);
    report.table = metric_table(value);
    return report;
  }
  NamedMetric metric = parse_metric_document(read_file(path));
  NamedMatrix value{metric.states, galois_R(metric.metric)};
  report.payload = grades_payload(value);
  report.table = grades_table(value);
  return report;
}

// ---- glue -------------------------------------------------------------------

OrderedJson ungraded_payload(const std::vector<std::string>& states,
                             const UngradedPart& part) {
  if (const Relation* relation = std::get_if<Relation>(&part))
    return relation_payload(NamedRelation{states, *relation});
  return metric_payload(NamedMetric{states, std::get<Pseudometric>(part)});
}

std::string ungraded_table(const std::vector<std::string>& states,
                           const UngradedPart& part) {
  if (const Relation* relation = std::get_if<Relation>(&part))
    return relation_table(NamedRelation{states, *relation});
  return metric_table(NamedMetric{states, std::get<Pseudometric>(part)});
}

Report run_glue(const SystemDescription& system, const std::string& graded_path,
                const std::string& ungraded_path) {
  Report report;
  report.system = system_summary(system);
  const std::vector<std::string>& names = states_of(system);
  NamedMatrix graded = parse_grades_document(read_file(graded_path));
  require_same_states(graded.states, system, "grades");
  std::optional<UngradedPart> ungraded;
  if (!ungraded_path.empty()) {
    if (kind_of(system) == SystemKind::lmp) {
      NamedMetric metric = parse_metric_document(read_file(ungraded_path));
      require_same_states(metric.states, system, "metric");
      ungraded = UngradedPart(metric.metric);
    } else {
      NamedRelation relation =
          parse_relation_document(read_file(ungraded_path));
      require_same_states(relation.states, system, "relation");
      ungraded = UngradedPart(relation.relation);
    }
  }
  try {
    GluedSimulation glued =
        ungraded ? glue(system, graded.matrix, *ungraded)
                 : glued_from_graded(system, graded.matrix);
    report.verdict = "holds";
    OrderedJson payload;
    payload["kind"] = "glued";
    payload["system_hash"] = document_hash(serialize_system(system));
    payload["graded"] = grades_payload(NamedMatrix{names, glued.graded});
    payload["ungraded"] = ungraded_payload(names, glued.ungraded);
    report.payload = std::move(payload);
    report.table = grades_table(NamedMatrix{names, glued.graded}) +
                   ungraded_table(names, glued.ungraded);
  } catch (const PreconditionError& e) {
    report.verdict = "fails";
    report.exit_code = 1;
    report.payload = OrderedJson{{"kind", "failure"}, {"detail", e.what()}};
    report.table = std::string("failure: ") + e.what() + "\n";
  }
  return report;
}

// ---- lang-check --------------------------------------------------------------

Report run_lang_check(const SystemDescription& system) {
  Report report;
  report.system = system_summary(system);
  const Da* a = std::get_if<Da>(&system);
  if (!a && kind_of(system) == SystemKind::dawr)
    a = &std::get<Dawr>(system).automaton;
  if (!a)
    throw SemanticError("language check needs a deterministic automaton "
                        "(kind da or dawr)");
  if (auto word = final_language_check(*a)) {
    report.verdict = "fails";
    report.exit_code = 1;
    report.payload = word_payload(*word, a->alphabet);
    report.table = word_table(*word, a->alphabet);
  } else {
    report.verdict = "holds";
    report.payload = OrderedJson::object();
  }
  return report;
}

// ---- corpus -------------------------------------------------------------------

std::string battery_failure(const SystemDescription& system);

Report run_corpus(SystemKind kind, std::size_t count, std::uint64_t seed,
                  const Options& options) {
  Report report;
  report.verdict = "holds";
  OrderedJson results = OrderedJson::array();
  std::string table;
  std::size_t passed = 0;
  SizeParams params;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t system_seed = seed + i;
    SystemDescription system = random_system(kind, params, system_seed);
    std::string failure = battery_failure(system);
    if (failure.empty()) ++passed;
    OrderedJson entry;
    entry["seed"] = system_seed;
    entry["ok"] = failure.empty();
    if (!failure.empty()) entry["detail"] = failure;
    results.push_back(std::move(entry));
    table += "seed " + std::to_string(system_seed) + ": " +
             (failure.empty() ? "ok" : "FAIL " + failure) + "\n";
  }
  table += std::to_string(passed) + "/" + std::to_string(count) + " ok\n";
  report.payload = OrderedJson{{"kind", "corpus"},
                               {"system_kind", kind_name(kind)},
                               {"results", std::move(results)},
                               {"passed", passed},
                               {"total", count}};
  report.table = std::move(table);
  if (passed != count) {
    report.verdict = "fails";
    report.exit_code = 1;
  }
  (void)options;
  return report;
}

// Builds a checkable graded matrix for a Markov decision process from its
// ungraded similarity: seed each related pair with the least grade its
// reward clause allows, then knock out pairs the successor clause rejects
// until the checker passes. Terminates: every round erases one pair.
MinGradeMatrix shrink_mdp_matrix(const Mdp& m, const Relation& similar) {
  const std::size_t n = m.size();
  MinGradeMatrix g(GradeDomain::nonneg_rational(), n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (!similar.contains(s, t)) continue;
      Rational need = 0;
      for (std::size_t sym = 0; sym < m.symbol_count(); ++sym)
        need = std::max(need, m.reward_at(s, sym) - m.reward_at(t, sym));
      g.set(s, t, Grade(need));
    }
  for (std::size_t round = 0; round <= n * n; ++round) {
    auto witness = check_mdp_graded_simulation(m, g);
    if (!witness) return g;
    g.set(witness->pair.first, witness->pair.second, Grade::infinity());
  }
  throw Error("matrix shrinking did not terminate");
}

std::string battery_failure(const SystemDescription& system) {
  try {
    if (!(parse_system(serialize_system(system)) == system))
      return "serialization round-trip changed the system";
    switch (kind_of(system)) {
      case SystemKind::da: {
        const Da& a = std::get<Da>(system);
        Relation similar = da_similarity(a);
        if (auto w = check_da_simulation(a, similar))
          return "similarity fails its checker: " + w->detail;
        if (check_da_simulation(a, Relation(a.size())))
          return "empty relation rejected";
        if (final_language_check(a))
          return "similarity disagrees with bounded language equality";
        return "";
      }
      case SystemKind::dawr: {
        const Dawr& a = std::get<Dawr>(system);
        MinGradeMatrix graded = dawr_graded_similarity(a);
        if (auto w = check_dawr_graded_simulation(a, graded))
          return "graded similarity fails its checker: " + w->detail;
        glued_from_graded(system, graded);
        if (!collapse(graded).subset_of(da_similarity(a.automaton)))
          return "collapse exceeds the ungraded similarity";
        return "";
      }
      case SystemKind::ltsr: {
        const Ltsr& l = std::get<Ltsr>(system);
        MinGradeMatrix graded = lts_amortised_bisimilarity(l);
        if (auto w = check_lts_amortised_bisimulation(l, graded))
          return "amortised similarity fails its checker: " + w->detail;
        glued_from_graded(system, graded);
        if (!collapse(graded).subset_of(lts_bisimilarity(l)))
          return "collapse exceeds the ungraded bisimilarity";
        return "";
      }
      case SystemKind::mdp: {
        const Mdp& m = std::get<Mdp>(system);
        Relation similar = mdp_similarity(m);
        if (auto w = check_mdp_simulation(m, similar))
          return "similarity fails its checker: " + w->detail;
        for (std::size_t s = 0; s < m.size(); ++s)
          for (std::size_t t = 0; t < m.size(); ++t)
            for (std::size_t sym = 0; sym < m.symbol_count(); ++sym) {
              bool flow = !flow_dominance(m.dist(s, sym), m.dist(t, sym),
                                          similar)
                               .has_value();
              bool subset = !subset_dominance(m.dist(s, sym), m.dist(t, sym),
                                              similar)
                                 .has_value();
              if (flow != subset) return "flow and subset dominance disagree";
            }
        MinGradeMatrix graded = shrink_mdp_matrix(m, similar);
        glued_from_graded(system, graded);
        return "";
      }
      case SystemKind::lmp: {
        const Lmp& l = std::get<Lmp>(system);
        FixpointConfig config;
        auto metric = metric_bisimilarity(l, config);
        if (!metric.converged) return "metric fixpoint hit the cap";
        if (auto w = check_metric_bisimulation(l, metric.value))
          return "metric bisimilarity fails its checker: " + w->detail;
        auto graded = graded_bisimilarity(l, config);
        if (!(graded.value == galois_R(metric.value)))
          return "graded and metric bisimilarity disagree";
        if (!(galois_L(graded.value) == metric.value))
          return "left Galois map does not invert the right one";
        glued_from_graded(system, graded.value);
        return "";
      }
    }
    return "unknown kind";
  } catch (const Error& e) {
    return std::string("error: ") + e.what();
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  auto started = std::chrono::steady_clock::now();
  CLI::App app{"graded and ungraded simulations on finite systems"};
  app.require_subcommand(1);
  Options options;
  app.add_option("--format", options.format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  app.add_option("--max-iter", options.max_iter,
                 "iteration cap for metric fixpoints")
      ->capture_default_str();
  app.add_option("--widening", options.widening,
                 "divergence threshold for nat fixpoints (\"inf\" or a "
                 "number)")
      ->capture_default_str();
  app.add_flag("--quiet", options.quiet, "suppress output, use exit codes");

  std::string system_path, relation_path, graded_path, ungraded_path;
  std::string galois_direction, corpus_kind = "dawr";
  std::size_t corpus_count = 20;
  std::uint64_t corpus_seed = 1;
  bool graded_similarity = false;

  CLI::App* check = app.add_subcommand("check", "check a simulation");
  check->add_option("system", system_path)->required();
  CLI::Option* check_relation =
      check->add_option("--relation", relation_path,
                        "relation (metric for lmp) document");
  CLI::Option* check_graded =
      check->add_option("--graded", graded_path, "min-grade matrix document");
  check_relation->excludes(check_graded);

  CLI::App* similarity =
      app.add_subcommand("similarity", "compute the coarsest simulation");
  similarity->add_option("system", system_path)->required();
  similarity->add_flag("--graded", graded_similarity,
                       "graded instead of ungraded");

  CLI::App* collapse_cmd =
      app.add_subcommand("collapse", "union of all slices of a matrix");
  collapse_cmd->add_option("system", system_path)->required();
  collapse_cmd->add_option("--graded", graded_path)->required();

  CLI::App* closure_cmd =
      app.add_subcommand("closure", "lax monoidal closure of a matrix");
  closure_cmd->add_option("--graded", graded_path)->required();

  CLI::App* galois =
      app.add_subcommand("galois", "convert between matrices and metrics");
  galois->add_option("direction", galois_direction)
      ->required()
      ->check(CLI::IsMember({"L", "R"}));
  galois->add_option("file", relation_path)->required();

  CLI::App* glue_cmd =
      app.add_subcommand("glue", "validate a graded/ungraded pair");
  glue_cmd->add_option("system", system_path)->required();
  glue_cmd->add_option("--graded", graded_path)->required();
  glue_cmd->add_option("--ungraded", ungraded_path,
                       "defaults to the collapse of the graded part");

  CLI::App* lang =
      app.add_subcommand("lang-check", "similarity vs language equality");
  lang->add_option("system", system_path)->required();

  CLI::App* corpus =
      app.add_subcommand("corpus", "property suite on random systems");
  corpus->add_option("--kind", corpus_kind)
      ->check(CLI::IsMember({"da", "dawr", "ltsr", "mdp", "lmp"}));
  corpus->add_option("--count", corpus_count);
  corpus->add_option("--seed", corpus_seed);

  // Let --format and friends appear after the subcommand as well.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("gradedsim");
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  std::string command;
  for (const std::string& arg : args) command += (command.empty() ? "" : " ") + arg;

  try {
    Report report;
    if (*check) {
      if (relation_path.empty() == graded_path.empty())
        throw SemanticError(
            "check needs exactly one of --relation and --graded");
      report = run_check(load_system(system_path), relation_path, graded_path);
    } else if (*similarity) {
      report = run_similarity(load_system(system_path), graded_similarity,
                              options);
    } else if (*collapse_cmd) {
      report = run_collapse(load_system(system_path), graded_path);
    } else if (*closure_cmd) {
      report = run_closure(graded_path);
    } else if (*galois) {
      report = run_galois(galois_direction, relation_path);
    } else if (*glue_cmd) {
      report = run_glue(load_system(system_path), graded_path, ungraded_path);
    } else if (*lang) {
      report = run_lang_check(load_system(system_path));
    } else {
      if (const char* env = std::getenv("GRADEDSIM_SEED"))
        corpus_seed = std::strtoull(env, nullptr, 10);
      report = run_corpus(*kind_from_name(corpus_kind), corpus_count,
                          corpus_seed, options);
    }
    report.command = command;
    return emit(report, options, out, started);
  } catch (const FixpointCapError& e) {
    err << "fixpoint cap: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gradedsim
