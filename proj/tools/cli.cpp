#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nact/enumerator.hpp"
#include "nact/ledger.hpp"
#include "nact/model.hpp"
#include "nact/prover.hpp"
#include "nact/sa_engine.hpp"
#include "nact/schemata.hpp"
#include "nact/stratifier.hpp"
#include "nact/syntax.hpp"
#include "nact/trace_check.hpp"

namespace nact::cli {

using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t to_count(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty() || v[0] == '-') {
    throw std::invalid_argument(key + ": expected a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(n);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument(key + ": expected true or false, got '" + v + "'");
}

// Usage errors map to exit code 2.
struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

SystemSpec system_of(const Config& cfg) {
  SystemSpec s;
  if (cfg.schemas.empty()) {
    auto p = preset(cfg.system);
    if (!p) throw Usage("unknown system '" + cfg.system + "' (see `nact systems`)");
    s = *p;
  } else {
    s.name = "custom";
    for (const std::string& id : cfg.schemas) {
      auto sid = schema_from_name(id);
      if (!sid) throw Usage("unknown schema '" + id + "'");
      s.active.insert(*sid);
    }
    s.parameter_free_only = cfg.parameter_free_only;
    s.meta_singsa = cfg.meta_singsa;
    s.hnp_gate = cfg.hnp_gate;
  }
  s.gsa_chain_bound = cfg.gsa_chain_bound;
  return s;
}

ProofBudget budget_of(const Config& cfg) {
  ProofBudget b;
  b.max_steps = cfg.max_steps;
  b.max_equality_depth = cfg.max_equality_depth;
  b.max_term_size = cfg.max_term_size;
  if (!b.max_steps || !b.max_equality_depth || !b.max_term_size) {
    throw Usage("budgets must be positive");
  }
  return b;
}

Formula formula_arg(const std::string& text) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw Usage("cannot parse '" + text + "' at offset " + std::to_string(e.offset()) + ": " +
                e.what());
  }
}

std::string schema_list(const SystemSpec& s) {
  std::string out;
  for (SchemaId id : s.active) {
    if (!out.empty()) out += ',';
    out += schema_name(id);
  }
  return out;
}

json status_json(const ProofResult& r) {
  json j;
  j["status"] = status_name(r.status);
  j["steps_used"] = r.steps_used;
  j["uses_singleton_pair"] = r.uses_singleton_pair;
  return j;
}

}  // namespace

void apply_setting(Config& cfg, const std::string& key, const std::string& value) {
  if (key == "system") {
    cfg.system = value;
  } else if (key == "schemas") {
    cfg.schemas.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.schemas.push_back(item);
    }
  } else if (key == "parameter_free_only") {
    cfg.parameter_free_only = to_bool(key, value);
  } else if (key == "gsa_chain_bound") {
    cfg.gsa_chain_bound = static_cast<unsigned>(to_count(key, value));
  } else if (key == "meta_singsa") {
    cfg.meta_singsa = to_bool(key, value);
  } else if (key == "hnp_gate") {
    cfg.hnp_gate = to_bool(key, value);
  } else if (key == "max_steps") {
    cfg.max_steps = to_count(key, value);
  } else if (key == "max_equality_depth") {
    cfg.max_equality_depth = to_count(key, value);
  } else if (key == "max_term_size") {
    cfg.max_term_size = to_count(key, value);
  } else if (key == "count") {
    cfg.count = to_count(key, value);
  } else if (key == "ledger") {
    cfg.ledger = value;
  } else if (key == "format") {
    if (value != "text" && value != "jsonl") throw std::invalid_argument("format: text or jsonl");
    cfg.format = value;
  } else if (key == "epsilon") {
    try {
      cfg.epsilon = std::stod(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("epsilon: expected a number");
    }
  } else if (key == "window") {
    cfg.window = to_count(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void load_config(Config& cfg, std::istream& in) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(n) + ": expected key = value");
    }
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_env(Config& cfg) {
  if (const char* v = std::getenv("NACT_MAX_STEPS")) apply_setting(cfg, "max_steps", v);
  if (const char* v = std::getenv("NACT_LEDGER")) apply_setting(cfg, "ledger", v);
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for set theories with restricted comprehension", "nact"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string config_path;
  app.add_option("--config", config_path, "Config file with key = value lines");

  // flags collected here and applied over the config afterwards
  std::map<std::string, std::string> flags;
  auto setting = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                     const std::string& help) {
    sub->add_option_function<std::string>(
           flag, [&flags, key](const std::string& v) { flags[key] = v; }, help)
        ->type_name("VALUE");
  };
  auto common = [&](CLI::App* sub, bool system, bool budget) {
    if (system) {
      setting(sub, "--system", "system", "System preset (default NACT-PriNSA)");
      setting(sub, "--schemas", "schemas", "Comma-separated schema ids instead of a preset");
      setting(sub, "--gsa-chain-bound", "gsa_chain_bound", "Chain length bound for GSA (2)");
    }
    if (budget) {
      setting(sub, "--max-steps", "max_steps", "Prover step budget (50000)");
      setting(sub, "--max-equality-depth", "max_equality_depth", "Equality chain bound (8)");
      setting(sub, "--max-term-size", "max_term_size", "Largest term in the pool (64)");
    }
    setting(sub, "--format", "format", "text or jsonl (text)");
  };

  Config cfg;
  std::function<int()> action;

  // systems
  auto* systems = app.add_subcommand("systems", "List the system presets");
  common(systems, false, false);
  systems->callback([&] {
    action = [&] {
      for (const SystemSpec& s : presets()) {
        if (cfg.format == "jsonl") {
          json j;
          j["system"] = s.name;
          j["schemas"] = schema_list(s);
          j["parameter_free_only"] = s.parameter_free_only;
          j["meta_singsa"] = s.meta_singsa;
          j["hnp_gate"] = s.hnp_gate;
          j["experimental"] = std::any_of(s.active.begin(), s.active.end(), is_experimental);
          j["choice"] = choice_name(s.choice);
          out << j.dump() << '\n';
        } else {
          out << s.name << ": " << schema_list(s);
          if (s.parameter_free_only) out << " [parameter-free]";
          if (s.meta_singsa) out << " [meta-singsa]";
          if (s.hnp_gate) out << " [hnp gate]";
          if (std::any_of(s.active.begin(), s.active.end(), is_experimental)) out << " [experimental]";
          if (s.choice != ChoiceAxiom::None) out << " [choice " << choice_name(s.choice) << "]";
          out << '\n';
        }
      }
      return 0;
    };
  });

  // enumerate
  std::size_t start = 0;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Print formulas in production order");
  setting(enumerate_cmd, "--count", "count", "How many formulas (100)");
  std::size_t max_len = 0;
  enumerate_cmd->add_option("--start", start, "Index of the first formula (0)");
  enumerate_cmd->add_option("--max-len", max_len, "Stop after formulas of this many nodes (0: no limit)");
  common(enumerate_cmd, false, false);
  enumerate_cmd->callback([&] {
    action = [&] {
      EnumOptions opts;
      opts.max_len = max_len;
      FormulaStream s(opts);
      s.seek(start);
      for (std::size_t i = 0; i < cfg.count; ++i) {
        auto f = s.next();
        if (!f) break;
        if (cfg.format == "jsonl") {
          json j;
          j["index"] = start + i;
          j["formula"] = to_string(*f);
          out << j.dump() << '\n';
        } else {
          out << start + i << '\t' << to_string(*f) << '\n';
        }
      }
      return 0;
    };
  });

  // stratify
  std::string strat_text;
  auto* stratify_cmd = app.add_subcommand("stratify", "Decide NF stratification of a formula");
  stratify_cmd->add_option("formula", strat_text, "Formula")->required();
  common(stratify_cmd, false, false);
  stratify_cmd->callback([&] {
    action = [&] {
      const StratifyResult r = stratify(formula_arg(strat_text));
      if (cfg.format == "jsonl") {
        json j;
        j["formula"] = to_string(formula_arg(strat_text));
        j["renamed"] = to_string(r.renamed);
        j["result"] = r.stratified ? "Stratified" : "Unstratifiable";
        if (r.stratified) {
          json types = json::object();
          for (std::size_t i = 0; i < r.nodes.size(); ++i) types[r.nodes[i].label] = r.types[i];
          j["types"] = types;
        } else {
          json cycle = json::array();
          for (const auto& c : r.cycle) cycle.push_back(c.origin);
          j["cycle"] = cycle;
        }
        out << j.dump() << '\n';
      } else if (r.stratified) {
        out << "Stratified: " << to_string(r.renamed) << ";";
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
          out << ' ' << r.nodes[i].label << ':' << r.types[i];
        }
        out << '\n';
      } else {
        out << "Unstratifiable; cycle:";
        for (const auto& c : r.cycle) out << " [" << c.origin << "]";
        out << '\n';
      }
      return 0;
    };
  });

  // sa
  std::string sa_text;
  bool ko_ru = false;
  auto* sa_cmd = app.add_subcommand("sa", "Classify a formula by self-applicability");
  sa_cmd->add_option("formula", sa_text, "Parameter-free formula in x");
  sa_cmd->add_flag("--ko-ru-table", ko_ru, "Report the Ko(Ru) cases over the four NSA systems");
  common(sa_cmd, true, true);
  sa_cmd->callback([&] {
    action = [&] {
      const ProofBudget budget = budget_of(cfg);
      if (ko_ru) {
        for (const KoRuRow& r : ko_ru_case_table(budget)) {
          if (cfg.format == "jsonl") {
            json j;
            j["system"] = r.system;
            j["member"] = status_name(r.member);
            j["non_member"] = status_name(r.non_member);
            j["set"] = status_name(r.is_set);
            j["claim"] = r.claim;
            j["claim_outcome"] = claim_outcome_name(r.outcome);
            j["set_outcome"] = claim_outcome_name(r.set_outcome);
            out << j.dump() << '\n';
          } else {
            out << r.system << ": in " << status_name(r.member) << ", not in "
                << status_name(r.non_member) << ", set " << status_name(r.is_set) << "; claim '"
                << r.claim << "' " << claim_outcome_name(r.outcome) << ", sethood "
                << claim_outcome_name(r.set_outcome) << '\n';
          }
        }
        return 0;
      }
      if (sa_text.empty()) throw Usage("sa needs a formula or --ko-ru-table");
      const Formula a = formula_arg(sa_text);
      const SystemSpec sys = system_of(cfg);
      json j;
      j["formula"] = to_string(a);
      j["system"] = sys.name;
      try {
        const Verdict v = classify_sa(a, sys, budget);
        j["verdict"] = verdict_name(v.kind);
        j["steps_used"] = v.steps_used;
        json attempts = json::array();
        for (const Attempt& at : v.attempts) {
          json x;
          x["goal"] = at.name;
          x["status"] = status_name(at.status);
          x["steps_used"] = at.steps_used;
          attempts.push_back(x);
        }
        j["attempts"] = attempts;
        if (v.evidence) j["evidence_steps"] = v.evidence->trace.size();
      } catch (const SideConditionViolated& e) {
        j["verdict"] = "SideConditionViolated";
        j["reason"] = e.what();
      }
      if (cfg.format == "jsonl") {
        out << j.dump() << '\n';
      } else {
        out << j["verdict"].get<std::string>();
        if (j.contains("attempts")) {
          for (const auto& x : j["attempts"]) {
            out << " [" << x["goal"].get<std::string>() << ": " << x["status"].get<std::string>()
                << " in " << x["steps_used"].get<std::size_t>() << "]";
          }
        }
        if (j.contains("reason")) out << " (" << j["reason"].get<std::string>() << ")";
        out << '\n';
      }
      return 0;
    };
  });

  // prove
  std::vector<std::string> axiom_texts;
  std::string goal_text = "false";
  std::string trace_path;
  auto* prove_cmd = app.add_subcommand("prove", "Budgeted proof search for axioms |- goal");
  prove_cmd->add_option("--axiom", axiom_texts, "Axiom (repeatable)");
  prove_cmd->add_option("--goal", goal_text, "Goal formula (false)");
  prove_cmd->add_option("--trace", trace_path, "Write the trace, one step per line");
  common(prove_cmd, false, true);
  prove_cmd->callback([&] {
    action = [&] {
      std::vector<Formula> axioms;
      for (const auto& t : axiom_texts) axioms.push_back(formula_arg(t));
      const Formula goal = formula_arg(goal_text);
      const ProofResult r = prove(axioms, goal, budget_of(cfg));
      std::string checked = "n/a";
      if (r.proved) checked = check_trace(axioms, *r.proved, r.trace).ok ? "ok" : "FAILED";
      if (!trace_path.empty()) {
        std::ofstream t(trace_path);
        if (!t) {
          err << "nact: cannot write " << trace_path << '\n';
          return 1;
        }
        t << trace_to_text(r.trace);
      }
      if (cfg.format == "jsonl") {
        json j = status_json(r);
        j["goal"] = to_string(goal);
        j["trace_check"] = checked;
        out << j.dump() << '\n';
      } else {
        out << status_name(r.status) << " in " << r.steps_used << " steps";
        if (r.proved) out << "; proves " << to_string(*r.proved) << "; trace check " << checked;
        if (r.uses_singleton_pair) out << "; uses singleton/pair sethood";
        out << '\n';
      }
      return checked == "FAILED" ? 1 : 0;
    };
  });

  // model-check
  unsigned max_size = 2;
  std::string model_text, report_path;
  bool trichotomy = false;
  auto* model_cmd = app.add_subcommand("model-check", "Exhaustive finite model search");
  model_cmd->add_option("--max-size", max_size, "Largest universe, at most 4 (2)");
  model_cmd->add_option("--model", model_text, "Check one model given as n:row/row...");
  model_cmd->add_option("--report", report_path, "Also write jsonl records to this file");
  model_cmd->add_flag("--trichotomy", trichotomy, "Check the size trichotomy on all models");
  common(model_cmd, true, false);
  model_cmd->callback([&] {
    action = [&]() -> int {
      std::ofstream report;
      if (!report_path.empty()) {
        report.open(report_path);
        if (!report) {
          err << "nact: cannot write " << report_path << '\n';
          return 1;
        }
      }
      auto emit = [&](const json& j, const std::string& text) {
        if (cfg.format == "jsonl") {
          out << j.dump() << '\n';
        } else {
          out << text << '\n';
        }
        if (report.is_open()) report << j.dump() << '\n';
      };
      if (trichotomy) {
        if (max_size < 1 || max_size > 4) throw Usage("--max-size must be 1..4");
        for (unsigned n = 1; n <= max_size; ++n) {
          std::size_t models = 0, bad = 0;
          PathoReport total;
          for (const FiniteModel& m : all_models(n)) {
            ++models;
            bad += trichotomy_violations(m);
            const PathoReport p = patho_report(m);
            total.proper += p.proper;
            total.proper_described += p.proper_described;
            total.medium_nc += p.medium_nc;
            total.described_not_proper += p.described_not_proper;
          }
          json j;
          j["size"] = n;
          j["models"] = models;
          j["violations"] = bad;
          j["proper_classes"] = total.proper;
          j["proper_medium_with_set_complement"] = total.proper_described;
          j["medium_nc"] = total.medium_nc;
          std::ostringstream t;
          t << "n=" << n << ": " << models << " models, " << bad << " trichotomy violations; "
            << total.proper << " proper classes, " << total.proper_described
            << " of them Medium with a set complement; " << total.medium_nc << " MediumNC";
          emit(j, t.str());
        }
        return 0;
      }
      const SystemSpec sys = system_of(cfg);
      auto describe = [&](const FiniteModel& m) {
        const SystemCheck c = check_system(m, sys);
        json j;
        j["model"] = m.to_text();
        j["system"] = sys.name;
        j["holds"] = c.holds;
        json ce = json::array();
        for (const Violation& v : c.counterexamples) {
          json x;
          x["schema"] = schema_name(v.schema);
          x["class"] = v.cls;
          ce.push_back(x);
        }
        j["counterexamples"] = ce;
        j["partial"] = c.partial;
        std::string t = m.to_text() + (c.holds ? " satisfies " : " violates ") + sys.name;
        for (const Violation& v : c.counterexamples) {
          t += " [" + std::string(schema_name(v.schema)) + " at class " + std::to_string(v.cls) +
               "]";
        }
        for (const std::string& p : c.partial) t += " (" + p + ")";
        emit(j, t);
      };
      if (!model_text.empty()) {
        FiniteModel m;
        try {
          m = FiniteModel::from_text(model_text);
        } catch (const std::invalid_argument& e) {
          throw Usage(e.what());
        }
        describe(m);
        return 0;
      }
      if (max_size < 1 || max_size > 4) throw Usage("--max-size must be 1..4");
      const auto found = search_models(max_size, sys);
      for (const FiniteModel& m : found) describe(m);
      json j;
      j["system"] = sys.name;
      j["max_size"] = max_size;
      j["models_found"] = found.size();
      emit(j, std::to_string(found.size()) + " models of " + sys.name + " up to size " +
                  std::to_string(max_size));
      return 0;
    };
  });

  // run
  auto* run_cmd = app.add_subcommand("run", "Classify the enumeration into a ledger");
  setting(run_cmd, "--count", "count", "How many formulas (100)");
  setting(run_cmd, "--ledger", "ledger", "Ledger file; resumed when it exists");
  common(run_cmd, true, true);
  run_cmd->callback([&] {
    action = [&] {
      std::optional<std::string> path;
      if (!cfg.ledger.empty()) path = cfg.ledger;
      if (cfg.count == 0) throw Usage("--count must be at least 1");
      const LedgerReport r = run_ledger(system_of(cfg), cfg.count, budget_of(cfg), path);
      const Degree d = degree(r, {cfg.epsilon, std::max<std::size_t>(1, cfg.window)});
      json j;
      j["system"] = r.system;
      j["enumerated"] = r.enumerated;
      j["classified"] = r.classified;
      j["skipped"] = r.skipped;
      j["counts"] = r.counts;
      j["withdrawn"] = r.withdrawals.size();
      j["degree"] = d.final_estimate;
      j["cursor"] = r.cursor;
      if (cfg.format == "jsonl") {
        out << j.dump() << '\n';
      } else {
        out << r.system << ": " << r.enumerated << " formulas, " << r.classified
            << " classified, " << r.skipped << " quarantined, " << r.withdrawals.size()
            << " withdrawn facts\n";
        for (const auto& [k, v] : r.counts) out << "  " << k << ' ' << v << '\n';
        out << "  inconsistency ratio " << d.final_estimate << '\n';
      }
      return 0;
    };
  });

  // degree
  auto* degree_cmd = app.add_subcommand("degree", "Inconsistency ratio series of a ledger");
  setting(degree_cmd, "--ledger", "ledger", "Ledger file");
  setting(degree_cmd, "--epsilon", "epsilon", "Nearly-consistent threshold (0.001)");
  setting(degree_cmd, "--window", "window", "Tail window length (100)");
  common(degree_cmd, false, false);
  degree_cmd->callback([&] {
    action = [&] {
      if (cfg.ledger.empty()) throw Usage("degree needs --ledger");
      if (cfg.window == 0) throw Usage("--window must be positive");
      const LedgerReport r = load_ledger(cfg.ledger);
      if (r.records.empty()) throw Usage("ledger has no records");
      const Degree d = degree(r, {cfg.epsilon, cfg.window});
      if (cfg.format == "jsonl") {
        for (std::size_t k = 0; k < d.series.size(); ++k) {
          json j;
          j["k"] = k + 1;
          j["ratio"] = d.series[k];
          out << j.dump() << '\n';
        }
        json j;
        j["final"] = d.final_estimate;
        j["tail_average"] = d.tail_average;
        j["nearly_consistent"] = d.nearly_consistent;
        j["hypothesis"] = d.hypothesis;
        out << j.dump() << '\n';
      } else {
        out << "formulas " << d.series.size() << "\nfinal ratio " << d.final_estimate
            << "\ntail average " << d.tail_average << " over " << std::min(cfg.window, d.series.size())
            << "\nnearly consistent " << (d.nearly_consistent ? "yes" : "no") << '\n'
            << d.hypothesis << '\n';
      }
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    try {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw Usage("cannot read config " + config_path);
        load_config(cfg, in);
      }
      apply_env(cfg);
      for (const auto& [k, v] : flags) apply_setting(cfg, k, v);
    } catch (const Usage&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw Usage(e.what());
    }
    return action();
  } catch (const Usage& e) {
    err << "nact: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const std::exception& e) {
    err << "nact: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nact::cli
