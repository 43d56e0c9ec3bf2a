#include "nact/ledger.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nact/enumerator.hpp"
#include "nact/syntax.hpp"

namespace nact {

using json = nlohmann::ordered_json;

namespace {

// FNV-1a; the chain field makes edits and truncation visible on resume.
std::string chain_hash(const std::string& prev, const std::string& line) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  feed(prev);
  feed("\n");
  feed(line);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json header_json(const std::string& system, const ProofBudget& b) {
  json h;
  h["kind"] = "header";
  h["format"] = "nact-ledger";
  h["version"] = kLedgerVersion;
  h["system"] = system;
  h["max_steps"] = b.max_steps;
  h["max_equality_depth"] = b.max_equality_depth;
  h["max_term_size"] = b.max_term_size;
  return h;
}

json record_json(const LedgerRecord& r) {
  json j;
  j["kind"] = "record";
  j["index"] = r.index;
  j["formula"] = r.formula;
  j["system"] = r.system;
  if (r.quarantined_by) {
    j["verdict"] = nullptr;
    j["quarantined_by"] = *r.quarantined_by;
  } else {
    j["verdict"] = r.verdict;
    j["quarantined_by"] = nullptr;
  }
  j["steps_used"] = r.steps_used;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

json withdrawal_json(const Withdrawal& w) {
  json j;
  j["kind"] = "withdraw";
  j["record"] = w.record;
  j["by"] = w.by;
  return j;
}

bool is_verdict(const std::string& v) {
  return verdict_from_name(v).has_value() || v == "SideConditionViolated";
}

// Everything the run loop needs besides the file itself.
struct State {
  LedgerReport report;
  std::vector<std::pair<std::size_t, Formula>> quarantine;  // Inconsistent formulas
  std::size_t inconsistent = 0;
  std::string chain;
};

void account(State& st, const LedgerRecord& r) {
  if (r.quarantined_by) {
    ++st.report.skipped;
  } else {
    ++st.report.classified;
    ++st.report.counts[r.verdict];
    if (r.verdict == "Inconsistent") ++st.inconsistent;
  }
  ++st.report.enumerated;
  st.report.ratio.push_back(static_cast<double>(st.inconsistent) /
                            static_cast<double>(st.report.enumerated));
  st.report.cursor = r.index + 1;
  st.report.records.push_back(r);
}

std::string signed_line(State& st, json j) {
  const std::string body = j.dump();
  st.chain = chain_hash(st.chain, body);
  j["chain"] = st.chain;
  return j.dump();
}

State read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorruptLedger("cannot open " + path);
  State st;
  std::string line;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& why) {
    return CorruptLedger(path + ":" + std::to_string(lineno) + ": " + why);
  };
  FormulaStream stream;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      throw bad("not a JSON record");
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("chain")) throw bad("missing fields");
    const std::string chain = j["chain"].get<std::string>();
    j.erase("chain");
    const std::string body = j.dump();
    const std::string kind = j["kind"].get<std::string>();
    try {
      if (!have_header) {
        if (kind != "header" || j.value("format", "") != "nact-ledger") throw bad("no header");
        if (j["version"].get<int>() != kLedgerVersion) throw bad("unsupported version");
        st.report.system = j["system"].get<std::string>();
        st.report.budget.max_steps = j["max_steps"].get<std::size_t>();
        st.report.budget.max_equality_depth = j["max_equality_depth"].get<std::size_t>();
        st.report.budget.max_term_size = j["max_term_size"].get<std::size_t>();
        if (header_json(st.report.system, st.report.budget).dump() != body) {
          throw bad("unexpected header fields");
        }
        have_header = true;
      } else if (kind == "record") {
        LedgerRecord r;
        r.index = j["index"].get<std::size_t>();
        r.formula = j["formula"].get<std::string>();
        r.system = j["system"].get<std::string>();
        r.steps_used = j["steps_used"].get<std::size_t>();
        if (!j["quarantined_by"].is_null()) r.quarantined_by = j["quarantined_by"].get<std::size_t>();
        if (!j["verdict"].is_null()) r.verdict = j["verdict"].get<std::string>();
        if (j.contains("reason")) r.reason = j["reason"].get<std::string>();
        if (r.index != st.report.cursor) throw bad("record out of order");
        if (r.system != st.report.system) throw bad("record for another system");
        const Formula f = *stream.next();
        if (to_string(f) != r.formula) throw bad("formula does not match the enumeration");
        if (r.quarantined_by) {
          if (!r.verdict.empty()) throw bad("quarantined record with a verdict");
          bool found = false;
          for (const auto& [i, q] : st.quarantine) found = found || i == *r.quarantined_by;
          if (!found) throw bad("quarantined by a formula that is not Inconsistent");
        } else if (!is_verdict(r.verdict)) {
          throw bad("unknown verdict");
        }
        if (record_json(r).dump() != body) throw bad("unexpected record fields");
        if (r.verdict == "Inconsistent") st.quarantine.emplace_back(r.index, f);
        account(st, r);
      } else if (kind == "withdraw") {
        Withdrawal w{j["record"].get<std::size_t>(), j["by"].get<std::size_t>()};
        if (w.record >= st.report.cursor || w.by >= st.report.cursor) throw bad("bad withdrawal");
        if (withdrawal_json(w).dump() != body) throw bad("unexpected withdrawal fields");
        st.report.withdrawals.push_back(w);
      } else {
        throw bad("unknown line kind");
      }
    } catch (const json::exception&) {
      throw bad("malformed fields");
    }
    if (chain_hash(st.chain, body) != chain) throw bad("chain mismatch");
    st.chain = chain;
  }
  if (!have_header) throw CorruptLedger(path + ": empty ledger");
  if (!in.eof()) throw CorruptLedger(path + ": read error");
  return st;
}

bool nonempty_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  return in && in.tellg() > 0;
}

}  // namespace

LedgerReport run_ledger(const SystemSpec& system, std::size_t count, const ProofBudget& budget,
                        const std::optional<std::string>& path) {
  if (count == 0) throw std::invalid_argument("count must be at least 1");
  State st;
  std::ofstream out;
  if (path && nonempty_file(*path)) {
    st = read_file(*path);
    if (st.report.system != system.name) throw CorruptLedger(*path + ": written for another system");
    const ProofBudget& b = st.report.budget;
    if (b.max_steps != budget.max_steps || b.max_equality_depth != budget.max_equality_depth ||
        b.max_term_size != budget.max_term_size) {
      throw CorruptLedger(*path + ": written with another budget");
    }
    out.open(*path, std::ios::app | std::ios::binary);
  } else {
    st.report.system = system.name;
    st.report.budget = budget;
    if (path) out.open(*path, std::ios::trunc | std::ios::binary);
    const std::string line = signed_line(st, header_json(system.name, budget));
    if (out.is_open()) out << line << '\n';
  }
  if (path && !out) throw std::runtime_error("cannot write " + *path);

  FormulaStream stream;
  stream.seek(st.report.cursor);
  while (st.report.cursor < count) {
    const std::size_t index = st.report.cursor;
    const Formula f = *stream.next();
    LedgerRecord r;
    r.index = index;
    r.formula = to_string(f);
    r.system = system.name;
    for (const auto& [i, q] : st.quarantine) {
      if (contains_instance(f, q)) {
        r.quarantined_by = i;
        break;
      }
    }
    if (!r.quarantined_by) {
      try {
        const Verdict v = classify_sa(f, system, budget);
        r.verdict = std::string(verdict_name(v.kind));
        r.steps_used = v.steps_used;
      } catch (const SideConditionViolated& e) {
        r.verdict = "SideConditionViolated";
        r.reason = e.what();
      }
    }
    std::string text = signed_line(st, record_json(r)) + '\n';
    if (r.verdict == "Inconsistent") {
      // earlier facts about formulas containing this one may not be used any more
      for (const LedgerRecord& old : st.report.records) {
        if (old.quarantined_by || old.verdict == "Unknown" || old.verdict == "Inconsistent" ||
            old.verdict == "SideConditionViolated") {
          continue;
        }
        if (!contains_instance(parse_formula(old.formula), f)) continue;
        Withdrawal w{old.index, index};
        text += signed_line(st, withdrawal_json(w)) + '\n';
        st.report.withdrawals.push_back(w);
      }
      st.quarantine.emplace_back(index, f);
    }
    if (out.is_open()) {
      out << text;
      out.flush();
    }
    account(st, r);
  }
  return st.report;
}

LedgerReport load_ledger(const std::string& path) { return read_file(path).report; }

Degree degree(const LedgerReport& report, const DegreeConfig& cfg) {
  if (report.ratio.empty()) throw std::invalid_argument("empty ledger report");
  Degree d;
  d.series = report.ratio;
  d.final_estimate = d.series.back();
  const std::size_t w = std::max<std::size_t>(1, std::min(cfg.window, d.series.size()));
  double sum = 0;
  for (std::size_t i = d.series.size() - w; i < d.series.size(); ++i) sum += d.series[i];
  d.tail_average = sum / static_cast<double>(w);
  d.nearly_consistent = d.tail_average < cfg.epsilon;
  d.hypothesis = "hypothesis (not tested here): the NSA systems have consistency degree 1";
  return d;
}

}  // namespace nact
