#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "verify.hpp"

#ifndef LIFTLAB_VERSION
#define LIFTLAB_VERSION "0.1.0"
#endif

namespace liftlab {

/// Recorded values that every run recomputes and compares.
struct Expected {
  std::optional<std::size_t> classes;
  std::map<std::int64_t, std::size_t> ibr;                        // p -> |IBr_p|
  std::map<std::int64_t, std::vector<std::size_t>> lifts;         // p -> |L_phi| in IBr order
};

struct CorpusEntry {
  std::string name;
  std::size_t degree = 1;
  std::vector<std::string> generators;
  std::vector<std::int64_t> primes;
  Expected expected;
  bool worked_example = false;

  GroupPtr build() const { return group_from_cycles(degree, generators, name); }
};

namespace detail {

inline std::vector<std::int64_t> default_primes(std::int64_t order, std::vector<std::int64_t> extra = {}) {
  std::vector<std::int64_t> out;
  for (auto q : prime_divisors(order))
    if (q != 2) out.push_back(q);
  for (auto q : extra)
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace detail

/// The built-in verification corpus.
inline const std::vector<CorpusEntry>& corpus_catalog() {
  using detail::default_primes;
  static const std::vector<CorpusEntry> catalog = [] {
    std::vector<CorpusEntry> c;
    c.push_back({"C1", 1, {}, default_primes(1, {3}), {1, {{3, 1}}, {{3, {1}}}}});
    c.push_back({"C2", 2, {"(1,2)"}, default_primes(2, {3}), {2, {{3, 2}}, {{3, {1, 1}}}}});
    c.push_back({"C3", 3, {"(1,2,3)"}, default_primes(3), {3, {{3, 1}}, {{3, {3}}}}});
    c.push_back({"C6", 6, {"(1,2,3,4,5,6)"}, default_primes(6), {6, {{3, 2}}, {{3, {3, 3}}}}});
    c.push_back({"S3", 3, {"(1,2)", "(1,2,3)"}, default_primes(6), {3, {{3, 2}}, {{3, {1, 1}}}}});
    c.push_back({"D4", 4, {"(1,2,3,4)", "(1,3)"}, default_primes(8, {3}), {5, {{3, 5}}, {{3, {1, 1, 1, 1, 1}}}}});
    c.push_back({"Q8", 8, {"(1,3,2,4)(5,8,6,7)", "(1,5,2,6)(3,7,4,8)"}, default_primes(8, {3}),
                 {5, {{3, 5}}, {{3, {1, 1, 1, 1, 1}}}}});
    c.push_back({"A4", 4, {"(1,2,3)", "(1,2)(3,4)"}, default_primes(12), {4, {{3, 2}}, {{3, {3, 1}}}}});
    c.push_back({"D6", 6, {"(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"}, default_primes(12), {6, {{3, 4}}, {}}});
    c.push_back({"F21", 7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}, default_primes(21), {5, {{3, 3}, {7, 3}}, {{3, {3, 1, 1}}}}});
    c.push_back({"SL(2,3)", 8, {"(1,4,7)(2,8,5)", "(1,3,2,6)(4,5,8,7)"}, default_primes(24), {7, {{3, 3}}, {}}});
    c.push_back({"S4", 4, {"(1,2,3,4)", "(1,2)"}, default_primes(24), {5, {{3, 4}}, {}}});
    c.push_back({"GL(2,3)", 8, {"(3,6)(4,7)(5,8)", "(1,3,8)(2,6,4)"}, default_primes(48),
                 {8, {{3, 6}}, {{3, {1, 1, 1, 1, 1, 1}}}}, true});
    return c;
  }();
  return catalog;
}

/// A5: not 5-solvable; used to exercise the rejection path.
inline CorpusEntry rejection_fixture() { return {"A5", 5, {"(1,2,3,4,5)", "(1,2,3)"}, {5}, {5, {}, {}}}; }

/// Group text format: `name <id>`, `degree <n>`, then `gen <cycles>` lines.
/// Blank lines and lines starting with '#' are ignored.
inline GroupPtr parse_group_text(const std::string& text, const std::string& origin = "<input>") {
  std::istringstream in(text);
  std::string line;
  std::string name;
  std::optional<std::size_t> degree;
  std::vector<std::pair<std::size_t, std::string>> gens;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw input_error(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    auto end = line.find_first_of(" \t", start);
    const std::string key = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::string rest = end == std::string::npos ? "" : line.substr(end);
    rest.erase(0, rest.find_first_not_of(" \t"));
    while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ' || rest.back() == '\t')) rest.pop_back();
    if (key == "name") {
      if (rest.empty()) fail("missing group name");
      name = rest;
    } else if (key == "degree") {
      if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) fail("degree must be a positive integer");
      degree = std::stoul(rest);
      if (*degree == 0) fail("degree must be a positive integer");
    } else if (key == "gen") {
      if (!degree) fail("gen before degree");
      gens.emplace_back(lineno, rest);
    } else {
      fail("unknown keyword '" + key + "'");
    }
  }
  if (!degree) throw input_error(origin + ": missing degree line");
  std::vector<Permutation> perms;
  for (const auto& [ln, g] : gens) {
    try {
      perms.push_back(Permutation::parse_cycles(g, *degree));
    } catch (const input_error& e) {
      throw input_error(origin + ":" + std::to_string(ln) + ": " + e.what());
    }
  }
  return group_from_generators(*degree, perms, name.empty() ? origin : name);
}

inline GroupPtr parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open group file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str(), path);
}

/// Key-value configuration: `order_bound = N`, `workers = N`; '#' starts a comment.
struct Config {
  std::size_t order_bound = 512;
  unsigned workers = 1;

  void apply() const { Settings::order_bound() = order_bound; }
};

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open config file " + path);
  Config cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw input_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw input_error(path + ":" + std::to_string(lineno) + ": value of " + key + " must be a nonnegative integer");
    }
    if (key == "order_bound")
      cfg.order_bound = n;
    else if (key == "workers")
      cfg.workers = static_cast<unsigned>(std::max<std::size_t>(n, 1));
    else
      throw input_error(path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
  return cfg;
}

/// One (group, prime, check) result. status is one of: pass, fail,
/// not-applicable, unsupported, precondition, error.
struct CheckOutcome {
  std::string name;
  std::string status;
  std::string message;
  VerifierReport report;

  bool failing() const { return status == "fail" || status == "error"; }
};

struct EntryReport {
  std::string group;
  std::int64_t order = 0;
  std::int64_t p = 0;
  std::vector<CheckOutcome> checks;
};

struct SuiteReport {
  std::vector<EntryReport> entries;
  double elapsed_seconds = 0;

  struct Totals {
    std::int64_t checks = 0, instances = 0, passed = 0, vacuous = 0, failing = 0;
  };
  Totals totals() const {
    Totals t;
    for (const auto& e : entries)
      for (const auto& c : e.checks) {
        ++t.checks;
        t.instances += c.report.instances;
        t.passed += c.report.passed;
        t.vacuous += c.report.vacuous;
        if (c.failing()) ++t.failing;
      }
    return t;
  }
  /// 0 iff no failed non-vacuous instance and no internal error.
  int exit_code() const { return totals().failing == 0 ? 0 : 1; }
};

/// Golden values of a corpus entry, one instance per recorded number.
inline VerifierReport golden_verify(const CorpusEntry& entry, const GroupPtr& g, std::int64_t p) {
  VerifierReport r{"golden"};
  auto record = [&](const std::string& what, const json& expected, const json& actual) {
    Instance inst;
    inst.ok = expected == actual;
    inst.witness = json{{"value", what}, {"expected", expected}, {"actual", actual}};
    if (!inst.ok) inst.failure = what + " differs from the recorded value";
    r.add(std::move(inst));
  };
  if (entry.expected.classes) record("classes", *entry.expected.classes, g->class_count());
  if (auto it = entry.expected.ibr.find(p); it != entry.expected.ibr.end()) record("ibr", it->second, ibr(*g, p).size());
  if (auto it = entry.expected.lifts.find(p); it != entry.expected.lifts.end()) {
    std::vector<std::size_t> counts;
    for (const auto& phi : ibr(*g, p)) counts.push_back(lifts(phi).size());
    record("lifts", it->second, counts);
  }
  return r;
}

inline CheckOutcome run_guarded(const std::string& name, const std::function<VerifierReport()>& fn) {
  CheckOutcome out{name, "pass", "", VerifierReport{name}};
  try {
    out.report = fn();
    out.report.claim = name;
    if (!out.report.ok())
      out.status = "fail";
    else if (!out.report.applicable)
      out.status = "not-applicable";
    out.message = out.report.note;
  } catch (const unsupported_prime& e) {
    out.status = "unsupported";
    out.message = e.what();
  } catch (const precondition_error& e) {
    out.status = "precondition";
    out.message = e.what();
  } catch (const std::exception& e) {
    out.status = "error";
    out.message = e.what();
  }
  return out;
}

struct Selection {
  std::optional<std::string> filter;  // corpus entry name
  std::optional<std::int64_t> prime;  // overrides the entry's primes
  std::vector<std::string> checks;    // empty or {"all"}: every check
};

inline std::vector<std::string> resolve_checks(const std::vector<std::string>& requested) {
  if (requested.empty() || std::find(requested.begin(), requested.end(), "all") != requested.end()) return check_names();
  for (const auto& c : requested)
    if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
      throw input_error("unknown check: " + c);
  return requested;
}

struct Target {
  GroupPtr group;
  std::int64_t p = 0;
  const CorpusEntry* entry = nullptr; // set for corpus runs (enables golden checks)
};

/// Runs every check on every target with `workers` threads. The report
/// content does not depend on the worker count.
inline SuiteReport run_targets(const std::vector<Target>& targets, const std::vector<std::string>& checks,
                               unsigned workers) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Task {
    std::size_t target;
    std::size_t slot;
    std::string check;
  };
  SuiteReport report;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    EntryReport e{targets[i].group->name(), targets[i].group->order(), targets[i].p, {}};
    std::size_t slot = 0;
    if (targets[i].entry) tasks.push_back({i, slot++, "golden"});
    for (const auto& c : checks) tasks.push_back({i, slot++, c});
    e.checks.resize(slot);
    report.entries.push_back(std::move(e));
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const auto& task = tasks[k];
      const auto& tg = targets[task.target];
      CheckOutcome out;
      if (task.check == "golden")
        out = run_guarded("golden", [&] { return golden_verify(*tg.entry, tg.group, tg.p); });
      else
        out = run_guarded(task.check, [&] { return run_check(task.check, tg.group, tg.p); });
      report.entries[task.target].checks[task.slot] = std::move(out);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  std::stable_sort(report.entries.begin(), report.entries.end(), [](const EntryReport& a, const EntryReport& b) {
    return std::tie(a.order, a.group, a.p) < std::tie(b.order, b.group, b.p);
  });
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

/// Runs the selected part of the built-in corpus.
inline SuiteReport run_suite(const Selection& sel, unsigned workers = 1) {
  const auto checks = resolve_checks(sel.checks);
  std::vector<Target> targets;
  for (const auto& entry : corpus_catalog()) {
    if (sel.filter && entry.name != *sel.filter) continue;
    auto g = entry.build();
    std::vector<std::int64_t> primes = sel.prime ? std::vector<std::int64_t>{*sel.prime} : entry.primes;
    for (auto p : primes) targets.push_back({g, p, &entry});
  }
  if (targets.empty()) throw input_error("selection matches no (group, prime) pair");
  return run_targets(targets, checks, workers);
}

// ---- serialization ----

inline json to_json(const VerifierReport& r) {
  return json{{"name", r.claim},         {"instances", r.instances}, {"passed", r.passed},
              {"vacuous", r.vacuous},    {"applicable", r.applicable}, {"note", r.note},
              {"witnesses", r.witnesses}, {"failures", r.failures}};
}

inline json to_json(const CheckOutcome& c) {
  json j = to_json(c.report);
  j["name"] = c.name;
  j["status"] = c.status;
  j["message"] = c.message;
  return j;
}

inline json to_json(const EntryReport& e) {
  json checks = json::array();
  for (const auto& c : e.checks) checks.push_back(to_json(c));
  return json{{"group", e.group}, {"order", e.order}, {"p", e.p}, {"checks", checks}};
}

inline json to_json(const SuiteReport& s) {
  json entries = json::array();
  for (const auto& e : s.entries) entries.push_back(to_json(e));
  const auto t = s.totals();
  return json{{"entries", entries},
              {"summary",
               {{"checks", t.checks}, {"instances", t.instances}, {"passed", t.passed}, {"vacuous", t.vacuous},
                {"failing_checks", t.failing}}},
              {"metadata", {{"version", LIFTLAB_VERSION}, {"elapsed_seconds", s.elapsed_seconds}}}};
}

inline SuiteReport report_from_json(const json& j) {
  SuiteReport s;
  for (const auto& je : j.at("entries")) {
    EntryReport e{je.at("group").get<std::string>(), je.at("order").get<std::int64_t>(), je.at("p").get<std::int64_t>(), {}};
    for (const auto& jc : je.at("checks")) {
      CheckOutcome c;
      c.name = jc.at("name").get<std::string>();
      c.status = jc.at("status").get<std::string>();
      c.message = jc.at("message").get<std::string>();
      c.report.claim = c.name;
      c.report.instances = jc.at("instances").get<std::int64_t>();
      c.report.passed = jc.at("passed").get<std::int64_t>();
      c.report.vacuous = jc.at("vacuous").get<std::int64_t>();
      c.report.applicable = jc.at("applicable").get<bool>();
      c.report.note = jc.at("note").get<std::string>();
      c.report.witnesses = jc.at("witnesses");
      c.report.failures = jc.at("failures").get<std::vector<std::string>>();
      e.checks.push_back(std::move(c));
    }
    s.entries.push_back(std::move(e));
  }
  if (j.contains("metadata")) s.elapsed_seconds = j.at("metadata").value("elapsed_seconds", 0.0);
  return s;
}

inline std::string render_json(const SuiteReport& s) { return to_json(s).dump(2) + "\n"; }

/// Summary table followed by one witness table per check.
inline std::string render_markdown(const SuiteReport& s) {
  std::ostringstream out;
  const auto t = s.totals();
  out << "# liftlab report\n\n";
  out << "checks: " << t.checks << ", instances: " << t.instances << ", passed: " << t.passed
      << ", vacuous: " << t.vacuous << ", failing checks: " << t.failing << "\n\n";
  out << "| group | order | p | check | status | instances | passed | vacuous |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& e : s.entries)
    for (const auto& c : e.checks)
      out << "| " << e.group << " | " << e.order << " | " << e.p << " | " << c.name << " | " << c.status << " | "
          << c.report.instances << " | " << c.report.passed << " | " << c.report.vacuous << " |\n";
  for (const auto& e : s.entries)
    for (const auto& c : e.checks) {
      if (c.report.witnesses.empty() && c.message.empty()) continue;
      out << "\n## " << e.group << ", p = " << e.p << ", " << c.name << "\n\n";
      if (!c.message.empty()) out << c.message << "\n\n";
      if (c.report.witnesses.empty()) continue;
      std::vector<std::string> keys;
      for (const auto& w : c.report.witnesses)
        for (auto it = w.begin(); it != w.end(); ++it)
          if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
      out << "|";
      for (const auto& k : keys) out << " " << k << " |";
      out << "\n|";
      for (std::size_t i = 0; i < keys.size(); ++i) out << "---|";
      out << "\n";
      for (const auto& w : c.report.witnesses) {
        out << "|";
        for (const auto& k : keys) {
          std::string cell;
          if (w.contains(k)) cell = w.at(k).is_string() ? w.at(k).get<std::string>() : w.at(k).dump();
          for (auto& ch : cell)
            if (ch == '|') ch = '/';
          out << " " << cell << " |";
        }
        out << "\n";
      }
    }
  return out.str();
}

} // namespace liftlab
