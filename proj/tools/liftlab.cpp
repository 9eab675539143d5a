// liftlab command-line interface.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "liftlab/harness.hpp"

using namespace liftlab;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out << text;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

void print_rows(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  for (std::size_t c = 0; c < header.size(); ++c) out << pad(header[c], width[c]) << (c + 1 < header.size() ? "  " : "\n");
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) out << pad(r[c], width[c]) << (c + 1 < r.size() ? "  " : "\n");
}

int cmd_table(const std::string& file, bool as_json) {
  auto g = parse_group_file(file);
  const auto& tab = character_table(*g);
  if (as_json) {
    json classes = json::array();
    for (const auto& c : g->classes())
      classes.push_back({{"representative", c.representative.to_cycles()}, {"size", c.size}, {"element_order", c.element_order}});
    json irr = json::array();
    for (const auto& chi : tab.irreducibles) irr.push_back(chi.serialized());
    std::cout << json{{"group", g->name()}, {"order", g->order()}, {"classes", classes}, {"irreducibles", irr}}.dump(2) << "\n";
    return 0;
  }
  std::cout << g->name() << ": order " << g->order() << ", " << g->class_count() << " classes\n\n";
  std::vector<std::string> header{"", ""};
  std::vector<std::vector<std::string>> rows(3 + tab.size());
  rows[0] = {"order", ""};
  rows[1] = {"size", ""};
  rows[2] = {"rep", ""};
  header = {"class", ""};
  for (std::size_t i = 0; i < g->class_count(); ++i) {
    const auto& c = g->classes()[i];
    header.push_back(std::to_string(i + 1));
    rows[0].push_back(std::to_string(c.element_order));
    rows[1].push_back(std::to_string(c.size));
    rows[2].push_back(c.representative.to_cycles());
  }
  for (std::size_t k = 0; k < tab.size(); ++k) {
    rows[3 + k] = {"X." + std::to_string(k + 1), ""};
    for (const auto& v : tab[k].values()) rows[3 + k].push_back(v.to_string());
  }
  print_rows(std::cout, header, rows);
  return 0;
}

int cmd_ibr(const std::string& file, std::int64_t p, bool as_json) {
  auto g = parse_group_file(file);
  const auto& phis = ibr(*g, p);
  const auto& dec = decomposition_matrix(*g, p);
  const auto& tab = character_table(*g);
  std::vector<std::vector<std::size_t>> lift_idx;
  for (const auto& phi : phis) {
    std::vector<std::size_t> idx;
    for (const auto& chi : lifts(phi).members) idx.push_back(*tab.index_of(chi));
    lift_idx.push_back(idx);
  }
  if (as_json) {
    json jibr = json::array();
    for (const auto& phi : phis) jibr.push_back(phi.serialized());
    json jl = json::object();
    for (std::size_t i = 0; i < phis.size(); ++i) jl[std::to_string(i)] = lift_idx[i];
    std::cout << json{{"group", g->name()}, {"p", p}, {"p_regular_classes", p_regular_classes(*g, p)},
                      {"ibr", jibr}, {"decomposition", dec}, {"lifts", jl}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout << g->name() << ", p = " << p << ": " << phis.size() << " irreducible Brauer characters\n\n";
  std::vector<std::string> header{"phi", "degree", "lifts", "values"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < phis.size(); ++i)
    rows.push_back({std::to_string(i + 1), std::to_string(phis[i].degree()), std::to_string(lift_idx[i].size()),
                    phis[i].to_string()});
  print_rows(std::cout, header, rows);
  std::cout << "\ndecomposition matrix (rows Irr, columns IBr)\n";
  for (std::size_t k = 0; k < dec.size(); ++k) {
    std::cout << pad("X." + std::to_string(k + 1), 6) << " ";
    for (auto d : dec[k]) std::cout << ' ' << d;
    std::cout << "\n";
  }
  return 0;
}

int cmd_special(const std::string& file, std::int64_t p) {
  auto g = parse_group_file(file);
  const auto& tab = character_table(*g);
  std::vector<std::string> header{"chi", "degree", "p-special", "p'-special", "factorable", "factor degrees"};
  std::vector<std::vector<std::string>> rows;
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  for (std::size_t i = 0; i < tab.size(); ++i) {
    const auto& chi = tab[i];
    auto f = factorize(chi, p);
    rows.push_back({"X." + std::to_string(i + 1), std::to_string(chi.degree()), yn(is_p_special(chi, p)),
                    yn(is_p_prime_special(chi, p)), yn(f.has_value()),
                    f ? std::to_string(f->p_part.degree()) + " x " + std::to_string(f->p_prime_part.degree()) : "-"});
  }
  std::cout << g->name() << ", p = " << p << "\n\n";
  print_rows(std::cout, header, rows);
  return 0;
}

void dump_failures(const SuiteReport& r) {
  for (const auto& e : r.entries)
    for (const auto& c : e.checks) {
      if (!c.failing()) continue;
      std::cerr << "counterexample: " << e.group << ", p = " << e.p << ", " << c.name << ": " << c.status;
      if (!c.message.empty()) std::cerr << " (" << c.message << ")";
      std::cerr << "\n";
      for (const auto& w : c.report.witnesses)
        if (!w.value("ok", true)) std::cerr << w.dump() << "\n";
    }
}

int finish(const SuiteReport& r, const std::string& json_path, const std::string& md_path) {
  if (!json_path.empty()) write_file(json_path, render_json(r));
  if (!md_path.empty()) write_file(md_path, render_markdown(r));
  for (const auto& e : r.entries)
    for (const auto& c : e.checks) {
      std::cout << std::left << std::setw(10) << e.group << " p=" << std::setw(3) << e.p << std::setw(24) << c.name
                << std::setw(16) << c.status << c.report.passed << "/" << c.report.instances << " (vacuous "
                << c.report.vacuous << ")";
      if (!c.message.empty()) std::cout << "  " << c.message;
      std::cout << "\n";
    }
  const auto t = r.totals();
  std::cout << "total: " << t.passed << "/" << t.instances << " instances passed, " << t.failing << " failing checks\n";
  dump_failures(r);
  return r.exit_code();
}

std::vector<std::string> split_checks(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact character data and lift-counting verification for small p-solvable permutation groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LIFTLAB_VERSION);
  std::string config_path;
  std::size_t order_bound = 0;
  app.add_option("--config", config_path, "key = value file (order_bound, workers)");
  app.add_option("--order-bound", order_bound, "largest group order accepted (default 512)");

  std::string file;
  std::int64_t p = 0;
  bool as_json = false;

  auto* table = app.add_subcommand("table", "print the ordinary character table");
  table->add_option("groupfile", file)->required();
  table->add_flag("--json", as_json);

  auto* brauer = app.add_subcommand("ibr", "irreducible Brauer characters, decomposition matrix, lifts");
  brauer->add_option("groupfile", file)->required();
  brauer->add_option("-p", p, "prime")->required();
  brauer->add_flag("--json", as_json);

  auto* special = app.add_subcommand("special", "p-special, p'-special and factorable irreducibles");
  special->add_option("groupfile", file)->required();
  special->add_option("-p", p, "prime")->required();

  std::vector<std::string> checks;
  std::string json_out, md_out;
  unsigned workers = 0;
  auto* verify = app.add_subcommand("verify", "run verifiers on one group");
  verify->add_option("groupfile", file)->required();
  verify->add_option("-p", p, "prime")->required();
  verify->add_option("--check", checks, "theoremA, corollaryB, cossey, cl12, lemmaA, lemmaI52, special-products, "
                                        "sylow-extension, restriction-bijection, nh-stability or all")
      ->delimiter(',');
  verify->add_option("--json", json_out, "write the JSON report here");
  verify->add_option("--markdown", md_out, "write the markdown report here");

  std::string filter;
  std::int64_t corpus_p = 0;
  auto* corpus = app.add_subcommand("corpus", "run verifiers on the built-in corpus");
  corpus->add_option("--filter", filter, "corpus entry name");
  corpus->add_option("-p", corpus_p, "prime (default: the entry's primes)");
  corpus->add_option("--check", checks, "check list (default all)")->delimiter(',');
  corpus->add_option("--json", json_out, "write the JSON report here");
  corpus->add_option("--markdown", md_out, "write the markdown report here");
  corpus->add_option("--workers", workers, "parallel workers");
  auto* list = app.add_subcommand("list", "list corpus entries and checks");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (order_bound) cfg.order_bound = order_bound;
    if (workers) cfg.workers = workers;
    cfg.apply();

    if (*table) return cmd_table(file, as_json);
    if (*brauer) return cmd_ibr(file, p, as_json);
    if (*special) return cmd_special(file, p);
    if (*verify) {
      auto g = parse_group_file(file);
      auto r = run_targets({Target{g, p, nullptr}}, resolve_checks(split_checks(checks)), cfg.workers);
      return finish(r, json_out, md_out);
    }
    if (*corpus) {
      Selection sel;
      if (!filter.empty()) sel.filter = filter;
      if (corpus_p) sel.prime = corpus_p;
      sel.checks = split_checks(checks);
      return finish(run_suite(sel, cfg.workers), json_out, md_out);
    }
    if (*list) {
      for (const auto& e : corpus_catalog()) {
        std::cout << e.name << " (degree " << e.degree << "), primes:";
        for (auto q : e.primes) std::cout << ' ' << q;
        std::cout << (e.worked_example ? "  [worked example]" : "") << "\n";
      }
      std::cout << "checks:";
      for (const auto& c : check_names()) std::cout << ' ' << c;
      std::cout << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
