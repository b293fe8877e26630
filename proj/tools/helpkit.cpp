// Command-line driver: build groups, write the corpus manifest, run HeLP
// audits and the lemma suite.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "helpkit/arith.hpp"
#include "helpkit/constructions.hpp"
#include "helpkit/group_io.hpp"
#include "helpkit/help.hpp"
#include "helpkit/lemmas.hpp"
#include "helpkit/report.hpp"
#include "helpkit/structure.hpp"

using namespace helpkit;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct RunConfig {
  std::string input;
  std::string out;
  std::vector<std::uint64_t> orders;
  std::int64_t bound = 5;
  std::size_t max_order = 64;
  std::string characters = "all";
  std::size_t workers = 1;
  std::uint64_t node_budget = HelpOptions{}.node_budget;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

void emit(const RunConfig& cfg, const json& doc) {
  if (cfg.out.empty()) std::cout << doc.dump(2) << "\n";
  else write_file(cfg.out, doc.dump(2) + "\n");
}

int cmd_build(const RunConfig& cfg) {
  const auto parsed = parse_group_text(read_file(cfg.input));
  const auto& g = parsed.group;
  const auto report = structure_report(g);
  if (!cfg.out.empty()) {
    write_file(cfg.out, write_cayley(g));
    write_file(cfg.out + ".json", to_json(g, report).dump(2) + "\n");
  } else {
    std::cout << to_json(g, report).dump(2) << "\n";
  }
  std::cerr << "order " << report.order << ", " << report.class_count << " classes, exponent " << report.exponent
            << (report.is_hamiltonian ? ", hamiltonian" : "") << (report.is_nilpotent ? ", nilpotent" : "") << "\n";
  return kOk;
}

int cmd_corpus(const RunConfig& cfg) {
  const auto entries = build_corpus(cfg.max_order);
  emit(cfg, manifest_json(entries, cfg.max_order));
  std::map<std::string, std::size_t> counts;
  for (const auto& e : entries) ++counts[family_name(e.family)];
  std::cerr << entries.size() << " entries";
  for (const auto& [f, c] : counts) std::cerr << ", " << f << " " << c;
  std::cerr << "\n";
  return kOk;
}

int cmd_audit(const RunConfig& cfg) {
  const auto parsed = parse_group_text(read_file(cfg.input));
  const auto& g = parsed.group;
  HelpOptions options;
  options.bound = cfg.bound;
  options.characters = parse_selection(cfg.characters);
  options.workers = cfg.workers;
  options.node_budget = cfg.node_budget;
  const auto orders = cfg.orders.empty() ? divisors(g.order()) : cfg.orders;
  const auto report = zc_audit(g, orders, options);
  emit(cfg, to_json(g, report));
  for (const auto& l : report.levels)
    std::cerr << "m=" << l.m << " " << l.status << " survivors " << l.survivors.size() << " negative "
              << l.negative_survivors << "\n";
  return audit_exit_code(report);
}

int cmd_lemmas(const RunConfig& cfg) {
  const auto entries =
      cfg.input.empty() ? build_corpus(cfg.max_order) : load_manifest(json::parse(read_file(cfg.input)));
  LemmaSuiteOptions options;
  options.workers = cfg.workers;
  const auto ledger = run_lemma_suite(entries, options);
  emit(cfg, ledger);
  const auto& s = ledger["summary"];
  std::cerr << s["entries"] << " entries, " << s["applicable"] << " applicable verdicts, " << s["violations"]
            << " violations\n";
  return s["violations"].get<std::size_t>() == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zassenhaus conjecture checks for cyclic-by-nilpotent groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* build = app.add_subcommand("build", "parse a group definition and report its structure");
  build->add_option("--input", cfg.input, "group definition file")->required();
  build->add_option("--out", cfg.out, "write the Cayley table here and the report to <out>.json");

  auto* corpus = app.add_subcommand("corpus", "write the default corpus manifest");
  corpus->add_option("--max-order", cfg.max_order)->check(CLI::Range(std::size_t{1}, kDefaultOrderCap));
  corpus->add_option("--out", cfg.out);

  auto* audit = app.add_subcommand("audit", "run the HeLP filter on every requested order");
  audit->add_option("--input", cfg.input, "group definition file")->required();
  audit->add_option("--orders", cfg.orders, "element orders, default all divisors of |G|")->delimiter(',');
  audit->add_option("--bound", cfg.bound, "entry bound B")->check(CLI::PositiveNumber);
  audit->add_option("--characters", cfg.characters)->check(CLI::IsMember({"linear", "induced", "all"}));
  audit->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
  audit->add_option("--node-budget", cfg.node_budget, "search nodes per order before giving up")
      ->check(CLI::PositiveNumber);
  audit->add_option("--out", cfg.out);

  auto* lemmas = app.add_subcommand("lemmas", "run the lemma suite on a manifest");
  lemmas->add_option("--input", cfg.input, "corpus manifest, default the built-in corpus");
  lemmas->add_option("--max-order", cfg.max_order, "corpus bound when no manifest is given")
      ->check(CLI::Range(std::size_t{1}, kDefaultOrderCap));
  lemmas->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
  lemmas->add_option("--out", cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build) return cmd_build(cfg);
    if (*corpus) return cmd_corpus(cfg);
    if (*audit) return cmd_audit(cfg);
    if (*lemmas) return cmd_lemmas(cfg);
  } catch (const GroupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
