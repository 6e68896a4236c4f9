// Command-line front end. Reports go to stdout as JSON, diagnostics to stderr.

#include "priorglue/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

std::vector<std::string> split_labels(const std::string& list) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : list) {
    if (ch == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!current.empty() || !out.empty()) out.push_back(current);
  return out;
}

int emit(const priorglue::CommandResult& result) {
  std::cout << result.report.dump(2) << "\n";
  if (!result.diagnostic.empty()) std::cerr << "priorglue: " << result.diagnostic << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace priorglue;

  CLI::App app{"Generalized-conditionalization checks and common-prior gluing over exact rationals"};
  app.require_subcommand(1);

  std::string file;
  auto* check_gc_cmd = app.add_subcommand("check-gc", "Check pairwise GC for a credence file");
  check_gc_cmd->add_option("FILE", file, "credence document")->required();

  std::string evidence;
  auto* glue_cmd = app.add_subcommand("glue", "Reconstruct the common prior");
  glue_cmd->add_option("FILE", file, "credence document")->required();
  auto* evidence_opt = glue_cmd->add_option("--evidence", evidence, "comma-separated atoms of E");

  auto* survivors_cmd = app.add_subcommand("survivors", "List atoms no agent rules out");
  survivors_cmd->add_option("FILE", file, "credence document")->required();

  std::uint64_t grid = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate grid priors that condition to every agent");
  oracle_cmd->add_option("FILE", file, "credence document")->required();
  oracle_cmd->add_option("--grid", grid, "grid resolution K (masses are multiples of 1/K)")->required();

  std::string demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run a bundled example");
  demo_cmd->add_option("NAME", demo, "example-1-3 | example-1-4 | triangle | countable")->required();

  TrialConfig cfg;
  std::string law;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the seeded property laws");
  selftest_cmd->add_option("--seed", cfg.seed, "random seed");
  selftest_cmd->add_option("--trials", cfg.trials, "trials per law")->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--max-atoms", cfg.max_atoms, "largest random space")->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--max-denominator", cfg.max_denominator, "largest random mass denominator")
      ->check(CLI::PositiveNumber);
  auto* law_opt = selftest_cmd->add_option("--law", law, "run a single law");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (*check_gc_cmd) return emit(run_check_gc(std::filesystem::path(file)));
  if (*glue_cmd) {
    std::optional<std::vector<std::string>> labels;
    if (*evidence_opt) labels = split_labels(evidence);
    return emit(run_glue(std::filesystem::path(file), labels));
  }
  if (*survivors_cmd) return emit(run_survivors(std::filesystem::path(file)));
  if (*oracle_cmd) return emit(run_oracle(std::filesystem::path(file), grid));
  if (*demo_cmd) return emit(run_demo(demo));
  if (*selftest_cmd) {
    std::optional<std::string> only;
    if (*law_opt) only = law;
    return emit(run_selftest(cfg, only));
  }
  return kExitInputError;
}
