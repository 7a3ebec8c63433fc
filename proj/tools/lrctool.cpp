#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lrc/commands.hpp"
#include "lrc/errors.hpp"

namespace {

void add_common_options(CLI::App* cmd, lrc::RunConfig& cfg) {
  cmd->add_option("--r", cfg.r, "Locality parameter r (repair-set rank)");
  cmd->add_option("--delta", cfg.delta,
                  "Locality parameter delta (repair-set slack + 1)");
  cmd->add_option("--t", cfg.t, "Availability: disjoint repair sets required");
  cmd->add_flag("--primed", cfg.primed,
                "Recovery sets may include the repaired element");
  cmd->add_option("--class", cfg.locality_class,
                  "Symbol class to certify: info, 1info, or all");
  cmd->add_option("--seed", cfg.seed, "Seed for every randomized step");
  cmd->add_option("--limit-enum", cfg.limit_enum,
                  "Largest ground set for full subset sweeps");
  cmd->add_option("--limit-expand", cfg.limit_expand,
                  "Largest codebook a matrix may be expanded to");
  cmd->add_option("--attempts", cfg.attempts,
                  "Random attempts when drawing a representation");
  cmd->add_option("--q", cfg.q,
                  "Field order for representations (default: auto)");
  cmd->add_option("--format", cfg.format, "Report format: json or text");
  cmd->add_option("--out", cfg.out_path,
                  "Write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Locally repairable codes through polymatroid rank analysis: profile "
      "codes and matrices, build matroids from cyclic-flat specs, generate "
      "bound-achieving families, and draw verified generator matrices."};
  app.require_subcommand(1);

  lrc::RunConfig cfg;
  std::string in_path;
  std::int64_t family_k = 0;
  std::optional<int> family_n;
  bool with_representation = false;
  std::int64_t bound_n = 0;
  double bound_k = 0.0;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Profile a code or generator matrix file as an LRC");
  analyze->add_option("input", in_path, "Code or matrix JSON file")
      ->required();
  add_common_options(analyze, cfg);

  CLI::App* construct = app.add_subcommand(
      "construct", "Build the matroid a construction spec describes");
  construct->add_option("input", in_path, "Construction spec JSON file")
      ->required();
  add_common_options(construct, cfg);

  CLI::App* family = app.add_subcommand(
      "family",
      "Generate a bound-achieving instance for (k, --r, --delta, --t)");
  family->add_option("k", family_k, "Total rank of the instance")->required();
  family->add_option("--n", family_n,
                     "Ground-set size (default: smallest possible)");
  family->add_flag("--represent", with_representation,
                   "Chain into a verified generator matrix");
  add_common_options(family, cfg);

  CLI::App* represent_cmd = app.add_subcommand(
      "represent", "Draw a verified generator matrix for a spec's matroid");
  represent_cmd->add_option("input", in_path, "Construction spec JSON file")
      ->required();
  add_common_options(represent_cmd, cfg);

  CLI::App* bound_cmd = app.add_subcommand(
      "bound", "Distance bound for (n, k) under (--r, --delta, --t)");
  bound_cmd->add_option("n", bound_n, "Code length")->required();
  bound_cmd->add_option("k", bound_k, "Code dimension (may be fractional)")
      ->required();
  add_common_options(bound_cmd, cfg);

  CLI::App* check_cmd = app.add_subcommand(
      "check-axioms",
      "Check rank axioms of whatever a file holds; violations are reported, "
      "not fatal");
  check_cmd->add_option("input", in_path, "Code, matrix, or spec JSON file")
      ->required();
  add_common_options(check_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::string command;
    nlohmann::json report;
    if (analyze->parsed()) {
      command = "analyze";
      report = lrc::run_analyze(in_path, cfg);
    } else if (construct->parsed()) {
      command = "construct";
      report = lrc::run_construct(in_path, cfg);
    } else if (family->parsed()) {
      command = "family";
      report = lrc::run_family(family_k, family_n, with_representation, cfg);
    } else if (represent_cmd->parsed()) {
      command = "represent";
      report = lrc::run_represent(in_path, cfg);
    } else if (bound_cmd->parsed()) {
      command = "bound";
      report = lrc::run_bound(bound_n, bound_k, cfg);
    } else if (check_cmd->parsed()) {
      command = "check-axioms";
      report = lrc::run_check_axioms(in_path, cfg);
    }
    std::string text = lrc::render_report(command, report, cfg);
    if (cfg.out_path.empty()) std::cout << text;
    return 0;
  } catch (const lrc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
