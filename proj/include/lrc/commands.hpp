#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace lrc {

// Options shared by the commands; defaults give reproducible runs.
struct RunConfig {
  int r = 1;
  int delta = 2;
  int t = 1;
  bool primed = false;
  std::string locality_class = "all";  // info | 1info | all
  std::uint64_t seed = 1729;
  int limit_enum = 20;  // 2^n sweeps refuse larger ground sets
  std::int64_t limit_expand = std::int64_t{1} << 20;  // codeword expansion cap
  int attempts = 8;
  std::optional<std::uint64_t> q;
  std::string format = "json";  // json | text
  std::string out_path;         // empty: stdout only
};

// Each command returns its JSON report; failures raise lrc::Error and map to
// process exit codes. All reports are byte-deterministic for fixed inputs
// and seed.

// Code or matrix file -> LRC profile for the class/params in cfg.
nlohmann::json run_analyze(const std::string& input_path,
                           const RunConfig& cfg);

// Construction-spec file -> matroid summary (flats, distance, per-block
// locality, information set, availability when the blocks are uniform).
nlohmann::json run_construct(const std::string& spec_path,
                             const RunConfig& cfg);

// Generate the perfect family instance for (k, cfg.r, cfg.delta, cfg.t),
// build and profile it (asserting perfectness), optionally chain into a
// random representation.
nlohmann::json run_family(std::int64_t k, std::optional<int> n,
                          bool with_representation, const RunConfig& cfg);

// Construction-spec file -> verified generator matrix.
nlohmann::json run_represent(const std::string& spec_path,
                             const RunConfig& cfg);

// Bound value for (n, k, cfg.r, cfg.delta, cfg.t); k may be fractional.
nlohmann::json run_bound(std::int64_t n, double k, const RunConfig& cfg);

// Axiom check of whatever the file holds (code -> polymatroid axioms,
// matrix or spec -> matroid axioms). Violations are data, not errors.
nlohmann::json run_check_axioms(const std::string& input_path,
                                const RunConfig& cfg);

// Human-readable rendering of a command's JSON report.
std::string render_text(const std::string& command,
                        const nlohmann::json& report);

// The exact bytes the CLI emits for this report under cfg.format.
std::string render_report(const std::string& command,
                          const nlohmann::json& report, const RunConfig& cfg);

}  // namespace lrc
