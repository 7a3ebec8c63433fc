#include "lrc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lrc/analysis.hpp"
#include "lrc/code.hpp"
#include "lrc/construction.hpp"
#include "lrc/errors.hpp"
#include "lrc/json_io.hpp"
#include "lrc/linear.hpp"
#include "lrc/polymatroid.hpp"
#include "lrc/represent.hpp"
#include "lrc/subsets.hpp"

namespace lrc {
namespace {

// Codes get the exact projection-based predicate; everything else the
// generic rank-based one.
bool is_one_information_for(const RankOracle& oracle, Subset k_set) {
  if (const auto* entropy = dynamic_cast<const EntropyOracle*>(&oracle))
    return is_one_information(*entropy, k_set);
  return is_one_information(oracle, k_set);
}

LocalityParams params_from_config(const RunConfig& cfg) {
  LocalityParams params;
  params.r = cfg.r;
  params.delta = cfg.delta;
  params.t = cfg.t;
  params.primed = cfg.primed;
  params.validate();
  return params;
}

Subset select_target(const RankOracle& oracle, LocalityClass cls,
                     const EnumLimits& limits) {
  if (cls == LocalityClass::kAllSymbol) return oracle.ground().full();
  int n = oracle.ground().n;
  if (n <= limits.max_n) {
    std::vector<Subset> infos = information_sets(oracle, limits);
    if (cls == LocalityClass::kInfoSymbol) return infos.front();
    for (Subset k_set : infos)
      if (is_one_information_for(oracle, k_set)) return k_set;
    fail(ErrorCode::kInvalidInput,
         "no information set consists of 1-information symbols");
  }
  Subset greedy = greedy_information_set(oracle);
  if (cls == LocalityClass::kOneInfoSymbol &&
      !is_one_information_for(oracle, greedy))
    fail(ErrorCode::kLimit,
         "ground set too large to search beyond the greedy information set, "
         "which is not made of 1-information symbols");
  return greedy;
}

// When the whole codebook fits under the expansion cap, expand it and check
// the codeword-sweep distance against the rank-based one.
void cross_check_expansion(const GeneratorMatrix& matrix,
                           const LrcProfile& profile, const RunConfig& cfg) {
  if (matrix.n_cols() > cfg.limit_enum) return;
  double words = std::pow(static_cast<double>(matrix.field().q),
                          static_cast<double>(matrix.k_rows()));
  if (words > static_cast<double>(cfg.limit_expand)) return;
  Code code = expand_codewords(matrix, cfg.limit_expand);
  int d_code = brute_force_distance(code, EnumLimits{cfg.limit_enum});
  if (d_code != profile.d)
    fail(ErrorCode::kAssertion,
         "codeword sweep gives d = " + std::to_string(d_code) +
             " but the rank analysis gives d = " + std::to_string(profile.d));
}

std::shared_ptr<const ConstructedMatroid> load_spec_matroid(
    const std::string& path, const std::string& command) {
  nlohmann::json input = parse_json_file(path);
  if (detect_input_kind(input) != InputKind::kSpec)
    fail(ErrorCode::kInvalidInput,
         command + " expects a construction spec (an object with \"blocks\")");
  ConstructionSpec spec = spec_from_json(input);
  SpecReport report = validate_spec(spec);
  if (!report.ok()) {
    std::string msg = "construction spec is invalid:";
    for (const SpecViolation& v : report.violations) {
      msg += "\n  [" + v.condition + "]";
      if (v.block) msg += " block " + std::to_string(*v.block + 1) + ":";
      msg += " " + v.message;
    }
    fail(ErrorCode::kInvalidInput, msg);
  }
  return build_matroid(spec);
}

RepresentationResult represent_with_config(const ConstructedMatroid& matroid,
                                           const RunConfig& cfg) {
  RepresentOptions options;
  options.q = cfg.q;
  options.seed = cfg.seed;
  options.max_attempts = cfg.attempts;
  options.verify.seed = cfg.seed;
  return represent(matroid, options);
}

nlohmann::json representation_to_json(const RepresentationResult& result) {
  nlohmann::json j;
  j["matrix"] = matrix_to_json(result.matrix);
  j["verification"] = verify_report_to_json(result.verified);
  j["attempts"] = result.attempts;
  j["seed"] = result.seed;
  j["warnings"] = result.warnings;
  return j;
}

nlohmann::json rank_to_json(const RankValue& rank) {
  if (rank.is_exact()) return nlohmann::json(*rank.exact_integer);
  return nlohmann::json(rank.numeric);
}

// Summary of a built matroid: flats, distance (cross-checked along every
// feasible route), per-block locality, information set, and — when all
// blocks share one (r, delta) — availability, the bound, and perfectness.
nlohmann::json construct_report(const ConstructedMatroid& matroid,
                                const RunConfig& cfg) {
  DerivedParameters derived = derived_parameters(matroid);
  EnumLimits limits{cfg.limit_enum};

  int d_flats = min_distance_via_cyclic_flats(matroid, limits);
  if (d_flats != derived.d)
    fail(ErrorCode::kAssertion,
         "distance routes disagree: flat formula gives " +
             std::to_string(derived.d) + ", cyclic-flat route gives " +
             std::to_string(d_flats));
  if (matroid.ground().n <= limits.max_n) {
    int d_sweep = min_distance(matroid, limits);
    if (d_sweep != derived.d)
      fail(ErrorCode::kAssertion,
           "distance routes disagree: flat formula gives " +
               std::to_string(derived.d) + ", subset sweep gives " +
               std::to_string(d_sweep));
  }

  nlohmann::json j;
  j["n"] = derived.n;
  j["k"] = derived.k;
  j["d"] = derived.d;

  nlohmann::json flats = nlohmann::json::array();
  for (const SetWithRank& f : matroid.flats()) {
    nlohmann::json fj;
    fj["elements"] = subset_to_json(f.set);
    fj["rank"] = rank_to_json(f.rank);
    flats.push_back(std::move(fj));
  }
  j["flats"] = std::move(flats);

  nlohmann::json blocks = nlohmann::json::array();
  for (const DerivedBlockLocality& b : derived.blocks) {
    nlohmann::json bj;
    bj["elements"] = subset_to_json(b.block);
    bj["rank"] = b.rank;
    bj["delta"] = b.delta;
    bj["repair_verified"] = b.repair_verified;
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  j["information_set"] = subset_to_json(derived.information_set);

  bool uniform = !derived.blocks.empty();
  for (const DerivedBlockLocality& b : derived.blocks)
    uniform = uniform && b.rank == derived.blocks.front().rank &&
              b.delta == derived.blocks.front().delta && b.repair_verified;
  if (uniform) {
    LocalityParams params;
    params.r = static_cast<int>(derived.blocks.front().rank);
    params.delta = static_cast<int>(derived.blocks.front().delta);
    params.t = 1;
    int t_common = std::numeric_limits<int>::max();
    for (int x : elements(derived.information_set))
      t_common = std::min(t_common, max_availability_t(matroid, x, params));
    j["availability_t"] = t_common;
    if (t_common >= 1) {
      params.t = t_common;
      nlohmann::json avail = nlohmann::json::array();
      for (int x : elements(derived.information_set)) {
        std::optional<AvailabilityRecord> rec =
            find_availability(matroid, x, params);
        if (!rec)
          fail(ErrorCode::kAssertion,
               "availability at t = " + std::to_string(t_common) +
                   " could not be reproduced for element " +
                   std::to_string(x + 1));
        nlohmann::json rj;
        rj["element"] = x + 1;
        nlohmann::json sets = nlohmann::json::array();
        for (Subset s : rec->sets) sets.push_back(subset_to_json(s));
        rj["sets"] = std::move(sets);
        avail.push_back(std::move(rj));
      }
      j["availability"] = std::move(avail);
      std::int64_t bound =
          singleton_bound(derived.n, RankValue::of_int(derived.k), params.r,
                          params.delta, t_common);
      j["bound"] = bound;
      j["perfect"] = (derived.d == bound);
    }
  }
  return j;
}

// --- text rendering -------------------------------------------------------

std::string labels_text(const nlohmann::json& labels_json) {
  Subset s = 0;
  for (const nlohmann::json& l : labels_json)
    s |= singleton(l.get<int>() - 1);
  return format_subset(s);
}

std::string scalar_text(const nlohmann::json& v) { return v.dump(); }

void render_availability_lines(std::ostringstream& out,
                               const nlohmann::json& avail,
                               const char* indent) {
  for (const nlohmann::json& rec : avail) {
    out << indent << "element " << rec.at("element").get<int>() << ": ";
    bool first = true;
    for (const nlohmann::json& s : rec.at("sets")) {
      if (!first) out << ", ";
      out << labels_text(s);
      first = false;
    }
    out << "\n";
  }
}

void render_profile_text(std::ostringstream& out,
                         const nlohmann::json& report) {
  out << "LRC profile\n";
  out << "  n       = " << scalar_text(report.at("n")) << "\n";
  out << "  k       = " << scalar_text(report.at("k")) << "\n";
  out << "  d       = " << scalar_text(report.at("d")) << "\n";
  out << "  class   = " << report.at("class").get<std::string>() << "\n";
  out << "  bound   = " << scalar_text(report.at("bound")) << "\n";
  out << "  perfect = "
      << (report.at("perfect").get<bool>() ? "yes" : "no") << "\n";
  out << "  availability:\n";
  render_availability_lines(out, report.at("availability"), "    ");
}

void render_spec_text(std::ostringstream& out, const nlohmann::json& spec) {
  const nlohmann::json& blocks = spec.at("blocks");
  out << "construction spec: n = " << scalar_text(spec.at("n"))
      << ", k = " << scalar_text(spec.at("k")) << ", blocks = "
      << blocks.size() << "\n";
  int index = 1;
  for (const nlohmann::json& b : blocks) {
    out << "  block " << index++ << ": " << labels_text(b.at("elements"))
        << " rank " << scalar_text(b.at("rank")) << "\n";
  }
}

void render_construct_text(std::ostringstream& out,
                           const nlohmann::json& report) {
  out << "constructed matroid: n = " << scalar_text(report.at("n"))
      << ", k = " << scalar_text(report.at("k")) << "\n\n";

  const nlohmann::json& flats = report.at("flats");
  out << "(i) cyclic flats and ranks (" << flats.size() << "):\n";
  for (const nlohmann::json& f : flats)
    out << "      " << labels_text(f.at("elements")) << " : "
        << scalar_text(f.at("rank")) << "\n";

  out << "(ii) information set K = "
      << labels_text(report.at("information_set")) << "\n";

  out << "(iii) block localities:\n";
  for (const nlohmann::json& b : report.at("blocks")) {
    out << "      " << labels_text(b.at("elements")) << ": (r = "
        << scalar_text(b.at("rank")) << ", delta = "
        << scalar_text(b.at("delta")) << ") repair "
        << (b.at("repair_verified").get<bool>() ? "verified" : "NOT verified")
        << "\n";
  }

  out << "(iv) minimum distance d = " << scalar_text(report.at("d")) << "\n";

  if (report.contains("availability_t")) {
    out << "(v) availability for K: t = "
        << scalar_text(report.at("availability_t")) << "\n";
    if (report.contains("availability"))
      render_availability_lines(out, report.at("availability"), "      ");
    if (report.contains("bound")) {
      out << "bound = " << scalar_text(report.at("bound")) << " -> perfect: "
          << (report.at("perfect").get<bool>() ? "yes" : "no") << "\n";
    }
  } else {
    out << "(v) availability: blocks are not uniform, not derived\n";
  }
}

void render_representation_text(std::ostringstream& out,
                                const nlohmann::json& report) {
  const nlohmann::json& matrix = report.at("matrix");
  out << "generator matrix: " << scalar_text(matrix.at("k")) << " x "
      << scalar_text(matrix.at("n")) << " over the prime field of order "
      << scalar_text(matrix.at("q")) << "\n";
  const nlohmann::json& verification = report.at("verification");
  out << "verification: " << verification.at("policy").get<std::string>()
      << ", " << scalar_text(verification.at("checked")) << " subsets, "
      << (verification.at("passed").get<bool>() ? "passed" : "FAILED")
      << "\n";
  out << "attempts = " << scalar_text(report.at("attempts"))
      << ", seed = " << scalar_text(report.at("seed")) << "\n";
  for (const nlohmann::json& w : report.at("warnings"))
    out << "warning: " << w.get<std::string>() << "\n";
  out << "rows:\n";
  for (const nlohmann::json& row : matrix.at("rows")) {
    out << " ";
    for (const nlohmann::json& entry : row) out << " " << scalar_text(entry);
    out << "\n";
  }
}

void render_bound_text(std::ostringstream& out,
                       const nlohmann::json& report) {
  out << "bound(n = " << scalar_text(report.at("n")) << ", k = "
      << scalar_text(report.at("k")) << ", r = "
      << scalar_text(report.at("r")) << ", delta = "
      << scalar_text(report.at("delta")) << ", t = "
      << scalar_text(report.at("t")) << ") = "
      << scalar_text(report.at("bound")) << "\n";
}

void render_axioms_text(std::ostringstream& out,
                        const nlohmann::json& report) {
  out << "axiom check (" << report.at("check").get<std::string>() << ") on "
      << report.at("input").get<std::string>() << " input\n";
  out << "  mode    = " << report.at("mode").get<std::string>() << "\n";
  out << "  checked = " << scalar_text(report.at("checked")) << "\n";
  out << "  ok      = " << (report.at("ok").get<bool>() ? "yes" : "no")
      << "\n";
  for (const nlohmann::json& v : report.at("violations")) {
    out << "  violation " << v.at("axiom").get<std::string>() << ":";
    for (const nlohmann::json& w : v.at("witness"))
      out << " " << labels_text(w);
    out << " values";
    for (const nlohmann::json& val : v.at("values"))
      out << " " << scalar_text(val);
    out << "\n";
  }
}

}  // namespace

nlohmann::json run_analyze(const std::string& input_path,
                           const RunConfig& cfg) {
  nlohmann::json input = parse_json_file(input_path);
  InputKind kind = detect_input_kind(input);
  std::shared_ptr<const RankOracle> oracle;
  std::optional<GeneratorMatrix> matrix;
  if (kind == InputKind::kCode) {
    oracle = entropy_oracle(code_from_json(input));
  } else if (kind == InputKind::kMatrix) {
    matrix = matrix_from_json(input);
    oracle = std::make_shared<LinearRankOracle>(*matrix);
  } else {
    fail(ErrorCode::kInvalidInput,
         "analyze expects a code or a matrix; use the construct command for "
         "construction specs");
  }
  EnumLimits limits{cfg.limit_enum};
  LocalityParams params = params_from_config(cfg);
  LocalityClass cls = locality_class_from_token(cfg.locality_class);
  Subset target = select_target(*oracle, cls, limits);
  LrcProfile profile = build_profile(*oracle, target, params, cls, limits);
  if (matrix) cross_check_expansion(*matrix, profile, cfg);
  return profile_to_json(profile);
}

nlohmann::json run_construct(const std::string& spec_path,
                             const RunConfig& cfg) {
  std::shared_ptr<const ConstructedMatroid> matroid =
      load_spec_matroid(spec_path, "construct");
  return construct_report(*matroid, cfg);
}

nlohmann::json run_family(std::int64_t k, std::optional<int> n,
                          bool with_representation, const RunConfig& cfg) {
  ConstructionSpec spec = generate_perfect_family(k, cfg.r, cfg.delta,
                                                  cfg.t, n);
  std::shared_ptr<const ConstructedMatroid> matroid = build_matroid(spec);
  DerivedParameters derived = derived_parameters(*matroid);
  LocalityParams params = params_from_config(cfg);
  LrcProfile profile =
      build_profile(*matroid, derived.information_set, params,
                    LocalityClass::kInfoSymbol, EnumLimits{cfg.limit_enum});
  if (!profile.perfect)
    fail(ErrorCode::kAssertion,
         "family instance (n = " + std::to_string(profile.n) +
             ") misses its bound: d = " + std::to_string(profile.d) +
             ", bound = " + std::to_string(profile.bound));
  nlohmann::json out;
  out["spec"] = spec_to_json(spec);
  out["profile"] = profile_to_json(profile);
  if (with_representation) {
    RepresentationResult result = represent_with_config(*matroid, cfg);
    out["representation"] = representation_to_json(result);
  }
  return out;
}

nlohmann::json run_represent(const std::string& spec_path,
                             const RunConfig& cfg) {
  std::shared_ptr<const ConstructedMatroid> matroid =
      load_spec_matroid(spec_path, "represent");
  return representation_to_json(represent_with_config(*matroid, cfg));
}

nlohmann::json run_bound(std::int64_t n, double k, const RunConfig& cfg) {
  RankValue kv;
  double rounded = std::round(k);
  if (std::abs(k - rounded) <= kRankEpsilon &&
      std::abs(k) < 9.0e18)
    kv = RankValue::of_int(static_cast<std::int64_t>(std::llround(k)));
  else
    kv = RankValue::of_real(k);
  std::int64_t bound = singleton_bound(n, kv, cfg.r, cfg.delta, cfg.t);
  nlohmann::json j;
  j["n"] = n;
  j["k"] = rank_to_json(kv);
  j["r"] = cfg.r;
  j["delta"] = cfg.delta;
  j["t"] = cfg.t;
  j["bound"] = bound;
  return j;
}

nlohmann::json run_check_axioms(const std::string& input_path,
                                const RunConfig& cfg) {
  nlohmann::json input = parse_json_file(input_path);
  InputKind kind = detect_input_kind(input);
  std::shared_ptr<const RankOracle> oracle;
  const char* input_token = nullptr;
  bool matroid_check = false;
  if (kind == InputKind::kCode) {
    oracle = entropy_oracle(code_from_json(input));
    input_token = "code";
    matroid_check = false;
  } else if (kind == InputKind::kMatrix) {
    oracle = std::make_shared<LinearRankOracle>(matrix_from_json(input));
    input_token = "matrix";
    matroid_check = true;
  } else {
    oracle = load_spec_matroid(input_path, "check-axioms");
    input_token = "spec";
    matroid_check = true;
  }
  CheckMode mode = oracle->ground().n <= 16
                       ? CheckMode::exhaustive()
                       : CheckMode::sampled(cfg.seed, 20000);
  AxiomReport report = matroid_check ? check_matroid(*oracle, mode)
                                     : check_polymatroid(*oracle, mode);
  nlohmann::json j;
  j["input"] = input_token;
  j["check"] = matroid_check ? "matroid" : "polymatroid";
  j["mode"] = mode.kind == CheckMode::Kind::kExhaustive ? "exhaustive"
                                                        : "sampled";
  j["checked"] = report.checked;
  j["ok"] = report.ok();
  nlohmann::json violations = nlohmann::json::array();
  for (const AxiomViolation& v : report.violations) {
    nlohmann::json vj;
    vj["axiom"] = v.axiom;
    nlohmann::json witness = nlohmann::json::array();
    for (Subset w : v.witness) witness.push_back(subset_to_json(w));
    vj["witness"] = std::move(witness);
    vj["values"] = v.values;
    violations.push_back(std::move(vj));
  }
  j["violations"] = std::move(violations);
  return j;
}

std::string render_text(const std::string& command,
                        const nlohmann::json& report) {
  std::ostringstream out;
  if (command == "analyze") {
    render_profile_text(out, report);
  } else if (command == "construct") {
    render_construct_text(out, report);
  } else if (command == "family") {
    render_spec_text(out, report.at("spec"));
    out << "\n";
    render_profile_text(out, report.at("profile"));
    if (report.contains("representation")) {
      out << "\n";
      render_representation_text(out, report.at("representation"));
    }
  } else if (command == "represent") {
    render_representation_text(out, report);
  } else if (command == "bound") {
    render_bound_text(out, report);
  } else if (command == "check-axioms") {
    render_axioms_text(out, report);
  } else {
    fail(ErrorCode::kAssertion, "no text renderer for command " + command);
  }
  return out.str();
}

std::string render_report(const std::string& command,
                          const nlohmann::json& report,
                          const RunConfig& cfg) {
  std::string text;
  if (cfg.format == "json")
    text = dump_deterministic(report);
  else if (cfg.format == "text")
    text = render_text(command, report);
  else
    fail(ErrorCode::kParse,
         "unknown format \"" + cfg.format + "\" (expected json or text)");
  if (!cfg.out_path.empty()) write_text_file(cfg.out_path, text);
  return text;
}

}  // namespace lrc
