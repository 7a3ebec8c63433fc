#pragma once

#include <string>

#include "json.hpp"
#include "lrc/analysis.hpp"
#include "lrc/code.hpp"
#include "lrc/construction.hpp"
#include "lrc/linear.hpp"
#include "lrc/represent.hpp"

namespace lrc {

// File and text parsing; malformed input reports a parse error.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json parse_json_file(const std::string& path);

// Keys are serialized in sorted order, so equal values give equal bytes.
std::string dump_deterministic(const nlohmann::json& j);

// Subsets on the wire are ascending 1-based label arrays.
nlohmann::json subset_to_json(Subset x);
Subset subset_from_json(const nlohmann::json& j, int n);

// {"s": int, "n": int, "words": [[int,...],...]}
Code code_from_json(const nlohmann::json& j);
nlohmann::json code_to_json(const Code& code);

// {"q": int, "k": int, "n": int, "rows": [[int,...],...]}
GeneratorMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const GeneratorMatrix& matrix);

// {"n": int, "k": int, "blocks": [{"elements": [int,...], "rank": int},...]}
ConstructionSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ConstructionSpec& spec);

enum class InputKind { kCode, kMatrix, kSpec };

// Distinguishes the three input formats by their signature key
// (words / rows / blocks).
InputKind detect_input_kind(const nlohmann::json& j);

const char* locality_class_token(LocalityClass cls);  // info | 1info | all
LocalityClass locality_class_from_token(const std::string& token);

nlohmann::json profile_to_json(const LrcProfile& profile);
nlohmann::json verify_report_to_json(const VerifyReport& report);

}  // namespace lrc
