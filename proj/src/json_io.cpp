#include "lrc/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lrc/errors.hpp"
#include "lrc/subsets.hpp"

namespace lrc {
namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object())
    fail(ErrorCode::kParse, "expected a JSON object with a \"" +
                                std::string(key) + "\" key");
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorCode::kParse, "missing key \"" + std::string(key) + "\"");
  return *it;
}

std::int64_t int_field(const nlohmann::json& j, const char* key,
                       std::int64_t lo, std::int64_t hi) {
  const nlohmann::json& v = field(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    fail(ErrorCode::kParse, "\"" + std::string(key) + "\" must be an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
    fail(ErrorCode::kParse, "\"" + std::string(key) + "\" must be at most " +
                                std::to_string(hi));
  std::int64_t value = v.get<std::int64_t>();
  if (value < lo || value > hi)
    fail(ErrorCode::kParse, "\"" + std::string(key) + "\" must be in [" +
                                std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  return value;
}

const nlohmann::json& array_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = field(j, key);
  if (!v.is_array())
    fail(ErrorCode::kParse, "\"" + std::string(key) + "\" must be an array");
  return v;
}

std::int64_t int_value(const nlohmann::json& v, const char* what,
                       std::int64_t lo, std::int64_t hi) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    fail(ErrorCode::kParse, std::string(what) + " must be an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
    fail(ErrorCode::kParse,
         std::string(what) + " must be at most " + std::to_string(hi));
  std::int64_t value = v.get<std::int64_t>();
  if (value < lo || value > hi)
    fail(ErrorCode::kParse, std::string(what) + " must be in [" +
                                std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  return value;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kParse, "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kParse, "error while reading file: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kInvalidInput, "cannot write file: " + path);
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kInvalidInput, "error while writing file: " + path);
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
}

nlohmann::json parse_json_file(const std::string& path) {
  return parse_json_text(read_text_file(path));
}

std::string dump_deterministic(const nlohmann::json& j) {
  // nlohmann::json stores object keys in sorted order, so this is
  // byte-stable across runs for equal values.
  return j.dump(2) + "\n";
}

nlohmann::json subset_to_json(Subset x) {
  nlohmann::json arr = nlohmann::json::array();
  for (int label : labels(x)) arr.push_back(label);
  return arr;
}

Subset subset_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array())
    fail(ErrorCode::kParse, "expected an array of element labels");
  Subset s = 0;
  for (const nlohmann::json& item : j) {
    std::int64_t label = int_value(item, "element label", 1, n);
    Subset bit = singleton(static_cast<int>(label - 1));
    if (s & bit)
      fail(ErrorCode::kParse,
           "duplicate element label " + std::to_string(label));
    s |= bit;
  }
  return s;
}

Code code_from_json(const nlohmann::json& j) {
  std::int64_t s = int_field(j, "s", 2, (std::int64_t{1} << 32) - 1);
  std::int64_t n = int_field(j, "n", 1, kMaxGroundSize);
  const nlohmann::json& words_j = array_field(j, "words");
  std::vector<std::vector<std::uint32_t>> words;
  words.reserve(words_j.size());
  for (const nlohmann::json& row : words_j) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != n)
      fail(ErrorCode::kParse,
           "every word must be an array of " + std::to_string(n) +
               " symbols");
    std::vector<std::uint32_t> word;
    word.reserve(row.size());
    for (const nlohmann::json& sym : row)
      word.push_back(
          static_cast<std::uint32_t>(int_value(sym, "symbol", 0, s - 1)));
    words.push_back(std::move(word));
  }
  return Code::from_words(static_cast<std::uint32_t>(s),
                          static_cast<int>(n), std::move(words));
}

nlohmann::json code_to_json(const Code& code) {
  nlohmann::json j;
  j["s"] = code.s();
  j["n"] = code.n();
  nlohmann::json words = nlohmann::json::array();
  for (std::size_t i = 0; i < code.size(); ++i)
    words.push_back(code.word_vec(i));
  j["words"] = std::move(words);
  return j;
}

GeneratorMatrix matrix_from_json(const nlohmann::json& j) {
  std::int64_t q =
      int_field(j, "q", 2, (std::int64_t{1} << 61) - 1);
  std::int64_t k = int_field(j, "k", 1, kMaxGroundSize);
  std::int64_t n = int_field(j, "n", 1, kMaxGroundSize);
  const nlohmann::json& rows_j = array_field(j, "rows");
  if (static_cast<std::int64_t>(rows_j.size()) != k)
    fail(ErrorCode::kParse,
         "\"rows\" must hold exactly k = " + std::to_string(k) + " rows");
  std::vector<std::uint64_t> entries;
  entries.reserve(static_cast<std::size_t>(k * n));
  for (const nlohmann::json& row : rows_j) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != n)
      fail(ErrorCode::kParse,
           "every row must be an array of " + std::to_string(n) +
               " entries");
    for (const nlohmann::json& entry : row)
      entries.push_back(
          static_cast<std::uint64_t>(int_value(entry, "entry", 0, q - 1)));
  }
  return GeneratorMatrix::make(PrimeField{static_cast<std::uint64_t>(q)},
                               static_cast<int>(k), static_cast<int>(n),
                               std::move(entries));
}

nlohmann::json matrix_to_json(const GeneratorMatrix& matrix) {
  nlohmann::json j;
  j["q"] = matrix.field().q;
  j["k"] = matrix.k_rows();
  j["n"] = matrix.n_cols();
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < matrix.k_rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < matrix.n_cols(); ++c) row.push_back(matrix.at(r, c));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ConstructionSpec spec_from_json(const nlohmann::json& j) {
  ConstructionSpec spec;
  spec.n = static_cast<int>(int_field(j, "n", 1, kMaxGroundSize));
  spec.k = int_field(j, "k", std::numeric_limits<std::int64_t>::min() / 2,
                     std::numeric_limits<std::int64_t>::max() / 2);
  const nlohmann::json& blocks_j = array_field(j, "blocks");
  for (const nlohmann::json& b : blocks_j) {
    ConstructionBlock block;
    block.elements = subset_from_json(field(b, "elements"), spec.n);
    block.rank = int_value(field(b, "rank"), "block rank",
                           std::numeric_limits<std::int64_t>::min() / 2,
                           std::numeric_limits<std::int64_t>::max() / 2);
    spec.blocks.push_back(block);
  }
  return spec;
}

nlohmann::json spec_to_json(const ConstructionSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.n;
  j["k"] = spec.k;
  nlohmann::json blocks = nlohmann::json::array();
  for (const ConstructionBlock& b : spec.blocks) {
    nlohmann::json bj;
    bj["elements"] = subset_to_json(b.elements);
    bj["rank"] = b.rank;
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

InputKind detect_input_kind(const nlohmann::json& j) {
  if (!j.is_object())
    fail(ErrorCode::kParse, "input must be a JSON object");
  int hits = 0;
  InputKind kind = InputKind::kCode;
  if (j.contains("words")) {
    kind = InputKind::kCode;
    ++hits;
  }
  if (j.contains("rows")) {
    kind = InputKind::kMatrix;
    ++hits;
  }
  if (j.contains("blocks")) {
    kind = InputKind::kSpec;
    ++hits;
  }
  if (hits != 1)
    fail(ErrorCode::kParse,
         "input must contain exactly one of \"words\" (a code), \"rows\" (a "
         "matrix), or \"blocks\" (a construction spec)");
  return kind;
}

const char* locality_class_token(LocalityClass cls) {
  switch (cls) {
    case LocalityClass::kInfoSymbol:
      return "info";
    case LocalityClass::kOneInfoSymbol:
      return "1info";
    case LocalityClass::kAllSymbol:
      return "all";
  }
  fail(ErrorCode::kAssertion, "unknown locality class");
}

LocalityClass locality_class_from_token(const std::string& token) {
  if (token == "info") return LocalityClass::kInfoSymbol;
  if (token == "1info") return LocalityClass::kOneInfoSymbol;
  if (token == "all") return LocalityClass::kAllSymbol;
  fail(ErrorCode::kParse, "unknown locality class \"" + token +
                              "\" (expected info, 1info, or all)");
}

nlohmann::json profile_to_json(const LrcProfile& profile) {
  nlohmann::json j;
  j["n"] = profile.n;
  if (profile.k.is_exact())
    j["k"] = *profile.k.exact_integer;
  else
    j["k"] = profile.k.numeric;
  j["d"] = profile.d;
  j["class"] = locality_class_token(profile.locality_class);
  j["bound"] = profile.bound;
  j["perfect"] = profile.perfect;
  nlohmann::json avail = nlohmann::json::array();
  for (const AvailabilityRecord& rec : profile.availability) {
    nlohmann::json r;
    r["element"] = rec.element + 1;
    nlohmann::json sets = nlohmann::json::array();
    for (Subset s : rec.sets) sets.push_back(subset_to_json(s));
    r["sets"] = std::move(sets);
    avail.push_back(std::move(r));
  }
  j["availability"] = std::move(avail);
  return j;
}

nlohmann::json verify_report_to_json(const VerifyReport& report) {
  nlohmann::json j;
  j["policy"] = report.exhaustive ? "exhaustive" : "structural";
  j["checked"] = report.checked;
  j["passed"] = report.passed();
  nlohmann::json mismatches = nlohmann::json::array();
  for (const VerifyMismatch& m : report.mismatches) {
    nlohmann::json mj;
    mj["subset"] = subset_to_json(m.witness);
    mj["matrix_rank"] = m.matrix_rank;
    mj["matroid_rank"] = m.matroid_rank;
    mismatches.push_back(std::move(mj));
  }
  j["mismatches"] = std::move(mismatches);
  return j;
}

}  // namespace lrc
