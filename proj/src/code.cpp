#include "lrc/code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>
#include <unordered_set>

#include "lrc/errors.hpp"
#include "lrc/linear.hpp"

namespace lrc {

namespace {

int symbol_bits(std::uint32_t s) {
  return std::max(1, static_cast<int>(std::bit_width(s - 1)));
}

bool packable(Subset x, int bits) { return set_size(x) * bits <= 64; }

std::uint64_t pack_key(const std::uint32_t* word, const std::vector<int>& coords,
                       int bits) {
  std::uint64_t key = 0;
  for (int e : coords) key = (key << bits) | word[e];
  return key;
}

std::vector<std::uint32_t> project_word(const std::uint32_t* word,
                                        const std::vector<int>& coords) {
  std::vector<std::uint32_t> out;
  out.reserve(coords.size());
  for (int e : coords) out.push_back(word[e]);
  return out;
}

struct FiberSummary {
  std::size_t fibers = 0;
  bool uniform = false;
  std::size_t first_count = 0;
};

template <class Map>
FiberSummary summarize(const Map& counts) {
  FiberSummary out;
  out.fibers = counts.size();
  out.uniform = true;
  bool first = true;
  for (const auto& [key, c] : counts) {
    (void)key;
    if (first) {
      out.first_count = c;
      first = false;
    } else if (c != out.first_count) {
      out.uniform = false;
    }
  }
  return out;
}

FiberSummary fiber_summary(const Code& code, Subset x, int bits) {
  std::vector<int> coords = elements(x);
  if (packable(x, bits)) {
    std::unordered_map<std::uint64_t, std::size_t> counts;
    counts.reserve(code.size() * 2);
    for (std::size_t i = 0; i < code.size(); ++i)
      ++counts[pack_key(code.word(i), coords, bits)];
    return summarize(counts);
  }
  std::map<std::vector<std::uint32_t>, std::size_t> counts;
  for (std::size_t i = 0; i < code.size(); ++i)
    ++counts[project_word(code.word(i), coords)];
  return summarize(counts);
}

// log_s(fibers) when fibers is an exact power of s.
std::optional<std::int64_t> exact_log(std::uint32_t s, std::size_t fibers) {
  std::int64_t m = 0;
  std::size_t p = 1;
  while (p < fibers) {
    if (p > fibers / s) return std::nullopt;
    p *= s;
    ++m;
  }
  return p == fibers ? std::optional<std::int64_t>(m) : std::nullopt;
}

RankValue rank_from_counts(const Code& code, Subset x, int bits) {
  std::vector<int> coords = elements(x);
  double total = static_cast<double>(code.size());
  double log_s = std::log(static_cast<double>(code.s()));
  double sum_clogc = 0.0;
  FiberSummary summary;
  auto accumulate = [&](const auto& counts) {
    for (const auto& [key, c] : counts) {
      (void)key;
      if (c > 1) sum_clogc += static_cast<double>(c) *
                              std::log(static_cast<double>(c));
    }
    summary = summarize(counts);
  };
  if (packable(x, bits)) {
    std::unordered_map<std::uint64_t, std::size_t> counts;
    counts.reserve(code.size() * 2);
    for (std::size_t i = 0; i < code.size(); ++i)
      ++counts[pack_key(code.word(i), coords, bits)];
    accumulate(counts);
  } else {
    std::map<std::vector<std::uint32_t>, std::size_t> counts;
    for (std::size_t i = 0; i < code.size(); ++i)
      ++counts[project_word(code.word(i), coords)];
    accumulate(counts);
  }
  RankValue out =
      RankValue::of_real((std::log(total) - sum_clogc / total) / log_s);
  if (summary.uniform) {
    if (auto m = exact_log(code.s(), summary.fibers)) {
      out.exact_integer = *m;
      out.numeric = static_cast<double>(*m);
    }
  }
  return out;
}

}  // namespace

Code Code::from_words(std::uint32_t s, int n,
                      std::vector<std::vector<std::uint32_t>> words) {
  if (s < 2) fail(ErrorCode::kParse, "alphabet size must be at least 2");
  if (n < 1 || n > kMaxGroundSize)
    fail(ErrorCode::kParse, "code length must be in [1, 64]");
  if (words.empty()) fail(ErrorCode::kParse, "a code needs at least one word");
  for (const auto& w : words) {
    if (static_cast<int>(w.size()) != n)
      fail(ErrorCode::kParse, "all words must have length " + std::to_string(n));
    for (std::uint32_t sym : w)
      if (sym >= s)
        fail(ErrorCode::kParse, "symbol " + std::to_string(sym) +
                                    " outside alphabet of size " +
                                    std::to_string(s));
  }
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end())
    fail(ErrorCode::kParse, "duplicate codeword");
  Code code;
  code.s_ = s;
  code.n_ = n;
  code.count_ = words.size();
  code.flat_.reserve(words.size() * static_cast<std::size_t>(n));
  for (const auto& w : words)
    code.flat_.insert(code.flat_.end(), w.begin(), w.end());
  return code;
}

std::vector<std::uint32_t> Code::word_vec(std::size_t i) const {
  const std::uint32_t* w = word(i);
  return std::vector<std::uint32_t>(w, w + n_);
}

double Code::dimension() const {
  return std::log(static_cast<double>(count_)) /
         std::log(static_cast<double>(s_));
}

ProjectionTable project(const Code& code, Subset x) {
  if (!is_subset_of(x, GroundSet{code.n()}.full()))
    fail(ErrorCode::kInvalidInput, "projection set outside the ground set");
  ProjectionTable table;
  table.x = x;
  std::vector<int> coords = elements(x);
  for (std::size_t i = 0; i < code.size(); ++i)
    ++table.fibers[project_word(code.word(i), coords)];
  return table;
}

RankValue entropy_rank(const Code& code, Subset x) {
  return rank_from_counts(code, x, symbol_bits(code.s()));
}

EntropyOracle::EntropyOracle(Code code)
    : code_(std::move(code)), bits_per_symbol_(symbol_bits(code_.s())) {}

EntropyOracle::ProjStats EntropyOracle::stats(Subset x) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;
  ProjStats st;
  FiberSummary summary = fiber_summary(code_, x, bits_per_symbol_);
  st.fibers = summary.fibers;
  st.uniform = summary.uniform;
  st.rank = rank_from_counts(code_, x, bits_per_symbol_);
  cache_.emplace(x, st);
  return st;
}

RankValue EntropyOracle::rank(Subset x) const { return stats(x).rank; }

bool EntropyOracle::rank_equal(Subset x, Subset y) const {
  return stats(x).fibers == stats(y).fibers;
}

bool EntropyOracle::unit_drop(Subset x, int e) const {
  // Exact certificate: group codewords by their projection onto X\{e} and
  // require every group to contain all s symbols at coordinate e, each with
  // the same count.
  Subset base = without_element(x, e);
  std::uint32_t s = code_.s();
  if (code_.size() % s != 0) return false;
  std::vector<int> coords = elements(base);
  int bits = bits_per_symbol_;
  struct Group {
    std::size_t symbols = 0;
    std::size_t first = 0;
    bool equal = true;
  };
  bool all_ok = true;
  auto fold = [&](auto& composite) {
    // composite maps (projection key, symbol) -> count
    std::map<typename std::decay_t<decltype(composite)>::key_type::first_type,
             Group>
        groups;
    for (const auto& [key, c] : composite) {
      Group& g = groups[key.first];
      if (g.symbols == 0) g.first = c;
      ++g.symbols;
      if (c != g.first) g.equal = false;
    }
    for (const auto& [key, g] : groups) {
      (void)key;
      if (g.symbols != s || !g.equal) {
        all_ok = false;
        break;
      }
    }
  };
  if (packable(x, bits)) {
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::size_t> composite;
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const std::uint32_t* w = code_.word(i);
      ++composite[{pack_key(w, coords, bits), w[e]}];
    }
    fold(composite);
  } else {
    std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, std::size_t>
        composite;
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const std::uint32_t* w = code_.word(i);
      ++composite[{project_word(w, coords), w[e]}];
    }
    fold(composite);
  }
  return all_ok;
}

std::size_t EntropyOracle::projection_count(Subset x) const {
  return stats(x).fibers;
}

bool EntropyOracle::projection_uniform(Subset x) const {
  return stats(x).uniform;
}

std::shared_ptr<const EntropyOracle> entropy_oracle(const Code& code) {
  return std::make_shared<EntropyOracle>(code);
}

int brute_force_distance(const Code& code, const EnumLimits& limits) {
  if (code.size() < 2)
    fail(ErrorCode::kInvalidInput,
         "minimum distance undefined for a single-word code");
  int n = code.n();
  if (n > limits.max_n)
    fail(ErrorCode::kLimit,
         "distance enumeration over 2^" + std::to_string(n) +
             " subsets exceeds the cap (n <= " + std::to_string(limits.max_n) +
             ")");
  EntropyOracle oracle{code};
  Subset full = GroundSet{n}.full();
  std::vector<int> all = elements(full);
  for (int w = 1; w <= n; ++w) {
    bool found = !for_each_combination(all, w, [&](Subset x) {
      return oracle.projection_count(full & ~x) >= code.size();
    });
    if (found) return w;
  }
  fail(ErrorCode::kAssertion, "no deletion set reduced the code");  // |C| >= 2
}

CodeClassification classify(const Code& code, const EnumLimits& limits) {
  int n = code.n();
  if (n > limits.max_n)
    fail(ErrorCode::kLimit,
         "classification sweeps 2^" + std::to_string(n) +
             " projections, above the cap (n <= " +
             std::to_string(limits.max_n) + ")");
  EntropyOracle oracle{code};
  CodeClassification out;
  out.quasi_uniform = true;
  out.integral_rank = true;
  Subset full = GroundSet{n}.full();
  for (Subset x = 0;; ++x) {
    if (!oracle.projection_uniform(x)) out.quasi_uniform = false;
    double v = oracle.rank(x).numeric;
    if (std::abs(v - std::round(v)) > kRankEpsilon) out.integral_rank = false;
    if (x == full) break;
  }
  out.linear_over_prime_field = false;
  if (is_prime_u64(code.s())) {
    std::uint32_t s = code.s();
    std::set<std::vector<std::uint32_t>> members;
    for (std::size_t i = 0; i < code.size(); ++i)
      members.insert(code.word_vec(i));
    bool closed =
        members.count(std::vector<std::uint32_t>(static_cast<std::size_t>(n),
                                                 0)) > 0;
    std::vector<std::uint32_t> sum(static_cast<std::size_t>(n));
    for (std::size_t i = 0; closed && i < code.size(); ++i) {
      for (std::size_t j = i; closed && j < code.size(); ++j) {
        const std::uint32_t* a = code.word(i);
        const std::uint32_t* b = code.word(j);
        for (int c = 0; c < n; ++c) {
          std::uint32_t v = a[c] + b[c];
          sum[static_cast<std::size_t>(c)] = v >= s ? v - s : v;
        }
        if (!members.count(sum)) closed = false;
      }
    }
    out.linear_over_prime_field = closed;
  }
  return out;
}

}  // namespace lrc
