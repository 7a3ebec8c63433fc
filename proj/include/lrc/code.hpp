#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "lrc/polymatroid.hpp"
#include "lrc/rank.hpp"

namespace lrc {

// A block code: a set of distinct length-n words over symbols 0..s-1 with
// the uniform distribution on codewords.
class Code {
 public:
  // Validates symbol ranges and distinctness; words are stored sorted.
  static Code from_words(std::uint32_t s, int n,
                         std::vector<std::vector<std::uint32_t>> words);

  std::uint32_t s() const { return s_; }
  int n() const { return n_; }
  std::size_t size() const { return count_; }
  const std::uint32_t* word(std::size_t i) const {
    return flat_.data() + i * static_cast<std::size_t>(n_);
  }
  std::vector<std::uint32_t> word_vec(std::size_t i) const;

  // log_s |C| (the code's dimension as a real number).
  double dimension() const;

 private:
  Code() = default;
  std::uint32_t s_ = 2;
  int n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> flat_;  // row-major
};

// Projection of the codeword multiset onto coordinate set x: each distinct
// projected tuple with its fiber count. Counts sum to |C|.
struct ProjectionTable {
  Subset x = 0;
  std::map<std::vector<std::uint32_t>, std::size_t> fibers;
};

ProjectionTable project(const Code& code, Subset x);

// rho_C(X) = H(projection onto X), base-s entropy of the uniform codeword
// distribution: log_s|C| - (1/|C|) * sum_z c_z log_s c_z. When all fibers
// have equal counts and |C_X| is a power of s, the exact integer log is
// recorded.
RankValue entropy_rank(const Code& code, Subset x);

// The polymatroid induced by a code. rank_equal and unit_drop are decided
// by exact counting certificates (projection cardinalities resp. uniform
// conditional fibers), never by comparing entropies. Projection statistics
// are cached behind a mutex; concurrent readers are safe.
class EntropyOracle final : public RankOracle {
 public:
  explicit EntropyOracle(Code code);

  GroundSet ground() const override { return GroundSet{code_.n()}; }
  RankValue rank(Subset x) const override;
  // |C_X| == |C_Y| certifies rho(X) == rho(Y) for nested X, Y.
  bool rank_equal(Subset x, Subset y) const override;
  // Drop is exactly 1 iff every fiber of X\{e} extends by all s symbols
  // with equal counts.
  bool unit_drop(Subset x, int e) const override;

  const Code& code() const { return code_; }
  std::size_t projection_count(Subset x) const;  // |C_X|
  bool projection_uniform(Subset x) const;       // equal fiber counts

 private:
  struct ProjStats {
    std::size_t fibers = 0;
    bool uniform = false;
    RankValue rank;
  };
  ProjStats stats(Subset x) const;

  Code code_;
  int bits_per_symbol_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Subset, ProjStats> cache_;
};

std::shared_ptr<const EntropyOracle> entropy_oracle(const Code& code);

// Minimum Hamming distance via the projection characterization: the least
// |X| whose deletion loses codewords, i.e. |C_{E\X}| < |C|. Needs |C| >= 2
// and n within the enumeration cap. Integer comparisons only.
int brute_force_distance(const Code& code, const EnumLimits& limits = {});

struct CodeClassification {
  bool quasi_uniform = false;   // every projection has equal fiber counts
  bool integral_rank = false;   // every entropy rank is an integer
  bool linear_over_prime_field = false;  // s prime and words additively closed
};

CodeClassification classify(const Code& code, const EnumLimits& limits = {});

}  // namespace lrc
