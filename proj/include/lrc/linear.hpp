#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/rank.hpp"

namespace lrc {

// Deterministic Miller-Rabin (witness set exact for all 64-bit inputs).
bool is_prime_u64(std::uint64_t v);

namespace ff {
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t inv(std::uint64_t a, std::uint64_t q);  // q prime, a != 0
}  // namespace ff

// Prime field F_q with 2 <= q < 2^61 (products fit 128-bit intermediates
// with margin).
struct PrimeField {
  std::uint64_t q = 2;

  explicit PrimeField(std::uint64_t q_in);
};

// Smallest prime >= bound; bound in [2, 2^61).
PrimeField smallest_prime_at_least(std::uint64_t bound);

// k x n generator matrix over F_q, row-major, entries reduced mod q,
// full row rank.
class GeneratorMatrix {
 public:
  // Validates shape, reduces entries, verifies full row rank.
  static GeneratorMatrix make(PrimeField field, int k_rows, int n_cols,
                              std::vector<std::uint64_t> entries);
  // Same, but reports rank deficiency as nullopt instead of throwing.
  static std::optional<GeneratorMatrix> try_make(
      PrimeField field, int k_rows, int n_cols,
      std::vector<std::uint64_t> entries);

  const PrimeField& field() const { return field_; }
  int k_rows() const { return k_; }
  int n_cols() const { return n_; }
  std::uint64_t at(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * n_ + c];
  }
  const std::vector<std::uint64_t>& entries() const { return entries_; }

 private:
  GeneratorMatrix(PrimeField field, int k, int n,
                  std::vector<std::uint64_t> entries)
      : field_(field), k_(k), n_(n), entries_(std::move(entries)) {}

  PrimeField field_;
  int k_;
  int n_;
  std::vector<std::uint64_t> entries_;
};

// Rank of the column submatrix indexed by cols. Fraction-free forward
// elimination, pivoting on the first nonzero entry.
int column_rank(const GeneratorMatrix& g, Subset cols);

// All q^k codewords m*G as a Code with alphabet size q. Refuses expansions
// beyond `limit` words (and alphabets beyond 32-bit symbols).
Code expand_codewords(const GeneratorMatrix& g,
                      std::int64_t limit = std::int64_t{1} << 20);

// Column matroid of a generator matrix: rho(X) = column rank. Ranks are
// exact integers, so the inherited predicates are exact.
class LinearRankOracle final : public RankOracle {
 public:
  explicit LinearRankOracle(GeneratorMatrix g) : g_(std::move(g)) {}

  GroundSet ground() const override { return GroundSet{g_.n_cols()}; }
  RankValue rank(Subset x) const override {
    return RankValue::of_int(column_rank(g_, x));
  }
  bool integral() const override { return true; }
  const GeneratorMatrix& matrix() const { return g_; }

 private:
  GeneratorMatrix g_;
};

}  // namespace lrc
