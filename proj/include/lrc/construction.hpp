#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lrc/polymatroid.hpp"
#include "lrc/rank.hpp"

namespace lrc {

struct ConstructionBlock {
  Subset elements = 0;
  std::int64_t rank = 0;  // assigned rank of the block, 0 < rank < |elements|
};

// A matroid presented by atoms: a target rank k and blocks F_i with assigned
// ranks. Valid specs satisfy, for every block i,
//   (block-rank-range)  0 < rank_i < |F_i|,
//   (total-rank)        k <= |union of all blocks| - sum_i (|F_i| - rank_i),
//   (block-overlap)     |F_i  meet  union of the other blocks| < rank_i.
struct ConstructionSpec {
  int n = 0;
  std::int64_t k = 0;
  std::vector<ConstructionBlock> blocks;
};

struct SpecViolation {
  std::string condition;     // "structure", "block-rank-range", "total-rank",
                             // "block-overlap"
  std::optional<int> block;  // 0-based block index when block-specific
  std::string message;
};

struct SpecReport {
  std::vector<SpecViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every condition and reports all violations with witnesses; never
// throws on semantic problems (structural nonsense short-circuits).
SpecReport validate_spec(const ConstructionSpec& spec);

// The matroid whose cyclic flats are exactly: every union F_I of blocks whose
// derived rank min(|F_I| - sum eta_i, k) stays below k (deduplicated unions
// keep the smallest rank), plus the full ground set at rank k. Ranks follow
// rank(X) = min over those flats F of rank(F) + |X \ F|.
class ConstructedMatroid final : public RankOracle {
 public:
  GroundSet ground() const override { return GroundSet{spec_.n}; }
  RankValue rank(Subset x) const override;
  bool integral() const override { return true; }
  std::optional<std::vector<SetWithRank>> explicit_cyclic_flats()
      const override {
    return flats_;
  }

  const ConstructionSpec& spec() const { return spec_; }
  // Sorted by (size, bitmask); the full ground set is the last entry.
  const std::vector<SetWithRank>& flats() const { return flats_; }

 private:
  friend std::shared_ptr<const ConstructedMatroid> build_matroid(
      const ConstructionSpec& spec);
  ConstructedMatroid() = default;

  ConstructionSpec spec_;
  std::vector<SetWithRank> flats_;
};

// Validates, then enumerates all 2^m block unions (m capped at 20).
std::shared_ptr<const ConstructedMatroid> build_matroid(
    const ConstructionSpec& spec);

struct DerivedBlockLocality {
  Subset block = 0;
  std::int64_t rank = 0;   // locality r of the block
  std::int64_t delta = 0;  // |block| - rank + 1
  bool repair_verified = false;
};

struct DerivedParameters {
  int n = 0;
  std::int64_t k = 0;
  int d = 0;  // n - k + 1 - max eta over the proper flats
  std::vector<DerivedBlockLocality> blocks;
  Subset information_set = 0;  // lexicographically smallest
};

// Code parameters read off the flats: the distance formula, per-block
// (r, delta) repair locality verified element by element, and the
// lexicographically smallest K with |K| = k and |K meet F| <= rank(F) for
// every flat F (which is exactly an information set here).
DerivedParameters derived_parameters(const ConstructedMatroid& matroid);

// The equality-case family: n = k(t(r+delta-2)+1); hubs 0..k-1 each carry t
// blocks {hub} + (r+delta-2) fresh elements, every block at rank r. A larger
// requested n must exceed the base by a multiple of r+delta-2; the surplus
// becomes extra full blocks attached to hubs round-robin. r = 1 is rejected:
// a second block on the same hub would overlap the rest of the blocks in at
// least rank-many elements, violating the block-overlap condition.
ConstructionSpec generate_perfect_family(std::int64_t k, int r, int delta,
                                         int t,
                                         std::optional<int> n = std::nullopt);

}  // namespace lrc
