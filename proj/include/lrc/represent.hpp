#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrc/construction.hpp"
#include "lrc/linear.hpp"

namespace lrc {

enum class VerifyPolicyKind { kAuto, kExhaustive, kStructural };

struct VerifyPolicy {
  VerifyPolicyKind kind = VerifyPolicyKind::kAuto;
  int samples = 10000;        // random subsets under the structural policy
  std::uint64_t seed = 1729;  // stream those subsets are drawn from
};

struct VerifyMismatch {
  Subset witness = 0;
  std::int64_t matrix_rank = 0;
  std::int64_t matroid_rank = 0;
};

struct VerifyReport {
  bool exhaustive = false;   // policy actually applied
  std::int64_t checked = 0;  // subsets compared
  std::vector<VerifyMismatch> mismatches;  // capped at the first few
  bool passed() const { return mismatches.empty(); }
};

// Compares column ranks of the matrix against the matroid's ranks.
// Exhaustive over all 2^n subsets when n <= 18 (or when forced; larger n is
// refused). Structural otherwise: every stored flat, every singleton, every
// flat extended by one outside element, then `samples` seeded random subsets.
VerifyReport verify_representation(const GeneratorMatrix& matrix,
                                   const ConstructedMatroid& matroid,
                                   const VerifyPolicy& policy = {});

struct RepresentOptions {
  std::optional<std::uint64_t> q;  // default: smallest prime >= 2^min(n,30)
  std::uint64_t seed = 1729;
  int max_attempts = 8;
  VerifyPolicy verify;
};

struct RepresentationResult {
  GeneratorMatrix matrix;
  VerifyReport verified;
  int attempts = 0;        // attempts consumed, the successful one included
  std::uint64_t seed = 0;  // base seed the per-attempt streams derive from
  std::vector<std::string> warnings;
};

// Draws one uniformly random subspace per block (dimension = block rank,
// capped at k) and each element's column uniformly from the nonzero vectors
// of the intersection of the subspaces of the blocks containing it (the full
// space for uncovered elements), then verifies the ranks match; fresh seeds
// are derived per attempt until verification passes. Fails up front when the
// blocks containing some element force a generically zero intersection, and
// after max_attempts with the last failure witness otherwise.
RepresentationResult represent(const ConstructedMatroid& matroid,
                               const RepresentOptions& options = {});

}  // namespace lrc
