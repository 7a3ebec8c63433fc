#pragma once

#include <memory>
#include <vector>

#include "lrc/rank.hpp"

namespace lrc {

struct EnumLimits {
  // Generic operations that sweep all 2^n subsets refuse larger ground sets.
  int max_n = 20;
};

// Verifies rho(empty) = 0, monotonicity, and submodularity. Exhaustive mode
// checks every single-element extension (monotonicity) and every unordered
// subset pair (submodularity) and requires n <= 16; sampled mode draws
// `trials` random pairs from the given seed. Violations carry witnesses.
AxiomReport check_polymatroid(const RankOracle& oracle, const CheckMode& mode);

// check_polymatroid plus integrality of every rank and rho(X) <= |X|.
AxiomReport check_matroid(const RankOracle& oracle, const CheckMode& mode);

// eta(X) = |X| - rho(X).
RankValue eta(const RankOracle& oracle, Subset x);

// cl(X) = X together with every y whose addition keeps the rank, decided by
// the oracle's exact rank_equal predicate.
Subset closure(const RankOracle& oracle, Subset x);

bool is_flat(const RankOracle& oracle, Subset x);

// X is cyclic iff no element drops the rank by a full unit when removed
// (the empty set vacuously). Exactness comes from the oracle's unit_drop.
bool is_cyclic(const RankOracle& oracle, Subset x);

// All cyclic flats with their ranks, sorted by (size, bitmask). Oracles with
// an explicit list answer from it unless use_explicit is false (the generic
// enumeration is the independent route used to validate those lists).
std::vector<SetWithRank> cyclic_flats(const RankOracle& oracle,
                                      const EnumLimits& limits = {},
                                      bool use_explicit = true);

// Union of all cyclic flats.
Subset one_Z(const RankOracle& oracle, const EnumLimits& limits = {});

// Restriction to y: ground set relabeled 0..|y|-1, ranks delegated.
std::shared_ptr<const RankOracle> restrict_to(
    std::shared_ptr<const RankOracle> oracle, Subset y);

// Scales ranks by 1/max_singleton_rank so every singleton rank is <= 1.
// Equality predicates delegate to the base oracle (scaling preserves them);
// unit_drop is re-expressed against the new unit. A zero oracle, or one
// whose maximum singleton rank is already 1, is returned unchanged.
std::shared_ptr<const RankOracle> normalize_to_unit(
    std::shared_ptr<const RankOracle> oracle);

}  // namespace lrc
