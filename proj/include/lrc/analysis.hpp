#pragma once

#include <optional>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/polymatroid.hpp"
#include "lrc/rank.hpp"

namespace lrc {

struct LocalityParams {
  int r = 1;
  int delta = 2;
  int t = 1;
  // Primed repair condition: recovery sets Y are drawn from all of R rather
  // than R \ {x}.
  bool primed = false;

  void validate() const;
};

struct RepairSetRecord {
  int element = 0;  // 0-based
  Subset set = 0;
  LocalityParams params;  // t plays no role for a single repair set
};

struct AvailabilityRecord {
  int element = 0;               // 0-based
  std::vector<Subset> sets;      // t repair sets, pairwise meeting in {element}
};

enum class LocalityClass { kInfoSymbol, kOneInfoSymbol, kAllSymbol };

// d = min{|X| : rho(E\X) < rho(E)}, swept over all 2^n subsets with the
// oracle's exact rank_equal. Needs rank(E) > 0 and n within the cap.
int min_distance(const RankOracle& oracle, const EnumLimits& limits = {});

// d = floor(n - k + 1 - max{eta(Y) : Y in Z \ {1_Z}}). Requires 1_Z = E
// (reported with the uncovered elements otherwise) and k > 0.
int min_distance_via_cyclic_flats(const RankOracle& oracle,
                                  const EnumLimits& limits = {});

// Matroid-only route that avoids the 2^n sweep: d = n - max |cl(T)| over
// all (k-1)-subsets T, since every maximal rank-deficient set is a closure
// of such a T. Requires an integral oracle with k > 0.
int min_distance_via_hyperplanes(const RankOracle& oracle);

// R repairs x under (r, delta): x in R, |R| <= r + delta - 1, and every
// size-(|R| - delta + 1) subset of R\{x} (of R when primed) already has the
// rank of R. Sizes below zero clamp to the empty set.
bool is_repair_set(const RankOracle& oracle, int x, Subset r_set,
                   const LocalityParams& params);

// Looks for t repair sets of x that pairwise intersect exactly in {x}.
// Candidates are inclusion-minimal repair sets (cyclic ones when
// cyclic_candidates_only, which is complete for 1<=-polymatroids), listed
// by size then lexicographically; selection is a deterministic backtrack.
std::optional<AvailabilityRecord> find_availability(
    const RankOracle& oracle, int x, const LocalityParams& params,
    bool cyclic_candidates_only = true);

// Largest t for which find_availability succeeds (0 when even t=1 fails).
int max_availability_t(const RankOracle& oracle, int x,
                       const LocalityParams& params, int t_cap = 8);

bool is_information_set(const RankOracle& oracle, Subset k_set);

// All information sets (rank = rho(E), minimal under deletion), sorted by
// lexicographic comparison of their ascending element lists, so the
// lexicographically smallest comes first.
std::vector<Subset> information_sets(const RankOracle& oracle,
                                     const EnumLimits& limits = {});

// Deterministic single information set without the 2^n sweep: drop elements
// from the top index down while the rank stays full.
Subset greedy_information_set(const RankOracle& oracle);

// Information set whose elements all have singleton rank exactly 1.
bool is_one_information(const RankOracle& oracle, Subset k_set);
// Code-level variant with the exact certificate: every coordinate of k_set
// takes all s values with equal fiber counts.
bool is_one_information(const EntropyOracle& oracle, Subset k_set);

// d <= n - ceil(k) + 1 - (ceil((t(ceil(k)-1)+1) / (t(r-1)+1)) - 1)(delta-1).
std::int64_t singleton_bound(std::int64_t n, RankValue k, int r, int delta,
                             int t);

struct LrcProfile {
  int n = 0;
  RankValue k;
  int d = 0;
  std::optional<int> d_via_cyclic_flats;  // set when that route was feasible
  LocalityClass locality_class = LocalityClass::kAllSymbol;
  LocalityParams params;
  Subset target = 0;
  std::vector<AvailabilityRecord> availability;  // one record per target element
  std::int64_t bound = 0;
  bool perfect = false;
};

// Verifies the target matches the class, computes d along every feasible
// route (asserting they agree), verifies availability of every target
// element, and compares d against the bound. Missing availability is an
// error listing the failing elements.
LrcProfile build_profile(const RankOracle& oracle, Subset target,
                         const LocalityParams& params, LocalityClass cls,
                         const EnumLimits& limits = {});

}  // namespace lrc
