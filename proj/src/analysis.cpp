#include "lrc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrc/errors.hpp"

namespace lrc {
namespace {

// Caps for the polynomial enumerations that replace full 2^n sweeps.
constexpr std::int64_t kMaxHyperplaneSubsets = 5'000'000;
constexpr std::int64_t kMaxRepairCandidateSweep = 20'000'000;

// min(C(n, k), cap + 1), computed without overflow.
std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > static_cast<unsigned __int128>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(acc);
}

void require_nonempty_ground(const GroundSet& g) {
  if (g.n < 1) fail(ErrorCode::kInvalidInput, "the ground set is empty");
}

RankValue positive_full_rank(const RankOracle& oracle) {
  RankValue k = oracle.rank(oracle.ground().full());
  if (k.numeric <= kRankEpsilon) {
    fail(ErrorCode::kInvalidInput,
         "the ground set has rank zero; distance and locality parameters "
         "are undefined");
  }
  return k;
}

// The (r, delta) recovery condition alone: every admissible-size subset of
// the recovery pool already carries the rank of r_set. Callers guarantee
// x is in r_set and the size cap holds.
bool recovery_condition(const RankOracle& oracle, int x, Subset r_set,
                        const LocalityParams& params) {
  Subset pool = params.primed ? r_set : without_element(r_set, x);
  int m = std::max(0, set_size(r_set) - (params.delta - 1));
  if (m > set_size(pool)) return false;
  return for_each_combination(elements(pool), m, [&](Subset y) {
    return oracle.rank_equal(y, r_set);
  });
}

void check_element_range(const GroundSet& g, int x) {
  if (x < 0 || x >= g.n) {
    fail(ErrorCode::kInvalidInput,
         "element " + std::to_string(x + 1) + " is outside the ground set");
  }
}

// Inclusion-minimal repair sets of x, sizes ascending and lexicographic
// within a size. With cyclic_only, only cyclic sets are kept (minimality is
// then relative to the cyclic family).
std::vector<Subset> minimal_repair_candidates(const RankOracle& oracle, int x,
                                              const LocalityParams& params,
                                              bool cyclic_only) {
  GroundSet g = oracle.ground();
  Subset full = g.full();
  int size_cap = std::min(params.r + params.delta - 1, g.n);

  std::int64_t sweep = 0;
  for (int sz = 1; sz <= size_cap; ++sz) {
    sweep += binomial_capped(g.n - 1, sz - 1, kMaxRepairCandidateSweep);
    if (sweep > kMaxRepairCandidateSweep) {
      fail(ErrorCode::kLimit,
           "the repair-set search would enumerate more than " +
               std::to_string(kMaxRepairCandidateSweep) +
               " candidate sets; reduce r + delta or the ground set");
    }
  }

  std::vector<int> others = elements(without_element(full, x));
  std::vector<Subset> found;
  for (int sz = 1; sz <= size_cap; ++sz) {
    for_each_combination(others, sz - 1, [&](Subset rest) {
      Subset r_set = with_element(rest, x);
      for (Subset f : found) {
        if (is_subset_of(f, r_set)) return;
      }
      // x must be recoverable from the rest of the set at all; this cheap
      // test is implied by the full recovery condition and prunes hard.
      if (!oracle.rank_equal(rest, r_set)) return;
      if (!recovery_condition(oracle, x, r_set, params)) return;
      if (cyclic_only && !is_cyclic(oracle, r_set)) return;
      found.push_back(r_set);
    });
  }
  return found;
}

// Picks `remaining` candidates from cands[start..] whose pairwise meets are
// exactly {x}; `used` is the union of everything picked so far plus {x}.
bool extend_availability(const std::vector<Subset>& cands, std::size_t start,
                         Subset used, int remaining, int x,
                         std::vector<Subset>& picked) {
  if (remaining == 0) return true;
  for (std::size_t i = start; i < cands.size(); ++i) {
    if ((cands[i] & used) != singleton(x)) continue;
    picked.push_back(cands[i]);
    if (extend_availability(cands, i + 1, used | cands[i], remaining - 1, x,
                            picked)) {
      return true;
    }
    picked.pop_back();
  }
  return false;
}

bool lex_less(Subset a, Subset b) {
  std::vector<int> ea = elements(a);
  std::vector<int> eb = elements(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(),
                                      eb.end());
}

}  // namespace

void LocalityParams::validate() const {
  if (r < 1) fail(ErrorCode::kInvalidInput, "locality r must be at least 1");
  if (delta < 2) {
    fail(ErrorCode::kInvalidInput, "locality delta must be at least 2");
  }
  if (t < 1) {
    fail(ErrorCode::kInvalidInput, "availability t must be at least 1");
  }
}

int min_distance(const RankOracle& oracle, const EnumLimits& limits) {
  GroundSet g = oracle.ground();
  require_nonempty_ground(g);
  if (g.n > limits.max_n) {
    fail(ErrorCode::kLimit,
         "minimum distance by definition sweeps 2^n subsets; n = " +
             std::to_string(g.n) + " exceeds the cap of " +
             std::to_string(limits.max_n));
  }
  positive_full_rank(oracle);
  Subset full = g.full();
  int largest_deficient = -1;  // max |Y| with rho(Y) < rho(E)
  for_each_subset_of(full, [&](Subset y) {
    if (y != full && set_size(y) > largest_deficient &&
        !oracle.rank_equal(y, full)) {
      largest_deficient = set_size(y);
    }
    return largest_deficient < g.n - 1;  // d = 1 cannot be beaten
  });
  if (largest_deficient < 0) {
    fail(ErrorCode::kAssertion,
         "no rank-deficient subset found despite positive rank");
  }
  return g.n - largest_deficient;
}

int min_distance_via_cyclic_flats(const RankOracle& oracle,
                                  const EnumLimits& limits) {
  GroundSet g = oracle.ground();
  require_nonempty_ground(g);
  RankValue k = positive_full_rank(oracle);
  std::vector<SetWithRank> z = cyclic_flats(oracle, limits);
  Subset covered = 0;
  for (const SetWithRank& f : z) covered |= f.set;
  if (covered != g.full()) {
    fail(ErrorCode::kInvalidInput,
         "the cyclic-flat distance formula needs the cyclic flats to cover "
         "the ground set; uncovered elements: " +
             format_subset(g.full() & ~covered));
  }

  double max_eta = 0.0;
  std::int64_t max_eta_int = 0;
  bool exact = k.is_exact();
  for (const SetWithRank& f : z) {
    if (f.set == covered) continue;  // exclude the union of cyclic flats
    double e = static_cast<double>(set_size(f.set)) - f.rank.numeric;
    max_eta = std::max(max_eta, e);
    if (f.rank.is_exact()) {
      max_eta_int = std::max(max_eta_int, set_size(f.set) - *f.rank.exact_integer);
    } else {
      exact = false;
    }
  }
  if (exact) {
    return static_cast<int>(g.n - *k.exact_integer + 1 - max_eta_int);
  }
  return static_cast<int>(
      std::floor(g.n - k.numeric + 1.0 - max_eta + kRankEpsilon));
}

int min_distance_via_hyperplanes(const RankOracle& oracle) {
  if (!oracle.integral()) {
    fail(ErrorCode::kInvalidInput,
         "the hyperplane distance route needs an integral rank oracle");
  }
  GroundSet g = oracle.ground();
  require_nonempty_ground(g);
  RankValue kv = positive_full_rank(oracle);
  std::int64_t k =
      kv.exact_integer ? *kv.exact_integer : std::llround(kv.numeric);
  for (int e = 0; e < g.n; ++e) {
    RankValue rv = oracle.rank(singleton(e));
    std::int64_t r1 = rv.exact_integer ? *rv.exact_integer : std::llround(rv.numeric);
    if (r1 > 1) {
      fail(ErrorCode::kInvalidInput,
           "the hyperplane distance route needs singleton ranks at most 1");
    }
  }
  if (binomial_capped(g.n, static_cast<int>(k) - 1, kMaxHyperplaneSubsets) >
      kMaxHyperplaneSubsets) {
    fail(ErrorCode::kLimit,
         "too many rank-(k-1) subsets to enumerate for the hyperplane "
         "distance route");
  }
  Subset full = g.full();
  std::vector<int> elems = elements(full);
  int largest_deficient = -1;
  // Every maximal rank-deficient set is the closure of some (k-1)-subset,
  // and every such closure is rank-deficient, so this max is exact.
  for_each_combination(elems, static_cast<int>(k) - 1, [&](Subset t) {
    Subset cl = closure(oracle, t);
    largest_deficient = std::max(largest_deficient, set_size(cl));
  });
  if (largest_deficient < 0) {
    fail(ErrorCode::kAssertion, "hyperplane sweep visited no subsets");
  }
  return g.n - largest_deficient;
}

bool is_repair_set(const RankOracle& oracle, int x, Subset r_set,
                   const LocalityParams& params) {
  params.validate();
  GroundSet g = oracle.ground();
  check_element_range(g, x);
  if (!is_subset_of(r_set, g.full())) {
    fail(ErrorCode::kInvalidInput, "repair set is outside the ground set");
  }
  if (!contains(r_set, x)) return false;
  if (set_size(r_set) > params.r + params.delta - 1) return false;
  return recovery_condition(oracle, x, r_set, params);
}

std::optional<AvailabilityRecord> find_availability(
    const RankOracle& oracle, int x, const LocalityParams& params,
    bool cyclic_candidates_only) {
  params.validate();
  check_element_range(oracle.ground(), x);
  std::vector<Subset> cands =
      minimal_repair_candidates(oracle, x, params, cyclic_candidates_only);
  std::vector<Subset> picked;
  if (!extend_availability(cands, 0, singleton(x), params.t, x, picked)) {
    return std::nullopt;
  }
  return AvailabilityRecord{x, std::move(picked)};
}

int max_availability_t(const RankOracle& oracle, int x,
                       const LocalityParams& params, int t_cap) {
  params.validate();
  check_element_range(oracle.ground(), x);
  if (t_cap < 1) return 0;
  std::vector<Subset> cands =
      minimal_repair_candidates(oracle, x, params, true);
  int cap = std::min<std::int64_t>(t_cap, static_cast<std::int64_t>(cands.size()));
  int best = 0;
  for (int t = 1; t <= cap; ++t) {
    std::vector<Subset> picked;
    if (!extend_availability(cands, 0, singleton(x), t, x, picked)) break;
    best = t;
  }
  return best;
}

bool is_information_set(const RankOracle& oracle, Subset k_set) {
  GroundSet g = oracle.ground();
  if (!is_subset_of(k_set, g.full())) {
    fail(ErrorCode::kInvalidInput, "candidate set is outside the ground set");
  }
  Subset full = g.full();
  if (!oracle.rank_equal(k_set, full)) return false;
  for (int e : elements(k_set)) {
    if (oracle.rank_equal(without_element(k_set, e), full)) return false;
  }
  return true;
}

std::vector<Subset> information_sets(const RankOracle& oracle,
                                     const EnumLimits& limits) {
  GroundSet g = oracle.ground();
  require_nonempty_ground(g);
  if (g.n > limits.max_n) {
    fail(ErrorCode::kLimit,
         "information-set enumeration sweeps 2^n subsets; n = " +
             std::to_string(g.n) + " exceeds the cap of " +
             std::to_string(limits.max_n));
  }
  positive_full_rank(oracle);
  std::vector<Subset> out;
  for_each_subset_of(g.full(), [&](Subset k_set) {
    if (is_information_set(oracle, k_set)) out.push_back(k_set);
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Subset greedy_information_set(const RankOracle& oracle) {
  GroundSet g = oracle.ground();
  require_nonempty_ground(g);
  Subset full = g.full();
  Subset cur = full;
  // Dropping from the top keeps low labels; once an element is needed it
  // stays needed as the set shrinks, so one pass reaches a minimal set.
  for (int e = g.n - 1; e >= 0; --e) {
    Subset cand = without_element(cur, e);
    if (oracle.rank_equal(cand, full)) cur = cand;
  }
  return cur;
}

bool is_one_information(const RankOracle& oracle, Subset k_set) {
  if (!is_information_set(oracle, k_set)) return false;
  for (int e : elements(k_set)) {
    RankValue rv = oracle.rank(singleton(e));
    if (rv.exact_integer) {
      if (*rv.exact_integer != 1) return false;
    } else if (std::abs(rv.numeric - 1.0) > kRankEpsilon) {
      return false;
    }
  }
  return true;
}

bool is_one_information(const EntropyOracle& oracle, Subset k_set) {
  if (!is_information_set(oracle, k_set)) return false;
  for (int e : elements(k_set)) {
    Subset sx = singleton(e);
    // Unit singleton rank, certified by counting: every symbol appears and
    // all symbol fibers have the same size.
    if (oracle.projection_count(sx) != oracle.code().s()) return false;
    if (!oracle.projection_uniform(sx)) return false;
  }
  return true;
}

std::int64_t singleton_bound(std::int64_t n, RankValue k, int r, int delta,
                             int t) {
  if (n < 1) fail(ErrorCode::kInvalidInput, "n must be at least 1");
  if (k.numeric <= kRankEpsilon) {
    fail(ErrorCode::kInvalidInput, "k must be positive");
  }
  LocalityParams{r, delta, t, false}.validate();
  std::int64_t ck =
      k.exact_integer
          ? *k.exact_integer
          : static_cast<std::int64_t>(std::ceil(k.numeric - kRankEpsilon));
  std::int64_t num = static_cast<std::int64_t>(t) * (ck - 1) + 1;
  std::int64_t den = static_cast<std::int64_t>(t) * (r - 1) + 1;
  std::int64_t ceil_term = (num + den - 1) / den;
  return n - ck + 1 - (ceil_term - 1) * (delta - 1);
}

LrcProfile build_profile(const RankOracle& oracle, Subset target,
                         const LocalityParams& params, LocalityClass cls,
                         const EnumLimits& limits) {
  params.validate();
  GroundSet g = oracle.ground();
  require_nonempty_ground(g);
  Subset full = g.full();
  if (!is_subset_of(target, full)) {
    fail(ErrorCode::kInvalidInput, "target set is outside the ground set");
  }
  RankValue k = positive_full_rank(oracle);

  switch (cls) {
    case LocalityClass::kAllSymbol:
      if (target != full) {
        fail(ErrorCode::kInvalidInput,
             "all-symbol locality requires the target set to be the whole "
             "ground set");
      }
      break;
    case LocalityClass::kInfoSymbol:
      if (!is_information_set(oracle, target)) {
        fail(ErrorCode::kInvalidInput,
             "target set " + format_subset(target) +
                 " is not an information set");
      }
      break;
    case LocalityClass::kOneInfoSymbol: {
      bool ok = false;
      if (const auto* entropy = dynamic_cast<const EntropyOracle*>(&oracle)) {
        ok = is_one_information(*entropy, target);
      } else {
        ok = is_one_information(oracle, target);
      }
      if (!ok) {
        fail(ErrorCode::kInvalidInput,
             "target set " + format_subset(target) +
                 " is not a 1-information set");
      }
      break;
    }
  }

  auto try_route = [](auto&& fn) -> std::optional<int> {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kLimit ||
          e.code() == ErrorCode::kInvalidInput) {
        return std::nullopt;  // route not applicable to this oracle
      }
      throw;
    }
  };

  std::optional<int> d_enum;
  if (g.n <= limits.max_n) d_enum = min_distance(oracle, limits);
  std::optional<int> d_cf =
      try_route([&] { return min_distance_via_cyclic_flats(oracle, limits); });
  std::optional<int> d_hyper;
  if (oracle.integral()) {
    d_hyper = try_route([&] { return min_distance_via_hyperplanes(oracle); });
  }

  std::optional<int> d;
  for (const std::optional<int>& route : {d_enum, d_cf, d_hyper}) {
    if (!route) continue;
    if (d && *d != *route) {
      fail(ErrorCode::kAssertion,
           "minimum-distance routes disagree: " + std::to_string(*d) +
               " vs " + std::to_string(*route));
    }
    d = route;
  }
  if (!d) {
    fail(ErrorCode::kLimit,
         "no feasible minimum-distance route for a ground set of size " +
             std::to_string(g.n));
  }
  if (*d < 1) {
    fail(ErrorCode::kAssertion,
         "computed minimum distance " + std::to_string(*d) +
             " is below 1; the oracle does not describe a code");
  }

  LrcProfile profile;
  profile.n = g.n;
  profile.k = k;
  profile.d = *d;
  profile.d_via_cyclic_flats = d_cf;
  profile.locality_class = cls;
  profile.params = params;
  profile.target = target;

  std::vector<int> missing;
  for (int x : elements(target)) {
    std::optional<AvailabilityRecord> rec =
        find_availability(oracle, x, params);
    if (rec) {
      profile.availability.push_back(std::move(*rec));
    } else {
      missing.push_back(x);
    }
  }
  if (!missing.empty()) {
    fail(ErrorCode::kAssertion,
         "availability (r=" + std::to_string(params.r) +
             ", delta=" + std::to_string(params.delta) +
             ", t=" + std::to_string(params.t) +
             ") could not be verified for elements " +
             format_subset(subset_of_elements(missing)));
  }

  profile.bound = singleton_bound(g.n, k, params.r, params.delta, params.t);
  profile.perfect = (profile.d == profile.bound);
  return profile;
}

}  // namespace lrc
