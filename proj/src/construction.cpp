#include "lrc/construction.hpp"

#include <algorithm>
#include <map>

#include "lrc/analysis.hpp"
#include "lrc/errors.hpp"

namespace lrc {
namespace {

constexpr int kMaxBlocks = 20;  // 2^m block-union enumeration cap

std::string block_label(int i) { return "block " + std::to_string(i + 1); }

// Depth-first search for the lexicographically smallest K with |K| = need
// more elements from start upward, respecting |K meet F| <= rank(F) per flat.
bool info_set_dfs(const std::vector<SetWithRank>& flats,
                  std::vector<std::int64_t>& used, int n, int start,
                  std::int64_t need, Subset cur, Subset& out) {
  if (need == 0) {
    out = cur;
    return true;
  }
  for (int e = start; e + need <= n; ++e) {
    bool fits = true;
    for (std::size_t i = 0; i < flats.size(); ++i) {
      if (contains(flats[i].set, e) &&
          used[i] + 1 > *flats[i].rank.exact_integer) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    for (std::size_t i = 0; i < flats.size(); ++i) {
      if (contains(flats[i].set, e)) ++used[i];
    }
    if (info_set_dfs(flats, used, n, e + 1, need - 1, with_element(cur, e),
                     out)) {
      return true;
    }
    for (std::size_t i = 0; i < flats.size(); ++i) {
      if (contains(flats[i].set, e)) --used[i];
    }
  }
  return false;
}

}  // namespace

SpecReport validate_spec(const ConstructionSpec& spec) {
  SpecReport report;
  auto add = [&](std::string condition, std::optional<int> block,
                 std::string message) {
    report.violations.push_back(
        SpecViolation{std::move(condition), block, std::move(message)});
  };

  if (spec.n < 1 || spec.n > kMaxGroundSize) {
    add("structure", std::nullopt,
        "ground-set size must be between 1 and " +
            std::to_string(kMaxGroundSize) + ", got " +
            std::to_string(spec.n));
    return report;
  }
  if (spec.k < 0) {
    add("structure", std::nullopt,
        "k must be non-negative, got " + std::to_string(spec.k));
  }
  Subset full = GroundSet{spec.n}.full();
  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    if (!is_subset_of(spec.blocks[i].elements, full)) {
      add("structure", static_cast<int>(i),
          block_label(static_cast<int>(i)) +
              " contains elements outside the ground set");
    }
  }
  if (!report.ok()) return report;

  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    const ConstructionBlock& b = spec.blocks[i];
    int size = set_size(b.elements);
    if (b.rank <= 0 || b.rank >= size) {
      add("block-rank-range", static_cast<int>(i),
          block_label(static_cast<int>(i)) + " needs 0 < rank < size, got " +
              "rank " + std::to_string(b.rank) + " with size " +
              std::to_string(size));
    }
  }

  Subset all = 0;
  std::int64_t eta_sum = 0;
  for (const ConstructionBlock& b : spec.blocks) {
    all |= b.elements;
    eta_sum += set_size(b.elements) - b.rank;
  }
  std::int64_t budget = set_size(all) - eta_sum;
  if (spec.k > budget) {
    add("total-rank", std::nullopt,
        "k = " + std::to_string(spec.k) +
            " exceeds |union of blocks| - total eta = " +
            std::to_string(set_size(all)) + " - " + std::to_string(eta_sum) +
            " = " + std::to_string(budget));
  }

  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    Subset rest = 0;
    for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
      if (j != i) rest |= spec.blocks[j].elements;
    }
    std::int64_t overlap = set_size(rest & spec.blocks[i].elements);
    if (overlap >= spec.blocks[i].rank) {
      add("block-overlap", static_cast<int>(i),
          block_label(static_cast<int>(i)) +
              " meets the union of the other blocks in " +
              std::to_string(overlap) + " elements, at least its rank " +
              std::to_string(spec.blocks[i].rank));
    }
  }
  return report;
}

RankValue ConstructedMatroid::rank(Subset x) const {
  if (!is_subset_of(x, ground().full())) {
    fail(ErrorCode::kInvalidInput, "subset is outside the ground set");
  }
  std::int64_t best = spec_.k + static_cast<std::int64_t>(set_size(x));
  for (const SetWithRank& f : flats_) {
    std::int64_t v = *f.rank.exact_integer + set_size(x & ~f.set);
    best = std::min(best, v);
  }
  return RankValue::of_int(best);
}

std::shared_ptr<const ConstructedMatroid> build_matroid(
    const ConstructionSpec& spec) {
  SpecReport report = validate_spec(spec);
  if (!report.ok()) {
    fail(ErrorCode::kInvalidInput,
         "construction spec is invalid (" +
             report.violations.front().condition +
             "): " + report.violations.front().message);
  }
  int m = static_cast<int>(spec.blocks.size());
  if (m > kMaxBlocks) {
    fail(ErrorCode::kLimit,
         "block-union enumeration is capped at " + std::to_string(kMaxBlocks) +
             " blocks, got " + std::to_string(m));
  }

  // Every union of blocks whose derived rank stays below k becomes a flat;
  // the same union from different index sets keeps the smallest rank (the
  // rank formula takes minima, so the smaller value dominates anyway).
  std::map<Subset, std::int64_t> by_union;
  Subset index_full = m >= kMaxGroundSize ? ~Subset{0} : (Subset{1} << m) - 1;
  for_each_subset_of(index_full, [&](Subset idx) {
    Subset u = 0;
    std::int64_t eta = 0;
    for (int i : elements(idx)) {
      u |= spec.blocks[i].elements;
      eta += set_size(spec.blocks[i].elements) - spec.blocks[i].rank;
    }
    std::int64_t rho = std::min<std::int64_t>(set_size(u) - eta, spec.k);
    if (rho < spec.k) {
      auto [it, inserted] = by_union.emplace(u, rho);
      if (!inserted && rho < it->second) it->second = rho;
    }
  });

  auto matroid = std::shared_ptr<ConstructedMatroid>(new ConstructedMatroid());
  matroid->spec_ = spec;
  for (const auto& [set, rho] : by_union) {
    matroid->flats_.push_back(SetWithRank{set, RankValue::of_int(rho)});
  }
  matroid->flats_.push_back(
      SetWithRank{GroundSet{spec.n}.full(), RankValue::of_int(spec.k)});
  std::stable_sort(matroid->flats_.begin(), matroid->flats_.end(),
                   [](const SetWithRank& a, const SetWithRank& b) {
                     int sa = set_size(a.set), sb = set_size(b.set);
                     if (sa != sb) return sa < sb;
                     return a.set < b.set;
                   });
  return matroid;
}

DerivedParameters derived_parameters(const ConstructedMatroid& matroid) {
  const ConstructionSpec& spec = matroid.spec();
  if (spec.k <= 0) {
    fail(ErrorCode::kInvalidInput,
         "derived code parameters need positive rank k");
  }
  Subset full = matroid.ground().full();

  DerivedParameters out;
  out.n = spec.n;
  out.k = spec.k;

  std::int64_t max_eta = 0;
  for (const SetWithRank& f : matroid.flats()) {
    if (f.set == full) continue;
    max_eta = std::max(max_eta, set_size(f.set) - *f.rank.exact_integer);
  }
  out.d = static_cast<int>(spec.n - spec.k + 1 - max_eta);

  for (const ConstructionBlock& b : spec.blocks) {
    DerivedBlockLocality loc;
    loc.block = b.elements;
    loc.rank = b.rank;
    loc.delta = set_size(b.elements) - b.rank + 1;
    LocalityParams params{static_cast<int>(loc.rank),
                          static_cast<int>(loc.delta), 1, false};
    loc.repair_verified = true;
    for (int x : elements(b.elements)) {
      if (!is_repair_set(matroid, x, b.elements, params)) {
        loc.repair_verified = false;
        break;
      }
    }
    out.blocks.push_back(loc);
  }

  std::vector<std::int64_t> used(matroid.flats().size(), 0);
  if (!info_set_dfs(matroid.flats(), used, spec.n, 0, spec.k, 0,
                    out.information_set)) {
    fail(ErrorCode::kAssertion,
         "no information set exists although the matroid has rank " +
             std::to_string(spec.k));
  }
  return out;
}

ConstructionSpec generate_perfect_family(std::int64_t k, int r, int delta,
                                         int t, std::optional<int> n) {
  if (k < 1) {
    fail(ErrorCode::kInvalidInput, "family generation requires k >= 1");
  }
  if (r < 2) {
    fail(ErrorCode::kInvalidInput,
         "family generation requires r >= 2: with r = 1, any hub shared "
         "between a block and the rest of the blocks already meets the "
         "block-overlap condition's limit");
  }
  if (delta < 2) {
    fail(ErrorCode::kInvalidInput, "family generation requires delta >= 2");
  }
  if (t < 1) {
    fail(ErrorCode::kInvalidInput, "family generation requires t >= 1");
  }

  std::int64_t fresh_per_block = r + delta - 2;
  std::int64_t base = k * (static_cast<std::int64_t>(t) * fresh_per_block + 1);
  std::int64_t target = n ? *n : base;
  if (target > kMaxGroundSize) {
    fail(ErrorCode::kLimit,
         "the requested family needs " + std::to_string(target) +
             " elements, beyond the " + std::to_string(kMaxGroundSize) +
             "-element limit");
  }
  if (target < base) {
    fail(ErrorCode::kInvalidInput,
         "n must be at least k*(t*(r+delta-2)+1) = " + std::to_string(base));
  }
  std::int64_t extra = target - base;
  if (extra % fresh_per_block != 0) {
    fail(ErrorCode::kInvalidInput,
         "n exceeds the base size " + std::to_string(base) + " by " +
             std::to_string(extra) + ", which is not a multiple of " +
             "r+delta-2 = " + std::to_string(fresh_per_block) +
             " (each extra block carries that many fresh elements)");
  }

  ConstructionSpec spec;
  spec.n = static_cast<int>(target);
  spec.k = k;
  int fresh = static_cast<int>(k);
  auto add_block = [&](int hub) {
    Subset b = singleton(hub);
    for (std::int64_t j = 0; j < fresh_per_block; ++j) {
      b = with_element(b, fresh++);
    }
    spec.blocks.push_back(ConstructionBlock{b, r});
  };
  for (int h = 0; h < k; ++h) {
    for (int j = 0; j < t; ++j) add_block(h);
  }
  std::int64_t extra_blocks = extra / fresh_per_block;
  for (std::int64_t x = 0; x < extra_blocks; ++x) {
    add_block(static_cast<int>(x % k));
  }
  return spec;
}

}  // namespace lrc
