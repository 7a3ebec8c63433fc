#include "lrc/construction.hpp"

#include <cstdint>
#include <memory>
#include <vector>

#include "doctest.h"
#include "lrc/analysis.hpp"
#include "lrc/errors.hpp"
#include "lrc/polymatroid.hpp"
#include "lrc/rng.hpp"
#include "test_util.hpp"

using namespace lrc;
using lrc_test::expect_error;
using lrc_test::random_spec;

namespace {

ConstructionSpec single_block_spec() {
  ConstructionSpec spec;
  spec.n = 3;
  spec.k = 2;
  spec.blocks.push_back(ConstructionBlock{0b111, 2});
  return spec;
}

bool has_violation(const SpecReport& report, const std::string& condition,
                   std::optional<int> block) {
  for (const SpecViolation& v : report.violations) {
    if (v.condition == condition && v.block == block) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("spec validation reports every broken condition") {
  CHECK(validate_spec(single_block_spec()).ok());

  ConstructionSpec empty_ground;
  empty_ground.n = 0;
  SpecReport report = validate_spec(empty_ground);
  REQUIRE(report.violations.size() == 1);
  CHECK(has_violation(report, "structure", std::nullopt));

  ConstructionSpec oversized;
  oversized.n = 65;
  CHECK(has_violation(validate_spec(oversized), "structure", std::nullopt));

  ConstructionSpec negative_k = single_block_spec();
  negative_k.k = -1;
  CHECK(has_violation(validate_spec(negative_k), "structure", std::nullopt));

  ConstructionSpec outside = single_block_spec();
  outside.blocks[0].elements = 0b1011;  // element 4 of a 3-element ground set
  CHECK(has_violation(validate_spec(outside), "structure", 0));

  ConstructionSpec rank_too_low = single_block_spec();
  rank_too_low.blocks[0].rank = 0;
  CHECK(has_violation(validate_spec(rank_too_low), "block-rank-range", 0));
  ConstructionSpec rank_too_high = single_block_spec();
  rank_too_high.blocks[0].rank = 3;
  CHECK(has_violation(validate_spec(rank_too_high), "block-rank-range", 0));

  ConstructionSpec greedy_k = single_block_spec();
  greedy_k.k = 3;  // budget is |{1,2,3}| - eta = 3 - 1 = 2
  CHECK(has_violation(validate_spec(greedy_k), "total-rank", std::nullopt));

  ConstructionSpec heavy_overlap;
  heavy_overlap.n = 5;
  heavy_overlap.k = 1;
  heavy_overlap.blocks.push_back(ConstructionBlock{0b00111, 1});
  heavy_overlap.blocks.push_back(ConstructionBlock{0b11001, 2});
  report = validate_spec(heavy_overlap);
  CHECK(has_violation(report, "block-overlap", 0));
  CHECK(!has_violation(report, "block-overlap", 1));

  // Violations accumulate instead of stopping at the first.
  ConstructionSpec doubly_bad = single_block_spec();
  doubly_bad.blocks[0].rank = 0;
  doubly_bad.k = 17;
  report = validate_spec(doubly_bad);
  CHECK(has_violation(report, "block-rank-range", 0));
  CHECK(has_violation(report, "total-rank", std::nullopt));
}

TEST_CASE("a single proper block builds a uniform matroid") {
  std::shared_ptr<const ConstructedMatroid> m =
      build_matroid(single_block_spec());
  // The block itself reaches rank k, so only the empty set and the ground
  // set remain as cyclic flats.
  REQUIRE(m->flats().size() == 2);
  CHECK(m->flats()[0].set == 0);
  CHECK(*m->flats()[0].rank.exact_integer == 0);
  CHECK(m->flats()[1].set == 0b111);
  CHECK(*m->flats()[1].rank.exact_integer == 2);
  for_each_subset_of(0b111, [&](Subset x) {
    CHECK(*m->rank(x).exact_integer ==
          std::min<std::int64_t>(2, set_size(x)));
    return true;
  });
  expect_error([&] { m->rank(0b1111); }, ErrorCode::kInvalidInput);

  ConstructionSpec bad = single_block_spec();
  bad.k = 3;
  expect_error([&] { build_matroid(bad); }, ErrorCode::kInvalidInput);
}

TEST_CASE("the block-union enumeration refuses too many blocks") {
  ConstructionSpec spec;
  spec.n = 42;
  spec.k = 1;
  for (int i = 0; i < 21; ++i) {
    spec.blocks.push_back(
        ConstructionBlock{subset_of_elements({2 * i, 2 * i + 1}), 1});
  }
  REQUIRE(validate_spec(spec).ok());
  expect_error([&] { build_matroid(spec); }, ErrorCode::kLimit);
}

TEST_CASE("the eight-block instance keeps blocks as flats") {
  ConstructionSpec spec = generate_perfect_family(4, 3, 3, 2);
  CHECK(spec.n == 36);
  CHECK(spec.k == 4);
  REQUIRE(spec.blocks.size() == 8);
  CHECK(spec.blocks[0].elements == (singleton(0) | subset_of_elements({4, 5, 6, 7})));
  CHECK(spec.blocks[1].elements == (singleton(0) | subset_of_elements({8, 9, 10, 11})));
  CHECK(spec.blocks[7].elements ==
        (singleton(3) | subset_of_elements({32, 33, 34, 35})));
  for (const ConstructionBlock& b : spec.blocks) CHECK(b.rank == 3);
  REQUIRE(validate_spec(spec).ok());

  std::shared_ptr<const ConstructedMatroid> m = build_matroid(spec);
  // Single blocks stay below rank k; every union of two or more reaches it.
  REQUIRE(m->flats().size() == 10);
  CHECK(m->flats()[0].set == 0);
  for (int i = 1; i <= 8; ++i) {
    CHECK(m->flats()[i].set == spec.blocks[static_cast<std::size_t>(i - 1)].elements);
    CHECK(*m->flats()[i].rank.exact_integer == 3);
  }
  CHECK(m->flats()[9].set == GroundSet{36}.full());
  CHECK(*m->flats()[9].rank.exact_integer == 4);

  CHECK(*m->rank(spec.blocks[0].elements).exact_integer == 3);
  CHECK(*m->rank(spec.blocks[0].elements | spec.blocks[1].elements)
             .exact_integer == 4);
  CHECK(*m->rank(singleton(0)).exact_integer == 1);

  DerivedParameters derived = derived_parameters(*m);
  CHECK(derived.n == 36);
  CHECK(derived.k == 4);
  CHECK(derived.d == 31);
  CHECK(derived.information_set == 0b1111);
  REQUIRE(derived.blocks.size() == 8);
  for (const DerivedBlockLocality& b : derived.blocks) {
    CHECK(b.rank == 3);
    CHECK(b.delta == 3);
    CHECK(b.repair_verified);
  }
  CHECK(singleton_bound(36, RankValue::of_int(4), 3, 3, 2) == derived.d);
}

TEST_CASE("small family instances match their bound") {
  ConstructionSpec tiny = generate_perfect_family(1, 2, 2, 1);
  CHECK(tiny.n == 3);
  REQUIRE(tiny.blocks.size() == 1);
  CHECK(tiny.blocks[0].elements == 0b111);
  std::shared_ptr<const ConstructedMatroid> m = build_matroid(tiny);
  REQUIRE(m->flats().size() == 2);
  DerivedParameters derived = derived_parameters(*m);
  CHECK(derived.d == 3);
  CHECK(derived.d == singleton_bound(3, RankValue::of_int(1), 2, 2, 1));
  CHECK(derived.information_set == 0b001);

  // Blocks of rank k become spanning, so this instance is uniform.
  ConstructionSpec pair = generate_perfect_family(2, 2, 2, 2);
  CHECK(pair.n == 10);
  REQUIRE(pair.blocks.size() == 4);
  CHECK(pair.blocks[0].elements == subset_of_elements({0, 2, 3}));
  CHECK(pair.blocks[3].elements == subset_of_elements({1, 8, 9}));
  std::shared_ptr<const ConstructedMatroid> u = build_matroid(pair);
  REQUIRE(u->flats().size() == 2);
  DerivedParameters uniform = derived_parameters(*u);
  CHECK(uniform.d == 9);
  CHECK(uniform.d == singleton_bound(10, RankValue::of_int(2), 2, 2, 2));
  CHECK(uniform.information_set == 0b011);

  ConstructionSpec six = generate_perfect_family(2, 2, 2, 1);
  CHECK(six.n == 6);
  std::shared_ptr<const ConstructedMatroid> u26 = build_matroid(six);
  REQUIRE(u26->flats().size() == 2);
  CHECK(derived_parameters(*u26).d == 5);
}

TEST_CASE("family generation validates its inputs") {
  // Extra length arrives in whole blocks attached to hubs round-robin.
  ConstructionSpec wide = generate_perfect_family(4, 3, 3, 2, 44);
  CHECK(wide.n == 44);
  REQUIRE(wide.blocks.size() == 10);
  CHECK(wide.blocks[8].elements ==
        (singleton(0) | subset_of_elements({36, 37, 38, 39})));
  CHECK(wide.blocks[9].elements ==
        (singleton(1) | subset_of_elements({40, 41, 42, 43})));
  DerivedParameters derived = derived_parameters(*build_matroid(wide));
  CHECK(derived.d == 39);
  CHECK(derived.d == singleton_bound(44, RankValue::of_int(4), 3, 3, 2));

  expect_error([] { generate_perfect_family(4, 3, 3, 2, 37); },
               ErrorCode::kInvalidInput);
  expect_error([] { generate_perfect_family(4, 3, 3, 2, 35); },
               ErrorCode::kInvalidInput);
  expect_error([] { generate_perfect_family(4, 3, 3, 2, 68); },
               ErrorCode::kLimit);
  expect_error([] { generate_perfect_family(0, 2, 2, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { generate_perfect_family(2, 1, 2, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { generate_perfect_family(2, 2, 1, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { generate_perfect_family(2, 2, 2, 0); },
               ErrorCode::kInvalidInput);
}

TEST_CASE("derived parameters need a positive rank") {
  ConstructionSpec spec = single_block_spec();
  spec.k = 0;
  std::shared_ptr<const ConstructedMatroid> m = build_matroid(spec);
  expect_error([&] { derived_parameters(*m); }, ErrorCode::kInvalidInput);
}

TEST_CASE("constructed matroids satisfy the axioms with matching flats") {
  Rng rng(31415926);
  for (int trial = 0; trial < 8; ++trial) {
    ConstructionSpec spec = random_spec(rng, 10);
    CAPTURE(spec.n);
    CAPTURE(spec.k);
    REQUIRE(validate_spec(spec).ok());
    std::shared_ptr<const ConstructedMatroid> m = build_matroid(spec);

    CheckMode mode;  // exhaustive
    AxiomReport axioms = check_matroid(*m, mode);
    CHECK(axioms.ok());

    // The generic enumeration, forced to ignore the stored list, must
    // rediscover exactly the flats the construction declared.
    std::vector<SetWithRank> rediscovered =
        cyclic_flats(*m, EnumLimits{}, false);
    REQUIRE(rediscovered.size() == m->flats().size());
    for (std::size_t i = 0; i < rediscovered.size(); ++i) {
      CHECK(rediscovered[i].set == m->flats()[i].set);
      CHECK(*rediscovered[i].rank.exact_integer ==
            *m->flats()[i].rank.exact_integer);
    }

    // The stored list also answers through the oracle interface.
    std::vector<SetWithRank> shortcut = cyclic_flats(*m);
    REQUIRE(shortcut.size() == m->flats().size());
    for (std::size_t i = 0; i < shortcut.size(); ++i) {
      CHECK(shortcut[i].set == m->flats()[i].set);
    }
  }
}
