#include "lrc/analysis.hpp"

#include <memory>
#include <optional>
#include <vector>

#include "doctest.h"
#include "lrc/code.hpp"
#include "lrc/errors.hpp"
#include "lrc/linear.hpp"
#include "lrc/polymatroid.hpp"
#include "lrc/rng.hpp"
#include "test_util.hpp"

using namespace lrc;
using lrc_test::asymmetric_code;
using lrc_test::even_weight_code;
using lrc_test::expect_error;
using lrc_test::free_oracle;
using lrc_test::random_code;
using lrc_test::repetition_code;
using lrc_test::uniform_oracle;

namespace {

// The code {000, 010, 100, 111}: the third coordinate is recoverable from
// the first two together, but from no single other coordinate.
Code and_code() {
  return Code::from_words(2, 3, {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}});
}

// [[1,0,1,1],[0,1,1,2]] over F_3: every pair of columns is independent.
GeneratorMatrix mds_matrix() {
  return GeneratorMatrix::make(PrimeField{3}, 2, 4, {1, 0, 1, 1, 0, 1, 1, 2});
}

bool pairwise_meet_in(const std::vector<Subset>& sets, int x) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!contains(sets[i], x)) return false;
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if ((sets[i] & sets[j]) != singleton(x)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("locality parameter validation") {
  LocalityParams{}.validate();
  LocalityParams{3, 2, 4, true}.validate();
  expect_error([] { LocalityParams{0, 2, 1, false}.validate(); },
               ErrorCode::kInvalidInput);
  expect_error([] { LocalityParams{1, 1, 1, false}.validate(); },
               ErrorCode::kInvalidInput);
  expect_error([] { LocalityParams{1, 2, 0, false}.validate(); },
               ErrorCode::kInvalidInput);
}

TEST_CASE("minimum distance by subset sweep") {
  CHECK(min_distance(*uniform_oracle(2, 4)) == 3);
  CHECK(min_distance(*uniform_oracle(1, 3)) == 3);
  CHECK(min_distance(*uniform_oracle(2, 10)) == 9);
  CHECK(min_distance(*free_oracle(3)) == 1);

  EntropyOracle even{even_weight_code()};
  CHECK(min_distance(even) == 2);
  EntropyOracle skew{asymmetric_code()};
  CHECK(min_distance(skew) == 1);
  EntropyOracle rep{repetition_code(5)};
  CHECK(min_distance(rep) == 5);

  // The 2^n sweep refuses ground sets beyond the cap.
  expect_error([] { min_distance(*uniform_oracle(2, 22)); },
               ErrorCode::kLimit);
  expect_error([&] { min_distance(even, EnumLimits{2}); }, ErrorCode::kLimit);

  // Rank-zero oracles describe no code at all.
  FunctionOracle zero = FunctionOracle::of_int(3, [](Subset) { return 0; });
  expect_error([&] { min_distance(zero); }, ErrorCode::kInvalidInput);
}

TEST_CASE("minimum distance through cyclic flats") {
  // Uniform matroids: the only proper cyclic flat is the empty set.
  CHECK(min_distance_via_cyclic_flats(*uniform_oracle(2, 4)) == 3);
  CHECK(min_distance_via_cyclic_flats(*uniform_oracle(1, 3)) == 3);
  CHECK(min_distance_via_cyclic_flats(*uniform_oracle(2, 10)) == 9);

  EntropyOracle even{even_weight_code()};
  CHECK(min_distance_via_cyclic_flats(even) == 2);
  EntropyOracle rep{repetition_code(4)};
  CHECK(min_distance_via_cyclic_flats(rep) == 4);

  // Fractional ranks exercise the floor: the proper cyclic flats are the two
  // singletons with nullity 1 - log2(3)/log2(4)... concretely
  // floor(2 - log2(3) + 1 - (1 - h)) with h the singleton entropy.
  EntropyOracle skew{asymmetric_code()};
  CHECK(min_distance_via_cyclic_flats(skew) == 1);

  // The free matroid's only cyclic flat is empty, so the flats cannot cover
  // the ground set and the formula does not apply.
  expect_error([] { min_distance_via_cyclic_flats(*free_oracle(3)); },
               ErrorCode::kInvalidInput);
}

TEST_CASE("minimum distance through hyperplane closures") {
  CHECK(min_distance_via_hyperplanes(*uniform_oracle(2, 4)) == 3);
  CHECK(min_distance_via_hyperplanes(*uniform_oracle(1, 3)) == 3);
  CHECK(min_distance_via_hyperplanes(*free_oracle(3)) == 1);
  LinearRankOracle mds{mds_matrix()};
  CHECK(min_distance_via_hyperplanes(mds) == 3);

  // Entropy oracles do not certify integrality, so the route refuses them.
  EntropyOracle skew{asymmetric_code()};
  expect_error([&] { min_distance_via_hyperplanes(skew); },
               ErrorCode::kInvalidInput);

  // Singleton ranks above one break the hyperplane argument.
  FunctionOracle doubled =
      FunctionOracle::of_int(3, [](Subset x) { return 2 * set_size(x); });
  expect_error([&] { min_distance_via_hyperplanes(doubled); },
               ErrorCode::kInvalidInput);

  // C(60, 12) rank-(k-1) subsets is far beyond the enumeration cap.
  expect_error([] { min_distance_via_hyperplanes(*uniform_oracle(13, 60)); },
               ErrorCode::kLimit);
}

TEST_CASE("distance routes agree on random codes") {
  Rng rng(20240601);
  for (int trial = 0; trial < 24; ++trial) {
    int n = 5 + static_cast<int>(rng.below(3));
    EntropyOracle oracle{random_code(rng, n)};
    int d = min_distance(oracle);
    CHECK(d >= 1);
    try {
      CHECK(min_distance_via_cyclic_flats(oracle) == d);
    } catch (const Error& e) {
      // The formula only applies when the cyclic flats cover the ground set.
      CHECK(e.code() == ErrorCode::kInvalidInput);
    }
  }
}

TEST_CASE("distance routes agree on random matrices") {
  Rng rng(424242);
  const std::uint64_t fields[] = {2, 3, 5};
  int accepted = 0;
  for (int trial = 0; trial < 40 && accepted < 18; ++trial) {
    std::uint64_t q = fields[rng.below(3)];
    int k = 2 + static_cast<int>(rng.below(2));
    int n = 5 + static_cast<int>(rng.below(4));
    std::vector<std::uint64_t> entries;
    for (int i = 0; i < k * n; ++i) entries.push_back(rng.below(q));
    std::optional<GeneratorMatrix> g =
        GeneratorMatrix::try_make(PrimeField{q}, k, n, entries);
    if (!g) continue;  // dependent rows; draw again
    ++accepted;
    LinearRankOracle oracle{*g};
    int d = min_distance(oracle);
    CHECK(min_distance_via_hyperplanes(oracle) == d);
    try {
      CHECK(min_distance_via_cyclic_flats(oracle) == d);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidInput);
    }
  }
  CHECK(accepted >= 10);
}

TEST_CASE("repair set recognition") {
  EntropyOracle rep{repetition_code(3)};
  LocalityParams one{1, 2, 1, false};
  CHECK(is_repair_set(rep, 0, 0b011, one));
  CHECK(is_repair_set(rep, 0, 0b101, one));
  CHECK(!is_repair_set(rep, 0, 0b110, one));   // x not in the set
  CHECK(!is_repair_set(rep, 0, 0b111, one));   // exceeds r + delta - 1
  CHECK(!is_repair_set(rep, 0, 0b001, one));   // alone, x is unrecoverable

  // Raising delta demands recovery from every big-enough subset: the full
  // repetition triple still qualifies because any single symbol determines
  // the word.
  CHECK(is_repair_set(rep, 0, 0b111, LocalityParams{1, 3, 1, false}));

  // The third coordinate of the and-code needs both others: fine unprimed,
  // but the primed condition also demands recovery from subsets that drop
  // one of them, which fails.
  EntropyOracle gate{and_code()};
  CHECK(is_repair_set(gate, 2, 0b111, LocalityParams{2, 2, 1, false}));
  CHECK(!is_repair_set(gate, 2, 0b111, LocalityParams{2, 2, 1, true}));
  CHECK(!is_repair_set(gate, 2, 0b101, LocalityParams{2, 2, 1, false}));

  // A coordinate of rank zero is recoverable from nothing at all.
  EntropyOracle padded{Code::from_words(2, 2, {{0, 0}, {0, 1}})};
  CHECK(is_repair_set(padded, 0, 0b01, one));

  expect_error([&] { is_repair_set(rep, 3, 0b001, one); },
               ErrorCode::kInvalidInput);
  expect_error([&] { is_repair_set(rep, -1, 0b001, one); },
               ErrorCode::kInvalidInput);
  expect_error([&] { is_repair_set(rep, 0, 0b1001, one); },
               ErrorCode::kInvalidInput);
  expect_error(
      [&] { is_repair_set(rep, 0, 0b001, LocalityParams{0, 2, 1, false}); },
      ErrorCode::kInvalidInput);
}

TEST_CASE("a repair set keeps its rank without the repaired element") {
  Rng rng(97531);
  for (int trial = 0; trial < 10; ++trial) {
    EntropyOracle oracle{random_code(rng, 5)};
    Subset full = oracle.ground().full();
    for (int delta : {2, 3}) {
      LocalityParams params{2, delta, 1, false};
      for_each_subset_of(full, [&](Subset r_set) {
        for (int x : elements(r_set)) {
          if (is_repair_set(oracle, x, r_set, params)) {
            CHECK(oracle.rank_equal(without_element(r_set, x), r_set));
          }
        }
        return true;
      });
    }
  }
}

TEST_CASE("availability search finds disjoint repair sets") {
  EntropyOracle rep{repetition_code(3)};
  LocalityParams two{1, 2, 2, false};
  std::optional<AvailabilityRecord> rec = find_availability(rep, 0, two);
  REQUIRE(rec.has_value());
  CHECK(rec->element == 0);
  CHECK(rec->sets == std::vector<Subset>{0b011, 0b101});
  rec = find_availability(rep, 1, two);
  REQUIRE(rec.has_value());
  CHECK(rec->sets == std::vector<Subset>{0b011, 0b110});

  // Only two sets can avoid each other around one element of three.
  CHECK(!find_availability(rep, 0, LocalityParams{1, 2, 3, false}));
  CHECK(max_availability_t(rep, 0, LocalityParams{1, 2, 1, false}) == 2);
  CHECK(max_availability_t(rep, 0, LocalityParams{1, 2, 1, false}, 1) == 1);
  CHECK(max_availability_t(rep, 0, LocalityParams{1, 2, 1, false}, 0) == 0);

  // Candidate repair sets in a uniform matroid are the triples through x;
  // the deterministic backtrack picks the lexicographically first packing.
  std::shared_ptr<const RankOracle> u26 = uniform_oracle(2, 6);
  rec = find_availability(*u26, 0, LocalityParams{2, 2, 2, false});
  REQUIRE(rec.has_value());
  CHECK(rec->sets == std::vector<Subset>{0b000111, 0b011001});
  CHECK(max_availability_t(*u26, 0, LocalityParams{2, 2, 1, false}) == 2);

  // No coordinate of this code has any repair set.
  EntropyOracle skew{asymmetric_code()};
  CHECK(!find_availability(skew, 0, LocalityParams{1, 2, 1, false}));
  CHECK(max_availability_t(skew, 0, LocalityParams{2, 2, 1, false}) == 0);

  expect_error(
      [&] { find_availability(rep, 7, LocalityParams{1, 2, 1, false}); },
      ErrorCode::kInvalidInput);
}

TEST_CASE("cyclic candidate restriction matches the unrestricted search") {
  Rng rng(1123581321);
  const std::uint64_t fields[] = {2, 3};
  int accepted = 0;
  for (int trial = 0; trial < 30 && accepted < 12; ++trial) {
    std::uint64_t q = fields[rng.below(2)];
    int k = 2 + static_cast<int>(rng.below(2));
    int n = 5 + static_cast<int>(rng.below(3));
    std::vector<std::uint64_t> entries;
    for (int i = 0; i < k * n; ++i) entries.push_back(rng.below(q));
    std::optional<GeneratorMatrix> g =
        GeneratorMatrix::try_make(PrimeField{q}, k, n, entries);
    if (!g) continue;
    ++accepted;
    LinearRankOracle oracle{*g};
    for (int x = 0; x < n; ++x) {
      for (int t : {1, 2}) {
        LocalityParams params{2, 2, t, false};
        std::optional<AvailabilityRecord> via_cyclic =
            find_availability(oracle, x, params, true);
        std::optional<AvailabilityRecord> unrestricted =
            find_availability(oracle, x, params, false);
        CHECK(via_cyclic.has_value() == unrestricted.has_value());
        if (via_cyclic && unrestricted) {
          CHECK(via_cyclic->sets == unrestricted->sets);
        }
      }
    }
  }
  CHECK(accepted >= 8);
}

TEST_CASE("availability records hold mutually verified repair sets") {
  Rng rng(8675309);
  for (int trial = 0; trial < 8; ++trial) {
    EntropyOracle oracle{random_code(rng, 5)};
    for (int x = 0; x < 5; ++x) {
      for (int t : {1, 2}) {
        LocalityParams params{2, 2, t, false};
        std::optional<AvailabilityRecord> rec =
            find_availability(oracle, x, params, true);
        if (!rec) continue;
        // Cyclic candidates are a subfamily, so the unrestricted search can
        // only do better.
        CHECK(find_availability(oracle, x, params, false).has_value());
        CHECK(static_cast<int>(rec->sets.size()) == t);
        CHECK(pairwise_meet_in(rec->sets, x));
        for (Subset s : rec->sets) {
          CHECK(is_repair_set(oracle, x, s, params));
        }
      }
    }
  }
}

TEST_CASE("information set enumeration and the greedy shortcut") {
  EntropyOracle even{even_weight_code()};
  CHECK(information_sets(even) ==
        std::vector<Subset>{0b011, 0b101, 0b110});
  CHECK(greedy_information_set(even) == 0b011);
  CHECK(is_information_set(even, 0b101));
  CHECK(!is_information_set(even, 0b001));  // rank deficient
  CHECK(!is_information_set(even, 0b111));  // not minimal

  EntropyOracle skew{asymmetric_code()};
  CHECK(information_sets(skew) == std::vector<Subset>{0b11});

  CHECK(information_sets(*uniform_oracle(2, 4)) ==
        std::vector<Subset>{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100});
  CHECK(greedy_information_set(*uniform_oracle(2, 4)) == 0b0011);
  CHECK(information_sets(*free_oracle(3)) == std::vector<Subset>{0b111});

  EntropyOracle rep{repetition_code(3)};
  CHECK(information_sets(rep) == std::vector<Subset>{0b001, 0b010, 0b100});
  CHECK(greedy_information_set(rep) == 0b001);

  expect_error([] { information_sets(*uniform_oracle(2, 22)); },
               ErrorCode::kLimit);
  expect_error([&] { is_information_set(even, 0b1000); },
               ErrorCode::kInvalidInput);
}

TEST_CASE("one-information sets need unit coordinates") {
  EntropyOracle even{even_weight_code()};
  CHECK(is_one_information(static_cast<const RankOracle&>(even), 0b011));
  CHECK(is_one_information(even, 0b011));  // exact counting certificate
  CHECK(!is_one_information(even, 0b001));

  // The whole ground set is an information set here, but its coordinates
  // carry fractional entropy, so it is not 1-information.
  EntropyOracle skew{asymmetric_code()};
  CHECK(!is_one_information(static_cast<const RankOracle&>(skew), 0b11));
  CHECK(!is_one_information(skew, 0b11));

  CHECK(is_one_information(*uniform_oracle(2, 4), 0b0011));
  EntropyOracle rep{repetition_code(3)};
  CHECK(is_one_information(rep, 0b001));
}

TEST_CASE("length bound on the minimum distance") {
  CHECK(singleton_bound(36, RankValue::of_int(4), 3, 3, 2) == 31);
  CHECK(singleton_bound(36, RankValue::of_real(4.0), 3, 3, 2) == 31);
  CHECK(singleton_bound(10, RankValue::of_int(2), 2, 2, 1) == 9);
  CHECK(singleton_bound(10, RankValue::of_real(2.5), 2, 2, 1) == 7);
  CHECK(singleton_bound(10, RankValue::of_real(2.0 + 1e-10), 2, 2, 1) == 9);
  // r >= k collapses the locality term and leaves n - k + 1.
  CHECK(singleton_bound(7, RankValue::of_int(3), 3, 2, 1) == 5);
  CHECK(singleton_bound(12, RankValue::of_int(3), 3, 2, 1) == 10);

  expect_error([] { singleton_bound(0, RankValue::of_int(2), 1, 2, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { singleton_bound(5, RankValue::of_int(0), 1, 2, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { singleton_bound(5, RankValue::of_real(0.0), 1, 2, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { singleton_bound(5, RankValue::of_int(2), 0, 2, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { singleton_bound(5, RankValue::of_int(2), 1, 1, 1); },
               ErrorCode::kInvalidInput);
  expect_error([] { singleton_bound(5, RankValue::of_int(2), 1, 2, 0); },
               ErrorCode::kInvalidInput);

  // For fixed n, r, delta, t the bound strictly decreases in k.
  std::int64_t prev = singleton_bound(20, RankValue::of_int(1), 2, 3, 2);
  for (std::int64_t k = 2; k <= 8; ++k) {
    std::int64_t cur = singleton_bound(20, RankValue::of_int(k), 2, 3, 2);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("profile assembly for the even-weight code") {
  EntropyOracle even{even_weight_code()};
  Subset full = even.ground().full();
  LocalityParams params{2, 2, 1, false};

  LrcProfile profile =
      build_profile(even, full, params, LocalityClass::kAllSymbol);
  CHECK(profile.n == 3);
  REQUIRE(profile.k.exact_integer.has_value());
  CHECK(*profile.k.exact_integer == 2);
  CHECK(profile.d == 2);
  REQUIRE(profile.d_via_cyclic_flats.has_value());
  CHECK(*profile.d_via_cyclic_flats == 2);
  CHECK(profile.locality_class == LocalityClass::kAllSymbol);
  CHECK(profile.target == full);
  REQUIRE(profile.availability.size() == 3);
  for (int x = 0; x < 3; ++x) {
    CHECK(profile.availability[x].element == x);
    CHECK(profile.availability[x].sets == std::vector<Subset>{0b111});
  }
  CHECK(profile.bound == 2);
  CHECK(profile.perfect);

  // Narrower locality classes verify availability only on the target.
  LrcProfile info =
      build_profile(even, 0b011, params, LocalityClass::kInfoSymbol);
  CHECK(info.d == 2);
  CHECK(info.availability.size() == 2);
  LrcProfile one_info =
      build_profile(even, 0b011, params, LocalityClass::kOneInfoSymbol);
  CHECK(one_info.availability.size() == 2);

  expect_error(
      [&] { build_profile(even, 0b011, params, LocalityClass::kAllSymbol); },
      ErrorCode::kInvalidInput);
  expect_error(
      [&] { build_profile(even, 0b001, params, LocalityClass::kInfoSymbol); },
      ErrorCode::kInvalidInput);
  expect_error(
      [&] { build_profile(even, 0b1011, params, LocalityClass::kAllSymbol); },
      ErrorCode::kInvalidInput);

  // r = 1 leaves every coordinate without a repair set here.
  expect_error(
      [&] {
        build_profile(even, full, LocalityParams{1, 2, 1, false},
                      LocalityClass::kAllSymbol);
      },
      ErrorCode::kAssertion);
}

TEST_CASE("profile assembly across oracle kinds") {
  // Uniform matroid with availability t = 2: meets the bound exactly.
  std::shared_ptr<const RankOracle> u26 = uniform_oracle(2, 6);
  LrcProfile uniform = build_profile(*u26, u26->ground().full(),
                                     LocalityParams{2, 2, 2, false},
                                     LocalityClass::kAllSymbol);
  CHECK(uniform.d == 5);
  CHECK(uniform.bound == 5);
  CHECK(uniform.perfect);
  CHECK(uniform.availability.size() == 6);

  // The ground set is too large for the 2^n sweep and the cyclic-flat
  // enumeration, so the distance must come from the hyperplane route alone.
  std::shared_ptr<const RankOracle> wide = uniform_oracle(2, 22);
  LrcProfile big = build_profile(*wide, wide->ground().full(),
                                 LocalityParams{2, 2, 1, false},
                                 LocalityClass::kAllSymbol);
  CHECK(big.d == 21);
  CHECK(!big.d_via_cyclic_flats.has_value());
  CHECK(big.bound == 21);
  CHECK(big.perfect);
  CHECK(big.availability.size() == 22);

  // The fractional code admits no repair sets at all.
  EntropyOracle skew{asymmetric_code()};
  expect_error(
      [&] {
        build_profile(skew, 0b11, LocalityParams{2, 2, 1, false},
                      LocalityClass::kAllSymbol);
      },
      ErrorCode::kAssertion);
  expect_error(
      [&] {
        build_profile(skew, 0b11, LocalityParams{2, 2, 1, false},
                      LocalityClass::kOneInfoSymbol);
      },
      ErrorCode::kInvalidInput);

  FunctionOracle zero = FunctionOracle::of_int(3, [](Subset) { return 0; });
  expect_error(
      [&] {
        build_profile(zero, zero.ground().full(),
                      LocalityParams{1, 2, 1, false},
                      LocalityClass::kAllSymbol);
      },
      ErrorCode::kInvalidInput);
}
