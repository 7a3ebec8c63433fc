#include "lrc/rank.hpp"

#include <cmath>

#include "lrc/errors.hpp"

namespace lrc {

bool RankOracle::rank_equal(Subset x, Subset y) const {
  RankValue a = rank(x);
  RankValue b = rank(y);
  if (a.exact_integer && b.exact_integer)
    return *a.exact_integer == *b.exact_integer;
  return std::abs(a.numeric - b.numeric) <= kRankEpsilon;
}

bool RankOracle::unit_drop(Subset x, int e) const {
  RankValue a = rank(x);
  RankValue b = rank(without_element(x, e));
  if (a.exact_integer && b.exact_integer)
    return *a.exact_integer - *b.exact_integer == 1;
  return std::abs((a.numeric - b.numeric) - 1.0) <= kRankEpsilon;
}

std::vector<RankValue> rank_table(const RankOracle& oracle, int max_n) {
  int n = oracle.ground().n;
  if (n > max_n)
    fail(ErrorCode::kLimit, "rank table needs 2^" + std::to_string(n) +
                                " entries, above the cap of 2^" +
                                std::to_string(max_n));
  Subset full = oracle.ground().full();
  std::vector<RankValue> table;
  table.reserve(static_cast<std::size_t>(full) + 1);
  for (Subset x = 0;; ++x) {
    table.push_back(oracle.rank(x));
    if (x == full) break;
  }
  return table;
}

}  // namespace lrc
