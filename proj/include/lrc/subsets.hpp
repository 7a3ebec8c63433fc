#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

namespace lrc {

// A subset of a ground set with at most 64 elements, one bit per element.
// Element i (0-based internally) is bit i. External formats label elements
// 1-based; conversion happens at the I/O boundary only.
using Subset = std::uint64_t;

inline constexpr int kMaxGroundSize = 64;

struct GroundSet {
  int n = 0;

  Subset full() const {
    return n >= kMaxGroundSize ? ~Subset{0} : (Subset{1} << n) - 1;
  }
};

inline int set_size(Subset x) { return std::popcount(x); }
inline bool contains(Subset x, int e) { return (x >> e) & Subset{1}; }
inline Subset singleton(int e) { return Subset{1} << e; }
inline Subset with_element(Subset x, int e) { return x | singleton(e); }
inline Subset without_element(Subset x, int e) { return x & ~singleton(e); }
inline bool is_subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

// 0-based element indices, ascending.
std::vector<int> elements(Subset x);

// Inverse of elements(); indices 0-based.
Subset subset_of_elements(const std::vector<int>& elems);

// 1-based labels, ascending (for wire formats).
std::vector<int> labels(Subset x);
Subset subset_of_labels(const std::vector<int>& one_based, int n);

// "{1, 5-8}" style: 1-based labels, maximal runs collapsed.
std::string format_subset(Subset x);

namespace detail {
template <class F, class... A>
bool call_step(F&& f, A&&... a) {
  if constexpr (std::is_void_v<std::invoke_result_t<F&, A&&...>>) {
    f(std::forward<A>(a)...);
    return true;
  } else {
    return f(std::forward<A>(a)...);
  }
}
}  // namespace detail

// All submasks of pool in ascending integer order, the empty set first.
// f takes a Subset and may return void, or bool where false stops early.
// Returns false iff stopped early.
template <class F>
bool for_each_subset_of(Subset pool, F&& f) {
  Subset s = 0;
  while (true) {
    if (!detail::call_step(f, s)) return false;
    if (s == pool) return true;
    s = (s - pool) & pool;
  }
}

// All size-`choose` subsets of `items`, in lexicographic order of the chosen
// element lists (items must be ascending for that reading). Same callback
// contract as for_each_subset_of.
template <class F>
bool for_each_combination(const std::vector<int>& items, int choose, F&& f) {
  int m = static_cast<int>(items.size());
  if (choose < 0 || choose > m) return true;
  std::vector<int> idx(choose);
  for (int i = 0; i < choose; ++i) idx[i] = i;
  while (true) {
    Subset s = 0;
    for (int i : idx) s |= singleton(items[i]);
    if (!detail::call_step(f, s)) return false;
    int i = choose - 1;
    while (i >= 0 && idx[i] == m - choose + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < choose; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace lrc
