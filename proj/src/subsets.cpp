#include "lrc/subsets.hpp"

#include "lrc/errors.hpp"

namespace lrc {

std::vector<int> elements(Subset x) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(x)));
  while (x) {
    int e = std::countr_zero(x);
    out.push_back(e);
    x &= x - 1;
  }
  return out;
}

Subset subset_of_elements(const std::vector<int>& elems) {
  Subset s = 0;
  for (int e : elems) {
    if (e < 0 || e >= kMaxGroundSize)
      fail(ErrorCode::kParse, "element index out of range: " + std::to_string(e));
    s |= singleton(e);
  }
  return s;
}

std::vector<int> labels(Subset x) {
  std::vector<int> out = elements(x);
  for (int& e : out) ++e;
  return out;
}

Subset subset_of_labels(const std::vector<int>& one_based, int n) {
  Subset s = 0;
  for (int label : one_based) {
    if (label < 1 || label > n)
      fail(ErrorCode::kParse,
           "element label " + std::to_string(label) + " outside [1, " +
               std::to_string(n) + "]");
    s |= singleton(label - 1);
  }
  return s;
}

std::string format_subset(Subset x) {
  std::vector<int> ls = labels(x);
  std::string out = "{";
  std::size_t i = 0;
  while (i < ls.size()) {
    std::size_t j = i;
    while (j + 1 < ls.size() && ls[j + 1] == ls[j] + 1) ++j;
    if (i > 0) out += ", ";
    if (j > i)
      out += std::to_string(ls[i]) + "-" + std::to_string(ls[j]);
    else
      out += std::to_string(ls[i]);
    i = j + 1;
  }
  out += "}";
  return out;
}

}  // namespace lrc
