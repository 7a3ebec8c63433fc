#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lrc/subsets.hpp"

namespace lrc {

// Tolerance for floating-point *reporting* checks (axiom spot checks,
// integrality tagging). Algorithmic decisions never compare entropies
// against this; they route through the oracles' exact predicates.
inline constexpr double kRankEpsilon = 1e-9;

struct RankValue {
  double numeric = 0.0;
  // Set when the value is a known integer (integral polymatroids, uniform
  // power-of-s projections). When set, numeric == double(*exact_integer).
  std::optional<std::int64_t> exact_integer;

  static RankValue of_int(std::int64_t v) {
    return RankValue{static_cast<double>(v), v};
  }
  static RankValue of_real(double v) { return RankValue{v, std::nullopt}; }
  bool is_exact() const { return exact_integer.has_value(); }
};

struct SetWithRank {
  Subset set = 0;
  RankValue rank;
};

struct CheckMode {
  enum class Kind { kExhaustive, kSampled };
  Kind kind = Kind::kExhaustive;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;

  static CheckMode exhaustive() { return CheckMode{}; }
  static CheckMode sampled(std::uint64_t seed, std::int64_t trials) {
    return CheckMode{Kind::kSampled, seed, trials};
  }
};

struct AxiomViolation {
  std::string axiom;            // "R1".."R5"
  std::vector<Subset> witness;  // subsets behind the verdict
  std::vector<double> values;   // the rank values that clash
};

struct AxiomReport {
  CheckMode mode;
  std::int64_t checked = 0;  // number of (in)equalities evaluated
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

// A polymatroid (E, rho) presented through its rank function. Oracles are
// immutable after construction and safe for concurrent readers; every
// operation on them is a pure function of (oracle, arguments).
class RankOracle {
 public:
  virtual ~RankOracle() = default;

  virtual GroundSet ground() const = 0;
  virtual RankValue rank(Subset x) const = 0;

  // Exact predicate: rho(x) == rho(y), for x a subset of y. Subclasses with
  // counting certificates override; the default uses exact integers when
  // both sides carry them and falls back to the epsilon comparison.
  virtual bool rank_equal(Subset x, Subset y) const;

  // Exact predicate: rho(x) - rho(x \ {e}) == 1, for e in x.
  virtual bool unit_drop(Subset x, int e) const;

  // True when every rank is a known integer (matroid-backed oracles).
  virtual bool integral() const { return false; }

  // Construction-backed oracles expose their cyclic-flat list so analyses
  // can skip the generic enumeration.
  virtual std::optional<std::vector<SetWithRank>> explicit_cyclic_flats()
      const {
    return std::nullopt;
  }
};

// Rank function given directly as a callable; used for hand-built oracles
// in tests and for wrapping closed-form rank formulas.
class FunctionOracle final : public RankOracle {
 public:
  static FunctionOracle of_int(int n, std::function<std::int64_t(Subset)> f) {
    FunctionOracle o;
    o.n_ = n;
    o.int_fn_ = std::move(f);
    return o;
  }
  static FunctionOracle of_real(int n, std::function<double(Subset)> f) {
    FunctionOracle o;
    o.n_ = n;
    o.real_fn_ = std::move(f);
    return o;
  }

  GroundSet ground() const override { return GroundSet{n_}; }
  RankValue rank(Subset x) const override {
    if (int_fn_) return RankValue::of_int(int_fn_(x));
    return RankValue::of_real(real_fn_(x));
  }
  bool integral() const override { return static_cast<bool>(int_fn_); }

 private:
  FunctionOracle() = default;
  int n_ = 0;
  std::function<std::int64_t(Subset)> int_fn_;
  std::function<double(Subset)> real_fn_;
};

// Materializes all 2^n rank values; n is capped to keep the table sane.
std::vector<RankValue> rank_table(const RankOracle& oracle, int max_n = 25);

}  // namespace lrc
