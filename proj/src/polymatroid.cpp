#include "lrc/polymatroid.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "lrc/errors.hpp"
#include "lrc/rng.hpp"

namespace lrc {

namespace {

constexpr int kMaxExhaustiveN = 16;
constexpr std::size_t kMaxViolations = 25;

bool room(const AxiomReport& report) {
  return report.violations.size() < kMaxViolations;
}

void check_empty_rank(const RankOracle& oracle, AxiomReport& report) {
  RankValue r0 = oracle.rank(0);
  ++report.checked;
  bool ok = r0.exact_integer ? *r0.exact_integer == 0
                             : std::abs(r0.numeric) <= kRankEpsilon;
  if (!ok) report.violations.push_back({"R1", {0}, {r0.numeric}});
}

// Exhaustive monotonicity: every single-element extension. A failure of
// rho(X) <= rho(Y) for some X within Y implies a failing extension along any
// chain from X to Y, so this covers all nested pairs.
void check_monotone_exhaustive(const std::vector<double>& t, int n,
                               AxiomReport& report) {
  Subset full = GroundSet{n}.full();
  for (Subset y = 1; room(report); ++y) {
    for (Subset rest = y; rest;) {
      int e = std::countr_zero(rest);
      rest &= rest - 1;
      Subset x = without_element(y, e);
      ++report.checked;
      if (t[y] < t[x] - kRankEpsilon) {
        report.violations.push_back({"R2", {x, y}, {t[x], t[y]}});
        if (!room(report)) break;
      }
    }
    if (y == full) break;
  }
}

void check_submodular_exhaustive(const std::vector<double>& t, int n,
                                 AxiomReport& report) {
  Subset full = GroundSet{n}.full();
  for (Subset x = 0; room(report); ++x) {
    double tx = t[x];
    for (Subset y = x;; ++y) {
      ++report.checked;
      if (tx + t[y] < t[x | y] + t[x & y] - kRankEpsilon) {
        report.violations.push_back(
            {"R3", {x, y}, {tx, t[y], t[x | y], t[x & y]}});
        if (!room(report)) break;
      }
      if (y == full) break;
    }
    if (x == full) break;
  }
}

void check_sampled(const RankOracle& oracle, const CheckMode& mode,
                   AxiomReport& report) {
  int n = oracle.ground().n;
  Rng rng(mode.seed);
  for (std::int64_t i = 0; i < mode.trials && room(report); ++i) {
    Subset x = rng.mask(n);
    Subset y = rng.mask(n);
    RankValue rx = oracle.rank(x);
    RankValue ry = oracle.rank(y);
    RankValue ru = oracle.rank(x | y);
    RankValue ri = oracle.rank(x & y);
    ++report.checked;
    if (rx.numeric + ry.numeric < ru.numeric + ri.numeric - kRankEpsilon)
      report.violations.push_back(
          {"R3", {x, y}, {rx.numeric, ry.numeric, ru.numeric, ri.numeric}});
    ++report.checked;
    if (ru.numeric < rx.numeric - kRankEpsilon)
      report.violations.push_back({"R2", {x, x | y}, {rx.numeric, ru.numeric}});
  }
}

void check_matroid_subset(Subset x, const RankValue& r, AxiomReport& report) {
  ++report.checked;
  bool integral = r.exact_integer
                      ? true
                      : std::abs(r.numeric - std::round(r.numeric)) <=
                            kRankEpsilon;
  if (!integral) report.violations.push_back({"R4", {x}, {r.numeric}});
  ++report.checked;
  if (r.numeric > static_cast<double>(set_size(x)) + kRankEpsilon)
    report.violations.push_back(
        {"R5", {x}, {r.numeric, static_cast<double>(set_size(x))}});
}

void require_checkable(const RankOracle& oracle, const CheckMode& mode) {
  int n = oracle.ground().n;
  if (n < 1) fail(ErrorCode::kInvalidInput, "axiom checks need n >= 1");
  if (n > kMaxGroundSize)
    fail(ErrorCode::kLimit, "ground set larger than 64 elements");
  if (mode.kind == CheckMode::Kind::kExhaustive && n > kMaxExhaustiveN)
    fail(ErrorCode::kLimit,
         "exhaustive axiom check infeasible for n = " + std::to_string(n) +
             " (cap is n = " + std::to_string(kMaxExhaustiveN) +
             "); use sampled mode");
}

}  // namespace

AxiomReport check_polymatroid(const RankOracle& oracle, const CheckMode& mode) {
  require_checkable(oracle, mode);
  AxiomReport report;
  report.mode = mode;
  check_empty_rank(oracle, report);
  if (mode.kind == CheckMode::Kind::kExhaustive) {
    int n = oracle.ground().n;
    std::vector<RankValue> values = rank_table(oracle, kMaxExhaustiveN);
    std::vector<double> t(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) t[i] = values[i].numeric;
    check_monotone_exhaustive(t, n, report);
    check_submodular_exhaustive(t, n, report);
  } else {
    check_sampled(oracle, mode, report);
  }
  return report;
}

AxiomReport check_matroid(const RankOracle& oracle, const CheckMode& mode) {
  AxiomReport report = check_polymatroid(oracle, mode);
  if (mode.kind == CheckMode::Kind::kExhaustive) {
    Subset full = oracle.ground().full();
    for (Subset x = 0; room(report); ++x) {
      check_matroid_subset(x, oracle.rank(x), report);
      if (x == full) break;
    }
  } else {
    int n = oracle.ground().n;
    Rng rng(mix_seed(mode.seed, 1));
    for (std::int64_t i = 0; i < mode.trials && room(report); ++i) {
      Subset x = rng.mask(n);
      check_matroid_subset(x, oracle.rank(x), report);
    }
  }
  return report;
}

RankValue eta(const RankOracle& oracle, Subset x) {
  RankValue r = oracle.rank(x);
  RankValue out;
  out.numeric = static_cast<double>(set_size(x)) - r.numeric;
  if (r.exact_integer) out.exact_integer = set_size(x) - *r.exact_integer;
  return out;
}

Subset closure(const RankOracle& oracle, Subset x) {
  Subset full = oracle.ground().full();
  Subset out = x;
  for (Subset rest = full & ~x; rest;) {
    int e = std::countr_zero(rest);
    rest &= rest - 1;
    if (oracle.rank_equal(x, with_element(x, e))) out = with_element(out, e);
  }
  return out;
}

bool is_flat(const RankOracle& oracle, Subset x) {
  Subset full = oracle.ground().full();
  for (Subset rest = full & ~x; rest;) {
    int e = std::countr_zero(rest);
    rest &= rest - 1;
    if (oracle.rank_equal(x, with_element(x, e))) return false;
  }
  return true;
}

bool is_cyclic(const RankOracle& oracle, Subset x) {
  for (Subset rest = x; rest;) {
    int e = std::countr_zero(rest);
    rest &= rest - 1;
    if (oracle.unit_drop(x, e)) return false;
  }
  return true;
}

std::vector<SetWithRank> cyclic_flats(const RankOracle& oracle,
                                      const EnumLimits& limits,
                                      bool use_explicit) {
  if (use_explicit) {
    if (auto listed = oracle.explicit_cyclic_flats()) return *listed;
  }
  int n = oracle.ground().n;
  if (n > limits.max_n)
    fail(ErrorCode::kLimit,
         "cyclic-flat enumeration over 2^" + std::to_string(n) +
             " subsets exceeds the cap (n <= " + std::to_string(limits.max_n) +
             ")");
  Subset full = oracle.ground().full();
  std::vector<SetWithRank> out;
  for (Subset x = 0;; ++x) {
    if (is_flat(oracle, x) && is_cyclic(oracle, x))
      out.push_back({x, oracle.rank(x)});
    if (x == full) break;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SetWithRank& a, const SetWithRank& b) {
                     int sa = set_size(a.set), sb = set_size(b.set);
                     return sa != sb ? sa < sb : a.set < b.set;
                   });
  return out;
}

Subset one_Z(const RankOracle& oracle, const EnumLimits& limits) {
  Subset u = 0;
  for (const SetWithRank& f : cyclic_flats(oracle, limits)) u |= f.set;
  return u;
}

namespace {

class RestrictedOracle final : public RankOracle {
 public:
  RestrictedOracle(std::shared_ptr<const RankOracle> base, Subset y)
      : base_(std::move(base)), map_(elements(y)) {}

  GroundSet ground() const override {
    return GroundSet{static_cast<int>(map_.size())};
  }
  RankValue rank(Subset x) const override { return base_->rank(embed(x)); }
  bool rank_equal(Subset x, Subset y) const override {
    return base_->rank_equal(embed(x), embed(y));
  }
  bool unit_drop(Subset x, int e) const override {
    return base_->unit_drop(embed(x), map_[static_cast<std::size_t>(e)]);
  }
  bool integral() const override { return base_->integral(); }

 private:
  Subset embed(Subset x) const {
    Subset out = 0;
    while (x) {
      int e = std::countr_zero(x);
      x &= x - 1;
      out |= singleton(map_[static_cast<std::size_t>(e)]);
    }
    return out;
  }

  std::shared_ptr<const RankOracle> base_;
  std::vector<int> map_;
};

class ScaledOracle final : public RankOracle {
 public:
  ScaledOracle(std::shared_ptr<const RankOracle> base, RankValue unit)
      : base_(std::move(base)), unit_(unit) {}

  GroundSet ground() const override { return base_->ground(); }

  RankValue rank(Subset x) const override {
    RankValue r = base_->rank(x);
    RankValue out = RankValue::of_real(r.numeric / unit_.numeric);
    if (r.exact_integer && unit_.exact_integer &&
        *r.exact_integer % *unit_.exact_integer == 0) {
      out.exact_integer = *r.exact_integer / *unit_.exact_integer;
      out.numeric = static_cast<double>(*out.exact_integer);
    }
    return out;
  }

  // Rescaling by a positive constant preserves rank equalities exactly.
  bool rank_equal(Subset x, Subset y) const override {
    return base_->rank_equal(x, y);
  }

  // A unit drop here is a drop by `unit_` in the base oracle.
  bool unit_drop(Subset x, int e) const override {
    RankValue a = base_->rank(x);
    RankValue b = base_->rank(without_element(x, e));
    if (a.exact_integer && b.exact_integer && unit_.exact_integer)
      return *a.exact_integer - *b.exact_integer == *unit_.exact_integer;
    return std::abs((a.numeric - b.numeric) / unit_.numeric - 1.0) <=
           kRankEpsilon;
  }

 private:
  std::shared_ptr<const RankOracle> base_;
  RankValue unit_;
};

}  // namespace

std::shared_ptr<const RankOracle> restrict_to(
    std::shared_ptr<const RankOracle> oracle, Subset y) {
  Subset full = oracle->ground().full();
  if (!is_subset_of(y, full))
    fail(ErrorCode::kInvalidInput, "restriction set outside the ground set");
  return std::make_shared<RestrictedOracle>(std::move(oracle), y);
}

std::shared_ptr<const RankOracle> normalize_to_unit(
    std::shared_ptr<const RankOracle> oracle) {
  int n = oracle->ground().n;
  RankValue best = RankValue::of_int(0);
  for (int e = 0; e < n; ++e) {
    RankValue r = oracle->rank(singleton(e));
    if (r.numeric > best.numeric) best = r;
  }
  if (best.numeric <= kRankEpsilon) return oracle;  // zero oracle: unchanged
  bool already_unit = best.exact_integer ? *best.exact_integer == 1
                                         : best.numeric == 1.0;
  if (already_unit) return oracle;
  return std::make_shared<ScaledOracle>(std::move(oracle), best);
}

}  // namespace lrc
