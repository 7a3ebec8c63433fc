#include "lrc/represent.hpp"

#include <algorithm>
#include <utility>

#include "lrc/errors.hpp"
#include "lrc/rng.hpp"

namespace lrc {
namespace {

constexpr int kMaxExhaustiveVerifyN = 18;
constexpr std::size_t kMaxMismatchWitnesses = 10;
constexpr int kMaxBasisRedraws = 1000;

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<Vec>;  // list of rows, all the same length

// In-place reduced row echelon form; returns the pivot column of each of the
// first `rank` rows.
std::vector<int> rref(Mat& m, std::uint64_t q) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    std::uint64_t iv = ff::inv(m[rank][c], q);
    for (int cc = c; cc < cols; ++cc) m[rank][cc] = ff::mul(m[rank][cc], iv, q);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      std::uint64_t f = m[r][c];
      for (int cc = c; cc < cols; ++cc) {
        m[r][cc] = ff::sub(m[r][cc], ff::mul(f, m[rank][cc], q), q);
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

// Basis of {v in F_q^cols : R v = 0}. No rows means the whole space.
Mat nullspace_basis(Mat rows, int cols, std::uint64_t q) {
  std::vector<int> pivots = rref(rows, q);
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  Mat basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      std::uint64_t val = rows[r][f];
      if (val != 0) v[pivots[r]] = q - val;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// d uniformly random independent vectors of F_q^k (rows of the result);
// empty on persistent bad luck, which only tiny fields can produce.
Mat draw_subspace(Rng& rng, int k, int d, std::uint64_t q) {
  for (int tries = 0; tries < kMaxBasisRedraws; ++tries) {
    Mat rows(d, Vec(k));
    for (Vec& row : rows) {
      for (std::uint64_t& v : row) v = rng.below(q);
    }
    Mat copy = rows;
    if (static_cast<int>(rref(copy, q).size()) == d) return rows;
  }
  return {};
}

Vec draw_nonzero_vector(Rng& rng, int k, std::uint64_t q) {
  while (true) {
    Vec v(k);
    bool any = false;
    for (std::uint64_t& x : v) {
      x = rng.below(q);
      any = any || x != 0;
    }
    if (any) return v;
  }
}

// Uniform draw from the span of `basis` minus zero, as a nonzero coefficient
// combination (the basis rows are independent, so nonzero coefficients give
// a nonzero vector).
Vec draw_nonzero_combination(Rng& rng, const Mat& basis, int k,
                             std::uint64_t q) {
  while (true) {
    Vec coef(basis.size());
    bool any = false;
    for (std::uint64_t& c : coef) {
      c = rng.below(q);
      any = any || c != 0;
    }
    if (!any) continue;
    Vec col(k, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (coef[i] == 0) continue;
      for (int j = 0; j < k; ++j) {
        col[j] = ff::add(col[j], ff::mul(coef[i], basis[i][j], q), q);
      }
    }
    return col;
  }
}

}  // namespace

VerifyReport verify_representation(const GeneratorMatrix& matrix,
                                   const ConstructedMatroid& matroid,
                                   const VerifyPolicy& policy) {
  GroundSet g = matroid.ground();
  if (matrix.n_cols() != g.n ||
      static_cast<std::int64_t>(matrix.k_rows()) != matroid.spec().k) {
    fail(ErrorCode::kInvalidInput,
         "matrix shape " + std::to_string(matrix.k_rows()) + "x" +
             std::to_string(matrix.n_cols()) +
             " does not match the matroid (k = " +
             std::to_string(matroid.spec().k) +
             ", n = " + std::to_string(g.n) + ")");
  }

  bool exhaustive = false;
  switch (policy.kind) {
    case VerifyPolicyKind::kAuto:
      exhaustive = g.n <= kMaxExhaustiveVerifyN;
      break;
    case VerifyPolicyKind::kExhaustive:
      if (g.n > kMaxExhaustiveVerifyN) {
        fail(ErrorCode::kLimit,
             "exhaustive verification caps at n = " +
                 std::to_string(kMaxExhaustiveVerifyN) + ", got n = " +
                 std::to_string(g.n));
      }
      exhaustive = true;
      break;
    case VerifyPolicyKind::kStructural:
      exhaustive = false;
      break;
  }

  VerifyReport report;
  report.exhaustive = exhaustive;
  auto compare = [&](Subset x) {
    std::int64_t from_matrix = column_rank(matrix, x);
    std::int64_t from_matroid = *matroid.rank(x).exact_integer;
    ++report.checked;
    if (from_matrix != from_matroid) {
      report.mismatches.push_back(
          VerifyMismatch{x, from_matrix, from_matroid});
    }
    return report.mismatches.size() < kMaxMismatchWitnesses;
  };

  if (exhaustive) {
    for_each_subset_of(g.full(), compare);
    return report;
  }

  std::vector<Subset> targets;
  targets.push_back(0);
  targets.push_back(g.full());
  for (int e = 0; e < g.n; ++e) targets.push_back(singleton(e));
  for (const SetWithRank& f : matroid.flats()) {
    targets.push_back(f.set);
    for (int e = 0; e < g.n; ++e) {
      if (!contains(f.set, e)) targets.push_back(with_element(f.set, e));
    }
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (Subset x : targets) {
    if (!compare(x)) return report;
  }
  Rng rng(policy.seed);
  for (int i = 0; i < policy.samples; ++i) {
    if (!compare(rng.mask(g.n))) return report;
  }
  return report;
}

RepresentationResult represent(const ConstructedMatroid& matroid,
                               const RepresentOptions& options) {
  const ConstructionSpec& spec = matroid.spec();
  if (spec.k < 1) {
    fail(ErrorCode::kInvalidInput, "representation needs positive rank k");
  }
  if (options.max_attempts < 1) {
    fail(ErrorCode::kInvalidInput, "max_attempts must be at least 1");
  }
  int n = spec.n;
  int k = static_cast<int>(spec.k);
  PrimeField field =
      options.q ? PrimeField(*options.q)
                : smallest_prime_at_least(std::uint64_t{1}
                                          << std::min(n, 30));

  std::vector<std::string> warnings;
  bool q_below_2n =
      n >= 61 || field.q < (std::uint64_t{1} << n);
  if (q_below_2n) {
    warnings.push_back(
        "field size q = " + std::to_string(field.q) + " is below 2^" +
        std::to_string(n) +
        "; that bound is sufficient but not necessary, so draws may need "
        "retries or fail verification");
  }

  int m = static_cast<int>(spec.blocks.size());
  std::vector<int> dim(m);
  for (int i = 0; i < m; ++i) {
    dim[i] = static_cast<int>(
        std::min<std::int64_t>(spec.blocks[i].rank, spec.k));
  }
  for (int e = 0; e < n; ++e) {
    int codim = 0;
    bool covered = false;
    for (int i = 0; i < m; ++i) {
      if (contains(spec.blocks[i].elements, e)) {
        covered = true;
        codim += k - dim[i];
      }
    }
    if (covered && k - codim <= 0) {
      fail(ErrorCode::kLimit,
           "the generic-subspace sampler cannot represent this matroid: the "
           "blocks containing element " +
               std::to_string(e + 1) +
               " intersect in a generically zero-dimensional subspace");
    }
  }

  std::string last_failure = "no attempt produced a candidate matrix";
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(attempt)));

    std::vector<Mat> annihilator(m);
    bool draw_ok = true;
    for (int i = 0; i < m; ++i) {
      Mat basis = draw_subspace(rng, k, dim[i], field.q);
      if (static_cast<int>(basis.size()) != dim[i]) {
        draw_ok = false;
        last_failure = "could not draw an independent basis for a block";
        break;
      }
      annihilator[i] = nullspace_basis(std::move(basis), k, field.q);
    }
    if (!draw_ok) continue;

    std::vector<std::uint64_t> entries(
        static_cast<std::size_t>(k) * static_cast<std::size_t>(n));
    for (int e = 0; e < n && draw_ok; ++e) {
      Mat stacked;
      bool covered = false;
      for (int i = 0; i < m; ++i) {
        if (!contains(spec.blocks[i].elements, e)) continue;
        covered = true;
        stacked.insert(stacked.end(), annihilator[i].begin(),
                       annihilator[i].end());
      }
      Vec col;
      if (!covered) {
        col = draw_nonzero_vector(rng, k, field.q);
      } else {
        Mat base = nullspace_basis(std::move(stacked), k, field.q);
        if (base.empty()) {
          draw_ok = false;
          last_failure = "a block intersection collapsed to the zero space";
          break;
        }
        col = draw_nonzero_combination(rng, base, k, field.q);
      }
      for (int r = 0; r < k; ++r) {
        entries[static_cast<std::size_t>(r) * n + e] = col[r];
      }
    }
    if (!draw_ok) continue;

    std::optional<GeneratorMatrix> gm =
        GeneratorMatrix::try_make(field, k, n, std::move(entries));
    if (!gm) {
      last_failure = "the drawn matrix was not full row rank";
      continue;
    }
    VerifyReport report = verify_representation(*gm, matroid, options.verify);
    if (report.passed()) {
      return RepresentationResult{std::move(*gm), std::move(report), attempt,
                                  options.seed, std::move(warnings)};
    }
    const VerifyMismatch& w = report.mismatches.front();
    last_failure = "rank mismatch on " + format_subset(w.witness) +
                   ": matrix " + std::to_string(w.matrix_rank) +
                   ", expected " + std::to_string(w.matroid_rank);
  }
  fail(ErrorCode::kAssertion,
       "representation failed after " + std::to_string(options.max_attempts) +
           " attempts; last failure: " + last_failure);
}

}  // namespace lrc
