#include "lrc/linear.hpp"

#include <string>

#include "lrc/errors.hpp"

namespace lrc {

namespace ff {

std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  std::uint64_t r = a + b;
  return r >= q ? r - q : r;
}

std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return a >= b ? a - b : a + q - b;
}

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mul(r, a, q);
    a = mul(a, a, q);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t q) {
  return pow(a, q - 2, q);
}

}  // namespace ff

namespace {

std::uint64_t mulmod_any(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_any(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_any(r, a, m);
    a = mulmod_any(a, a, m);
    e >>= 1;
  }
  return r;
}

constexpr std::uint64_t kFieldSizeCap = std::uint64_t{1} << 61;

}  // namespace

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (v % p == 0) return v == p;
  }
  std::uint64_t d = v - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set decides primality exactly for every 64-bit integer.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_any(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_any(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t q_in) : q(q_in) {
  if (q < 2 || q >= kFieldSizeCap)
    fail(ErrorCode::kInvalidInput,
         "field size must lie in [2, 2^61): " + std::to_string(q));
  if (!is_prime_u64(q))
    fail(ErrorCode::kInvalidInput, std::to_string(q) + " is not prime");
}

PrimeField smallest_prime_at_least(std::uint64_t bound) {
  if (bound >= kFieldSizeCap)
    fail(ErrorCode::kLimit, "prime search bound must be below 2^61");
  std::uint64_t c = bound < 2 ? 2 : bound;
  while (!is_prime_u64(c)) ++c;
  return PrimeField(c);
}

GeneratorMatrix GeneratorMatrix::make(PrimeField field, int k_rows, int n_cols,
                                      std::vector<std::uint64_t> entries) {
  auto m = try_make(field, k_rows, n_cols, std::move(entries));
  if (!m)
    fail(ErrorCode::kInvalidInput,
         "generator matrix does not have full row rank");
  return *m;
}

std::optional<GeneratorMatrix> GeneratorMatrix::try_make(
    PrimeField field, int k_rows, int n_cols,
    std::vector<std::uint64_t> entries) {
  if (k_rows < 1 || n_cols < 1 || n_cols > kMaxGroundSize)
    fail(ErrorCode::kParse, "matrix shape must satisfy k >= 1, 1 <= n <= 64");
  if (k_rows > n_cols)
    fail(ErrorCode::kParse, "more rows than columns cannot have full row rank");
  if (entries.size() !=
      static_cast<std::size_t>(k_rows) * static_cast<std::size_t>(n_cols))
    fail(ErrorCode::kParse, "matrix entry count does not match its shape");
  for (std::uint64_t& e : entries) e %= field.q;
  GeneratorMatrix g(field, k_rows, n_cols, std::move(entries));
  if (column_rank(g, GroundSet{n_cols}.full()) != k_rows) return std::nullopt;
  return g;
}

int column_rank(const GeneratorMatrix& g, Subset cols) {
  if (!is_subset_of(cols, GroundSet{g.n_cols()}.full()))
    fail(ErrorCode::kInvalidInput, "column set outside the matrix width");
  std::uint64_t q = g.field().q;
  int k = g.k_rows();
  // Basis kept fully reduced: each vector is zero at every other pivot, so
  // one sweep eliminates an incoming vector completely.
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<int> pivots;
  for (int c : elements(cols)) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) v[static_cast<std::size_t>(r)] = g.at(r, c);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::uint64_t vp = v[static_cast<std::size_t>(pivots[i])];
      if (vp == 0) continue;
      std::uint64_t bp = basis[i][static_cast<std::size_t>(pivots[i])];
      for (int r = 0; r < k; ++r) {
        std::size_t ri = static_cast<std::size_t>(r);
        v[ri] = ff::sub(ff::mul(bp, v[ri], q), ff::mul(vp, basis[i][ri], q), q);
      }
    }
    int pivot = -1;
    for (int r = 0; r < k; ++r) {
      if (v[static_cast<std::size_t>(r)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    // Back-eliminate the new pivot from the existing basis to keep it
    // reduced.
    std::uint64_t vp = v[static_cast<std::size_t>(pivot)];
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::uint64_t bp = basis[i][static_cast<std::size_t>(pivot)];
      if (bp == 0) continue;
      for (int r = 0; r < k; ++r) {
        std::size_t ri = static_cast<std::size_t>(r);
        basis[i][ri] =
            ff::sub(ff::mul(vp, basis[i][ri], q), ff::mul(bp, v[ri], q), q);
      }
    }
    basis.push_back(std::move(v));
    pivots.push_back(pivot);
    if (static_cast<int>(basis.size()) == k) break;
  }
  return static_cast<int>(basis.size());
}

Code expand_codewords(const GeneratorMatrix& g, std::int64_t limit) {
  std::uint64_t q = g.field().q;
  int k = g.k_rows();
  int n = g.n_cols();
  unsigned __int128 words = 1;
  for (int i = 0; i < k; ++i) {
    words *= q;
    if (words > static_cast<unsigned __int128>(limit))
      fail(ErrorCode::kLimit,
           "expansion would produce q^k > " + std::to_string(limit) +
               " codewords");
  }
  if (q > std::uint64_t{1} << 32)
    fail(ErrorCode::kLimit, "expansion needs symbols within 32 bits");
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(static_cast<std::size_t>(words));
  std::vector<std::uint64_t> msg(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<std::uint32_t> word(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      std::uint64_t acc = 0;
      for (int r = 0; r < k; ++r)
        acc = ff::add(acc,
                      ff::mul(msg[static_cast<std::size_t>(r)], g.at(r, c), q),
                      q);
      word[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(acc);
    }
    out.push_back(std::move(word));
    int pos = k - 1;
    while (pos >= 0) {
      std::size_t pi = static_cast<std::size_t>(pos);
      if (++msg[pi] < q) break;
      msg[pi] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return Code::from_words(static_cast<std::uint32_t>(q), n, std::move(out));
}

}  // namespace lrc
