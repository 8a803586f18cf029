#include "osculant/field_linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace osculant::linalg {

namespace {

u64 mulmod_generic(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_generic(r, a, p);
    a = mulmod_generic(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This base set is exact for every n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_generic(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(u64 prime) : p(prime) {
  if (prime >= (1ULL << 63))
    throw std::domain_error("PrimeModulus: modulus must be below 2^63");
  if (!is_prime_u64(prime))
    throw std::domain_error("PrimeModulus: modulus is not prime");
}

u64 Fp::pow(u64 a, u64 e) const {
  u64 r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Fp::inv(u64 a) const {
  if (a == 0) throw std::domain_error("Fp::inv of zero");
  return pow(a, p_ - 2);
}

RankResult rank(DenseMatrix m, const PrimeModulus& p) {
  Fp F(p);
  RankResult res;
  res.rows = m.rows;
  res.cols = m.cols;
  const std::size_t maxrank = std::min(m.rows, m.cols);
  std::size_t pr = 0;  // next pivot row
  for (std::size_t col = 0; col < m.cols && pr < m.rows; ++col) {
    std::size_t piv = pr;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != pr) {
      u64* a = m.row(pr);
      u64* b = m.row(piv);
      std::swap_ranges(a + col, a + m.cols, b + col);
    }
    const u64 pivinv = F.inv(m.at(pr, col));
    const u64* prow = m.row(pr);
    for (std::size_t r = pr + 1; r < m.rows; ++r) {
      u64* trow = m.row(r);
      if (trow[col] == 0) continue;
      const u64 f = F.mul(trow[col], pivinv);
      trow[col] = 0;
      for (std::size_t c = col + 1; c < m.cols; ++c) {
        if (prow[c]) trow[c] = F.sub(trow[c], F.mul(f, prow[c]));
      }
    }
    ++pr;
    if (pr == maxrank) break;
  }
  res.rank = pr;
  return res;
}

RankResult max_rank_over_trials(const std::function<DenseMatrix(u64)>& builder,
                                unsigned trials, const PrimeModulus& p, u64 root_seed) {
  RankResult best;
  for (unsigned t = 0; t < trials; ++t) {
    RankResult r = rank(builder(derive_seed(root_seed, t)), p);
    if (t == 0 || r.rank > best.rank) best = r;
    if (best.full()) break;
  }
  return best;
}

StreamingRank::StreamingRank(std::size_t cols, const PrimeModulus& p)
    : cols_(cols), field_(p) {}

void StreamingRank::add_row(const std::vector<u64>& row) {
  if (row.size() != cols_) throw std::domain_error("StreamingRank: row width mismatch");
  add_row(row.data());
}

void StreamingRank::add_row(const u64* row) {
  std::vector<u64> r(row, row + cols_);
  // Pivot rows are stored in insertion order; each was reduced against all
  // earlier ones, so reducing in insertion order clears every pivot column.
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const u64 f = r[pivot_cols_[i]];
    if (f == 0) continue;
    const u64* p = pivots_[i].data();
    r[pivot_cols_[i]] = 0;
    for (std::size_t c = pivot_cols_[i] + 1; c < cols_; ++c) {
      if (p[c]) r[c] = field_.sub(r[c], field_.mul(f, p[c]));
    }
  }
  std::size_t lead = cols_;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (r[c] != 0) {
      lead = c;
      break;
    }
  }
  if (lead == cols_) return;  // dependent row
  const u64 inv = field_.inv(r[lead]);
  r[lead] = 1;
  for (std::size_t c = lead + 1; c < cols_; ++c) r[c] = field_.mul(r[c], inv);
  pivots_.push_back(std::move(r));
  pivot_cols_.push_back(lead);
}

u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

u64 derive_seed(u64 a, u64 b) {
  // Order-sensitive: derive_seed(a,b) != derive_seed(b,a) in general.
  return splitmix64(a ^ (0x9E3779B97F4A7C15ULL + splitmix64(b) + (a << 6) + (a >> 2)));
}

u64 RandomStream::next() { return splitmix64(state_++); }

u64 RandomStream::next_mod(u64 p) {
  // Rejection sampling on the top bits keeps the distribution exactly uniform.
  if (p == 0) throw std::domain_error("RandomStream::next_mod(0)");
  int bits = 64 - __builtin_clzll(p | 1);
  for (;;) {
    u64 x = next() >> (64 - bits);
    if (x < p) return x;
  }
}

u64 RandomStream::next_nonzero_mod(u64 p) {
  for (;;) {
    u64 x = next_mod(p);
    if (x != 0) return x;
  }
}

}  // namespace osculant::linalg
