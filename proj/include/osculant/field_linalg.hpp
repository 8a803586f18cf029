#pragma once
// Prime-field arithmetic and exact dense rank computation.
//
// Everything here is deterministic: ranks depend only on the matrix entries,
// and the randomized helpers (max_rank_over_trials) derive every trial seed
// from the caller's root seed with a fixed bit-mixing function.

#include <cstdint>
#include <functional>
#include <vector>

namespace osculant::linalg {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// 2^61 - 1 (Mersenne). Default modulus: reduction is two fold-adds.
inline constexpr u64 kDefaultPrime = 2305843009213693951ULL;
// Largest prime below 2^63; used to re-check ranks reported as deficient.
inline constexpr u64 kCrossCheckPrime = 9223372036854775783ULL;

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(u64 n);

// A validated prime modulus. Rejects composites and p >= 2^63 (add/sub headroom).
struct PrimeModulus {
  u64 p;
  explicit PrimeModulus(u64 prime);
  static PrimeModulus default_prime() { return PrimeModulus(kDefaultPrime); }
  bool operator==(const PrimeModulus& o) const { return p == o.p; }
};

// Arithmetic in F_p; canonical representatives in [0, p).
class Fp {
 public:
  explicit Fp(const PrimeModulus& m) : p_(m.p), mersenne_(m.p == kDefaultPrime) {}

  u64 p() const { return p_; }
  u64 reduce_i64(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return r < 0 ? static_cast<u64>(r + static_cast<long long>(p_)) : static_cast<u64>(r);
  }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;  // no overflow: a + b <= 2(p-1) < 2^64
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const {
    if (mersenne_) {
      u128 x = static_cast<u128>(a) * b;
      u64 r = static_cast<u64>(x & kDefaultPrime) + static_cast<u64>(x >> 61);
      r = (r & kDefaultPrime) + (r >> 61);
      return r >= kDefaultPrime ? r - kDefaultPrime : r;
    }
    return static_cast<u64>(static_cast<u128>(a) * b % p_);
  }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;  // a != 0

 private:
  u64 p_;
  bool mersenne_;
};

// Row-major dense matrix over F_p.
struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<u64> a;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  u64& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  u64 at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  u64* row(std::size_t r) { return a.data() + r * cols; }
  const u64* row(std::size_t r) const { return a.data() + r * cols; }
};

struct RankResult {
  std::size_t rank = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool full() const { return rank == (rows < cols ? rows : cols); }
};

// Gaussian elimination with first-nonzero partial pivoting. Takes the matrix
// by value (eliminates in place). Stops once rank == min(rows, cols).
RankResult rank(DenseMatrix m, const PrimeModulus& p);

// Max over `trials` of rank(builder(trial_seed)), trial_seed derived from
// (root_seed, trial index). Stops early once a trial reaches full rank: the
// max cannot exceed it, and by semicontinuity full rank at one point
// certifies the generic value.
RankResult max_rank_over_trials(const std::function<DenseMatrix(u64)>& builder,
                                unsigned trials, const PrimeModulus& p, u64 root_seed);

// Incremental Gaussian elimination: feed rows one at a time, read the rank of
// everything provided so far. Pivot rows are kept normalized and mutually
// reduced, so the whole stream costs one elimination of the final matrix.
class StreamingRank {
 public:
  StreamingRank(std::size_t cols, const PrimeModulus& p);
  void add_row(const u64* row);  // `cols` entries
  void add_row(const std::vector<u64>& row);
  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t cols_;
  Fp field_;
  std::vector<std::vector<u64>> pivots_;   // echelon rows, leading coefficient 1
  std::vector<std::size_t> pivot_cols_;    // leading column of each pivot row
};

// --- deterministic seeding -------------------------------------------------

u64 splitmix64(u64 x);
// Order-sensitive combiner for seed derivation chains.
u64 derive_seed(u64 a, u64 b);

// Counter-based stream of 64-bit values (SplitMix64 sequence).
class RandomStream {
 public:
  explicit RandomStream(u64 seed) : state_(seed) {}
  u64 next();
  // Uniform in [0, p) by rejection; p > 0.
  u64 next_mod(u64 p);
  // Uniform in [1, p).
  u64 next_nonzero_mod(u64 p);

 private:
  u64 state_;
};

}  // namespace osculant::linalg
