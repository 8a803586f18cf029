#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracle_rational.hpp"
#include "osculant/field_linalg.hpp"

using namespace osculant::linalg;

TEST_CASE("modulus validation") {
  CHECK_NOTHROW(PrimeModulus{kDefaultPrime});
  CHECK_NOTHROW(PrimeModulus{kCrossCheckPrime});
  CHECK_NOTHROW(PrimeModulus{2});
  CHECK_THROWS(PrimeModulus(1));
  CHECK_THROWS(PrimeModulus(2305843009213693950ULL));  // composite
  CHECK_THROWS(PrimeModulus(9223372036854775837ULL));  // prime but >= 2^63
  CHECK(is_prime_u64(kDefaultPrime));
  CHECK(is_prime_u64(kCrossCheckPrime));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(561));  // Carmichael
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
}

TEST_CASE("field arithmetic matches wide-integer arithmetic under both primes") {
  for (u64 prime : {kDefaultPrime, kCrossCheckPrime}) {
    const PrimeModulus P(prime);
    const Fp F(P);
    RandomStream rs(42);
    for (int i = 0; i < 200; ++i) {
      const u64 a = rs.next_mod(prime);
      const u64 b = rs.next_mod(prime);
      CHECK(F.add(a, b) == (static_cast<u128>(a) + b) % prime);
      CHECK(F.sub(a, b) == (static_cast<u128>(a) + prime - b) % prime);
      CHECK(F.mul(a, b) == static_cast<u64>(static_cast<u128>(a) * b % prime));
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) {
        CHECK(F.mul(a, F.inv(a)) == 1);
        CHECK(F.pow(a, prime - 1) == 1);  // Fermat
      }
    }
    CHECK(F.pow(3, 0) == 1);
    CHECK(F.reduce_i64(-1) == prime - 1);
    CHECK(F.reduce_i64(0) == 0);
  }
}

TEST_CASE("rank of known matrices") {
  const PrimeModulus P = PrimeModulus::default_prime();
  DenseMatrix id(4, 4);
  for (int i = 0; i < 4; ++i) id.at(i, i) = 1;
  CHECK(rank(id, P).rank == 4);
  CHECK(rank(id, P).full());

  DenseMatrix z(3, 5);
  CHECK(rank(z, P).rank == 0);

  DenseMatrix dup(3, 3);
  for (int j = 0; j < 3; ++j) {
    dup.at(0, j) = static_cast<u64>(j + 1);
    dup.at(1, j) = static_cast<u64>(2 * (j + 1));  // multiple of row 0
    dup.at(2, j) = static_cast<u64>(j * j + 1);
  }
  CHECK(rank(dup, P).rank == 2);
}

// Small random integer matrices: every maximal minor is far below either
// prime, so the rank over the rationals and the rank mod p must coincide
// exactly (a nonzero minor cannot vanish mod p).
TEST_CASE("modular rank equals exact rational rank on small integer matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> entry(-20, 20);
  std::uniform_int_distribution<int> size(1, 8);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t r = static_cast<std::size_t>(size(rng));
    const std::size_t c = static_cast<std::size_t>(size(rng)) + 2;
    std::vector<std::vector<oracle::Rat>> exact(r, std::vector<oracle::Rat>(c));
    DenseMatrix m(r, c);
    std::vector<long long> raw(r * c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        raw[i * c + j] = entry(rng);
        exact[i][j] = raw[i * c + j];
      }
    const std::size_t want = oracle::rat_rank(exact);
    for (u64 prime : {kDefaultPrime, kCrossCheckPrime}) {
      const PrimeModulus P(prime);
      const Fp F(P);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = F.reduce_i64(raw[i * c + j]);
      CHECK(rank(m, P).rank == want);
    }
  }
}

TEST_CASE("streaming rank agrees with batch rank and is prefix-monotone") {
  const PrimeModulus P = PrimeModulus::default_prime();
  RandomStream rs(99);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t rows = 12, cols = 9;
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m.at(i, j) = trial % 2 == 0 ? rs.next_mod(5) : rs.next_mod(P.p);
    StreamingRank sr(cols, P);
    std::size_t prev = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      sr.add_row(m.row(i));
      DenseMatrix prefix(i + 1, cols);
      std::copy(m.a.begin(), m.a.begin() + static_cast<long>((i + 1) * cols), prefix.a.begin());
      CHECK(sr.rank() == rank(prefix, P).rank);
      CHECK(sr.rank() >= prev);
      CHECK(sr.rank() <= prev + 1);
      prev = sr.rank();
    }
    CHECK(sr.rank() == rank(m, P).rank);
  }
}

TEST_CASE("max_rank_over_trials takes the best trial and certifies full rank early") {
  const PrimeModulus P = PrimeModulus::default_prime();
  int calls = 0;
  auto builder = [&](u64 seed) {
    ++calls;
    DenseMatrix m(3, 3);
    // Seed parity controls whether the matrix is singular.
    const bool full = (seed % 2 == 0) || calls >= 2;
    for (int i = 0; i < 3; ++i) m.at(i, i) = full ? 1 : 0;
    m.at(0, 1) = 1;
    return m;
  };
  auto res = max_rank_over_trials(builder, 8, P, 12345);
  CHECK(res.rank == 3);
  CHECK(calls <= 2);  // stopped as soon as one trial was full

  auto never_full = [](u64) {
    DenseMatrix m(2, 3);
    m.at(0, 0) = 1;
    return m;
  };
  CHECK(max_rank_over_trials(never_full, 4, P, 1).rank == 1);
}

TEST_CASE("seed derivation is deterministic and order-sensitive") {
  CHECK(splitmix64(0) == splitmix64(0));
  CHECK(splitmix64(1) != splitmix64(2));
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  CHECK(derive_seed(0, 0) == derive_seed(0, 0));

  RandomStream a(7), b(7), c(8);
  const u64 a1 = a.next();
  CHECK(a1 == b.next());
  CHECK(a.next() == b.next());
  CHECK(c.next() != a1);
}

TEST_CASE("bounded sampling stays in range") {
  RandomStream rs(3);
  for (int i = 0; i < 500; ++i) {
    CHECK(rs.next_mod(7) < 7);
    const u64 nz = rs.next_nonzero_mod(5);
    CHECK(nz >= 1);
    CHECK(nz < 5);
  }
  RandomStream huge(4);
  for (int i = 0; i < 50; ++i) CHECK(huge.next_mod(kCrossCheckPrime) < kCrossCheckPrime);
}
