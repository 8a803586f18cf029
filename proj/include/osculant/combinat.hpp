#pragma once
// Exact integer combinatorics: dimension counts, Euclidean splits, remainder
// decompositions, and the closed-form inequality sweeps backing the induction.
// All arithmetic runs in 128-bit intermediates with overflow checks.

#include <cstdint>
#include <string>
#include <vector>

namespace osculant::combinat {

using i128 = __int128;

std::string i128_to_string(i128 v);

// C(n+d, n) in 128 bits; throws std::range_error on 128-bit overflow.
i128 dim_forms_wide(int n, int d);

// C(n+d, n) as a machine count; throws std::range_error when it exceeds
// the signed 64-bit range.
std::uint64_t dim_forms(int n, int d);

// C(n+d, n) = (2n+1) * s + r with 0 <= r <= 2n.
struct SplitSR {
  i128 s = 0;
  i128 r = 0;
};
SplitSR split_sr(int n, int d);

// r = delta * fat_degree + 2h + eps with delta, eps in {0,1},
// delta = 1 iff r > n, and 0 <= r - delta*fat_degree <= n.
struct RemainderShape {
  int delta = 0;
  int h = 0;
  int eps = 0;
};
RemainderShape decompose_remainder(i128 r, i128 fat_degree, int n);

// The proof's n=4 variant: r = 2h + eps, delta = 0 (h may reach 3).
RemainderShape decompose_remainder_n4(i128 r);

// t_{n,d} = s_{n,d} - s_{n-1,d} - h - eps - delta, where (delta,h,eps)
// decomposes r_{n-1,d} at fat degree n (n=4 uses the 2h+eps variant).
i128 t_quantity(int n, int d);

// --- appendix inequality sweeps ---------------------------------------------

enum class AppendixFamily { A1, A2, A3, A4, Mod7 };

AppendixFamily appendix_family_from_string(const std::string& s);
std::string appendix_family_name(AppendixFamily f);

struct InequalityVerdict {
  std::string which;       // "A1".."A4", "MOD7"
  std::string instance;    // e.g. "n=5,d=5", "A4i d=12", "d=3 (mod 7)"
  bool hypothesis_met = false;
  bool holds = false;
  i128 lhs = 0;
  i128 rhs = 0;
  std::string comparison;  // written as a predicate on lhs/rhs, e.g. "lhs >= rhs"
  std::string note;        // carries paper-discrepancy notes when applicable
};

// Enumerates the family over its natural grid clipped to n_max/d_max.
// Requested instances outside the stated hypothesis are emitted with
// hypothesis_met = false (never silently dropped). Every s, r, h, eps, delta
// is recomputed exactly; where a known printed value disagrees with the exact
// one, a "paper-discrepancy" note is attached to the verdict.
std::vector<InequalityVerdict> verify_appendix(AppendixFamily f, int n_max, int d_max);

// r_{3,d}, r_{3,d-1} and d mod 7 (the inner-induction bookkeeping for n=4).
struct Step7Facts {
  int r3d = 0;
  int r3d_minus_1 = 0;
  int d_mod_7 = 0;
};
Step7Facts r3d_step7_facts(long long d);

}  // namespace osculant::combinat
