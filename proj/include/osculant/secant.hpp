#pragma once
// Secant-variety dimensions from Hilbert reports: expected dimensions, actual
// dimensions via the inverse-system count, double-point (Alexander-
// Hirschowitz) checks, the tangential-variety exception scan, and the n=2
// osculating classification with its two superabundance conditions.

#include <cstdint>
#include <string>
#include <vector>

#include "osculant/hilbert.hpp"

namespace osculant::secant {

struct SecantProblem {
  int k = 1;  // osculating order; 0 = plain double points, 1 = tangential
  int n = 2;
  int d = 0;
  int s = 1;
};

struct SecantReport {
  SecantProblem problem;
  std::uint64_t N = 0;       // C(n+d,n) - 1
  std::uint64_t expdim = 0;  // min(N, s(n + C(k+n,n) - 1) + s - 1)
  std::uint64_t dim = 0;
  std::uint64_t defect = 0;  // expdim - dim
  bool defective = false;
  std::string basis;             // "tangent23" | "zbar-specialized" | "fatpoint"
  std::string evidence_quality;  // "certified-regular" | "randomized"
  hilbert::HilbertReport hilbert;
};

std::uint64_t expected_secant_dim(const SecantProblem& p);

// s generic double points (k=0 row of the family).
SecantReport veronese_secant_dim(int n, int d, int s, const hilbert::HilbertOptions& opt);

// s generic (2,3,n)-schemes; d >= 2.
SecantReport tangential_secant_dim(int n, int d, int s, const hilbert::HilbertOptions& opt);

// n=2 osculating family via the specialized schemes: k=0 delegates to double
// points, k>=1 uses ZBar(k). A regular specialized scheme certifies the
// generic one; a defective specialized scheme is evidence only.
SecantReport osculating_secant_dim_p2(int k, int d, int s, const hilbert::HilbertOptions& opt);

// --- exception tables ---------------------------------------------------------

// Double points: d=2 with 2 <= s <= n, plus (2,4,5), (3,4,9), (4,3,7), (4,4,14).
bool ah_exception(int n, int d, int s);

// Tangential variety: d=3 with s=n in {2,3,4}; d=2 with s >= 2 and 2s <= n.
// The d=2 family includes 2s = n: the measured ranks (and the quadratic
// Veronese's rank geometry) show sigma_s is defective there as well.
bool conj1_exception(int n, int d, int s);

struct AHCheck {
  SecantReport report;
  bool in_exception_list = false;
  bool matches_ah = false;  // defective <=> listed
};
AHCheck check_ah(int n, int d, int s, const hilbert::HilbertOptions& opt);

struct Conj1Cell {
  SecantReport report;
  bool expected_defective = false;
  bool matches = false;
};
struct Conj1Scan {
  std::vector<Conj1Cell> cells;
  std::size_t mismatch_count = 0;
  bool all_match = true;
};
// Grid 2 <= n <= n_max, 2 <= d <= d_max, 1 <= s <= ceil(C(n+d,n)/(2n+1)) + 1.
Conj1Scan conj1_scan(int n_max, int d_max, const hilbert::HilbertOptions& opt);

// --- n=2 osculating classification --------------------------------------------

struct Conj2aVerdict {
  SecantProblem problem;  // n=2
  std::string branch;     // "regular" | "lemma34-case-i" | "lemma34-case-ii" | "inconsistent"
  std::uint64_t h0_x = 0, h1_x = 0;      // X = s FatPoint(k+1)
  std::uint64_t h0_t = 0;                // T = s FatPoint(k+2)
  std::uint64_t h0_ybar = 0, h1_ybar = 0;  // Ybar = s ZBar(k)
  std::uint64_t deg_y = 0;               // s (C(k+2,2) + 2)
  bool condition_i = false;   // h1(X) >  max(0, deg Y - C(d+2,2))
  bool condition_ii = false;  // h0(T) >  max(0, C(d+2,2) - deg Y)
  bool ybar_defective = false;
};
Conj2aVerdict conj2a_classify(int k, int d, int s, const hilbert::HilbertOptions& opt);

struct Conj2aScan {
  std::vector<Conj2aVerdict> cells;
  bool any_inconsistent = false;
  // defective(Ybar) => condition_i or condition_ii; regular(Ybar) => neither.
  bool soundness_ok = true;
};
// Grid 0 <= k <= k_max, k+2 <= d <= d_max, 1 <= s <= s_max (k >= 1 rows only).
Conj2aScan conj2a_scan(int k_max, int d_max, int s_max, const hilbert::HilbertOptions& opt);

struct SpanDim {
  std::uint64_t computed = 0;  // C(n+d,n) - 1 - h0(s FatPoint(k+1), d)
  std::uint64_t expected = 0;  // min(s C(k+n,n) - 1, C(n+d,n) - 1)
  bool matches = false;
  hilbert::HilbertReport hilbert;
};
// Dimension of the span of the k-th osculating spaces at s generic points.
SpanDim osculating_span_dim(int k, int n, int d, int s, const hilbert::HilbertOptions& opt);

}  // namespace osculant::secant
