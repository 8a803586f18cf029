#pragma once
// Hilbert functions of placed configurations in a fixed degree.
//
// A scheme supported at P with chart directions v_1..v_n imposes, for each
// multi-index a in its dual set, the vanishing of the t^a-coefficient of
// F(P + t_1 v_1 + ... + t_n v_n) on degree-d forms F. Rows are built
// division-free by expanding each monomial of degree d as a product of the
// (n+1) affine linear forms and truncating at the dual set's maximal order.

#include <cstdint>
#include <vector>

#include "osculant/field_linalg.hpp"
#include "osculant/schemes.hpp"

namespace osculant::hilbert {

using linalg::u64;

struct HilbertOptions {
  u64 prime = linalg::kDefaultPrime;
  u64 seed = 0;
  unsigned trials = 3;
  // Re-run deficient ranks under a second prime and keep the max; guards
  // against unlucky characteristic effects.
  bool cross_check = false;
};

struct HilbertReport {
  int n = 0;
  int d = 0;
  std::uint64_t total_length = 0;
  std::uint64_t dim_forms = 0;  // C(n+d, n)
  std::uint64_t rank = 0;
  std::uint64_t h0 = 0;
  std::uint64_t h1 = 0;
  std::uint64_t expected_h0 = 0;
  std::uint64_t expected_h1 = 0;
  bool regular = false;
  bool defective_evidence = false;
  unsigned trials = 0;
  u64 prime = 0;
  u64 seed = 0;
  bool cross_checked = false;
};

// Condition matrix of the configuration as placed (frames used verbatim).
// Rows are grouped by scheme, in configuration order, each block in the dual
// set's canonical order; columns run over degree-d monomials in the n+1
// homogeneous coordinates in ascending lexicographic exponent order.
linalg::DenseMatrix conditions_matrix(const schemes::Configuration& cfg, int d,
                                      const linalg::PrimeModulus& prime);

// A single condition row (exposed so tests can cross it against an
// independent construction).
std::vector<u64> condition_row(const schemes::PlacedScheme& ps, int n,
                               const schemes::MultiIndex& alpha, int d,
                               const linalg::PrimeModulus& prime);

// Hilbert data of the configuration in degree d. Each trial re-places every
// frame (constraints honored) from a seed derived from (opt.seed, trial);
// the reported rank is the max over trials, which is exact once full and a
// certified lower bound otherwise.
HilbertReport hilbert_report(const schemes::Configuration& cfg, int d,
                             const HilbertOptions& opt);

// Hilbert data of cfg plus s generic 2-jets (jets constrained to the
// canonical hyperplane when on_hyperplane is set).
HilbertReport add_jets_report(const schemes::Configuration& cfg, int s, int d,
                              bool on_hyperplane, const HilbertOptions& opt);

// Ranks of the nested sub-configurations formed by the first cuts[j] schemes
// of cfg (cuts ascending, each <= cfg.schemes.size()). All sub-configurations
// share placements, so the whole scan costs one elimination per trial; entry
// j is the max over trials of the rank of the first cuts[j] scheme blocks.
std::vector<std::uint64_t> nested_ranks(const schemes::Configuration& cfg,
                                        const std::vector<std::size_t>& cuts, int d,
                                        const HilbertOptions& opt);

// Assembles the report fields from a measured rank (shared by the direct and
// nested paths; also used by acceptance checks that already hold ranks).
HilbertReport report_from_rank(int n, int d, std::uint64_t total_length, std::uint64_t rank,
                               const HilbertOptions& opt, bool cross_checked);

}  // namespace osculant::hilbert
