#pragma once
// Differential Horace steps: assemble the exact trace/residual configurations
// of the induction, verify all three vanishing statements by rank, and replay
// the induction as a certificate tree.
//
// A step consists of W (schemes kept whole: generic members plus members
// embedded in the hyperplane H) and Z (schemes supported on H, each sliced
// vertically at its layer p along its slicing axis). Validity means the trace
// vanishes in degree d on H and the residual vanishes in degree d-1; the
// conclusion is the direct degree-d check on W plus fresh generic copies of
// the Z kinds.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "osculant/hilbert.hpp"

namespace osculant::horace {

using linalg::u64;

struct ZEntry {
  schemes::PlacedScheme placed;  // support on H; directions flagged per axis
  int axis = 0;                  // slicing axis in local coordinates
  int layer = 0;                 // p
};

struct HoraceStep {
  int n = 0;
  int d = 0;  // degree of the trace and conclusion checks; residual runs at d-1
  schemes::Configuration w;
  std::vector<ZEntry> z;
  std::string provenance;  // thm22-general | thm22-n4 | lemma23-44 | lemma23-54 |
                           // lemma23-64 | step7-inner | custom
  u64 seed = 0;
};

struct StepReport {
  int n = 0;
  int d = 0;
  std::string provenance;
  std::uint64_t trace_h0 = 0;
  std::uint64_t residual_h0 = 0;
  std::uint64_t conclusion_h0 = 0;
  bool step_valid = false;           // trace_h0 == 0 && residual_h0 == 0
  bool implication_observed = false; // step_valid => conclusion_h0 == 0
  hilbert::HilbertReport trace;
  hilbert::HilbertReport residual;
  hilbert::HilbertReport conclusion;
};

// The proof's step at (n, d): Z on H with layer pattern (0...,1...,2,0) and W
// carrying the remaining schemes plus the remainder. The three d=4 cases
// n in {4,5,6} return their ad-hoc assemblies. Trace, residual and conclusion
// lengths are asserted to be exactly settled; infeasible counts throw with
// the violated inequality named.
HoraceStep build_step_thm22(int n, int d, u64 seed, const linalg::PrimeModulus& prime);

// The inner-induction step used when r_{3,d} = 6 (d = 3 mod 7, d >= 10):
// verifies the degree-(d-1) vanishing on P^4; the returned step has
// step.d = d - 1. Rejects d with r_{3,d} != 6.
HoraceStep build_step7_inner(int d, u64 seed, const linalg::PrimeModulus& prime);

// Derived configurations (exposed for direct inspection and tests).
schemes::Configuration trace_configuration(const HoraceStep& step);
schemes::Configuration residual_configuration(const HoraceStep& step);
schemes::Configuration conclusion_configuration(const HoraceStep& step);

StepReport verify_step(const HoraceStep& step, const hilbert::HilbertOptions& opt);

// --- induction replay ---------------------------------------------------------

struct NodeRecord {
  std::string key;  // "n=..,d=.."
  int n = 0;
  int d = 0;
  std::string kind;        // "step" | "leaf-reg-d3" | "leaf-reg-n3" | "leaf-quadric"
  std::string provenance;  // for steps
  bool evaluated = false;
  bool prop = false;
  bool reg = false;
  bool dime = false;
  bool degue = false;
  std::string error;  // set when a build or verification failed
  // step measurements
  std::uint64_t trace_h0 = 0, residual_h0 = 0, conclusion_h0 = 0;
  // leaf measurements (settled count s, h1 at s, h0 at s+1)
  std::uint64_t leaf_s = 0, leaf_h1_at_s = 0, leaf_h0_above = 0;
  bool known_anomaly = false;  // the n=4, d=3 leaf
};

struct InductionTrace {
  int n_max = 0;
  int d_max = 0;
  std::vector<NodeRecord> nodes;  // leaves first, then steps in (d, n) order
  std::vector<std::pair<std::string, std::string>> edges;  // node -> dependency
  bool all_prop = true;   // every step node evaluated with prop true
  bool leaves_ok = true;  // every leaf matches its expected facts
};

// Verifies the leaves (third-degree facts for each n, the n=3 column, the
// quadric facts) and every step node for 4 <= n <= n_max, 4 <= d <= d_max.
// A failed node is recorded with its error, never silently skipped.
InductionTrace replay_induction(int n_max, int d_max, const hilbert::HilbertOptions& opt);

// The third-degree facts for one n (reused by the replay and the acceptance
// checks): s = s_{n,3}, h1 at X_s, h0 at X_{s+1}, and for n=4 also h0/h1 at
// s=4 and h0 at s=5 (the known anomalous column).
struct BaseD3Facts {
  int n = 0;
  std::uint64_t s = 0;
  std::uint64_t h1_at_s = 0;
  std::uint64_t h0_above = 0;        // h0 at s+1 (n != 4) or at s+2 = 5 (n = 4)
  std::uint64_t h0_anomaly = 0;      // n=4: h0 at s+1 = 4
  std::uint64_t h1_anomaly = 0;      // n=4: h1 at s+1 = 4
  bool ok = false;
};
BaseD3Facts base_d3_facts(int n, const hilbert::HilbertOptions& opt);

}  // namespace osculant::horace
