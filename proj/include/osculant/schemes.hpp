#pragma once
// Zero-dimensional scheme models. Every supported scheme is described locally
// by its dual set: the order ideal of multi-indices whose Taylor functionals
// cut out the ideal at the support point. Dual sets are the single source of
// truth for lengths, slices and condition rows; ideals are never materialized.
//
// Axis conventions (0-based, n local variables):
//   FatPoint(m)   {a : |a| <= m-1}
//   Jet2          {0, e_{n-1}}                      L = last axis
//   Tangent23     {0} u {e_i} u {e_i + e_{n-1}}     L = last axis
//   ZBar(k), n=2  {|a| <= k} u {(k+1,0), (k,1)}     L = first axis
//   ZPrime(k),n=2 {|a| <= k} u {(k+1,0)}            L = first axis
//   Custom        any explicit order ideal

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osculant/field_linalg.hpp"

namespace osculant::schemes {

using linalg::u64;

struct MultiIndex {
  std::vector<int> e;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exps) : e(std::move(exps)) {}
  int total() const;
  int size() const { return static_cast<int>(e.size()); }
  bool operator==(const MultiIndex& o) const { return e == o.e; }
  // Graded order: by total degree, then lexicographic on exponents.
  bool operator<(const MultiIndex& o) const;
};

// A finite, divisibility-closed set of multi-indices in canonical order.
struct DualSet {
  int n = 0;
  std::vector<MultiIndex> idx;

  // Sorts, deduplicates and checks closure under division.
  static DualSet make(int n, std::vector<MultiIndex> indices);

  std::size_t size() const { return idx.size(); }
  int max_order() const;
  bool contains(const MultiIndex& a) const;
  bool operator==(const DualSet& o) const { return n == o.n && idx == o.idx; }
};

// Exhaustive closure check (used by make and by property tests).
bool is_order_ideal(int n, const std::vector<MultiIndex>& idx);

enum class KindTag { FatPoint, Jet2, Tangent23, ZBar, ZPrime, Custom };

struct SchemeKind {
  KindTag tag = KindTag::FatPoint;
  int param = 1;       // m for FatPoint, k for ZBar/ZPrime
  DualSet custom;      // only for Custom
  std::string label;   // display name for Custom kinds

  static SchemeKind fat_point(int m);
  static SchemeKind jet2();
  static SchemeKind tangent23();
  static SchemeKind zbar(int k);
  static SchemeKind zprime(int k);
  static SchemeKind custom_kind(DualSet d, std::string label);

  std::string name() const;
};

// The dual set of a kind in n local variables. Validates kind/n compatibility
// (ZBar/ZPrime require n == 2; Custom requires custom.n == n).
DualSet dual_set(const SchemeKind& kind, int n);

// Length (= dual set size) via closed forms, cross-checked by tests.
std::size_t scheme_length(const SchemeKind& kind, int n);

// The frame direction along the distinguished line L, or -1 if the kind has
// no distinguished direction.
int distinguished_axis(const SchemeKind& kind, int n);

// --- differential slicing ---------------------------------------------------

struct SlicePair {
  DualSet trace;     // n-1 variables (slicing axis erased)
  DualSet residual;  // n variables
};

// Vertically graded slice at `layer` p along `axis`:
//   trace    = {a with axis erased : a_axis = p}
//   residual = {a : a_axis < p} u {a - e_axis : a_axis > p}
// |trace| + |residual| = |d| always; layer 0 is the classical trace/residual.
SlicePair differential_slice(const DualSet& d, int axis, int layer);

// Appends a trailing zero exponent: a scheme of a hyperplane viewed in the
// ambient space, with the new last axis transversal to the hyperplane.
DualSet embed_in_hyperplane(const DualSet& d);

// --- placement ---------------------------------------------------------------

// A point of P^n with a basis of chart directions. Directions have zero pivot
// coordinate; [point; dirs] has full rank n+1.
struct Frame {
  std::vector<u64> point;              // n+1 homogeneous coordinates
  std::vector<std::vector<u64>> dirs;  // n rows, each n+1 coordinates
  int pivot = 0;
};

struct PlacementFlags {
  bool support_on_h = false;
  std::vector<bool> dirs_in_h;  // per-direction: must annihilate H
};

struct PlacedScheme {
  SchemeKind kind;
  PlacementFlags flags;
  Frame frame;
};

struct Configuration {
  int n = 0;
  std::vector<PlacedScheme> schemes;
  // Nonempty when placement used a non-canonical hyperplane form; redraws
  // keep honoring it.
  std::optional<std::vector<u64>> hyperplane;
  std::size_t total_length() const;
};

// Constraints for place_generic. The hyperplane defaults to {x_n = 0}; a
// custom linear form is honored by drawing in adapted coordinates and mapping
// back through a fixed invertible change of coordinates, so constrained
// incidences hold exactly.
struct PlacementConstraint {
  bool support_on_h = false;
  bool direction_in_h = false;  // constrains the kind's distinguished axis
  std::optional<std::vector<u64>> hyperplane;
};

// Places count_i copies of each kind at independent generic points (fresh
// chart coordinates from the seeded stream), honoring the constraint for all
// of them. Deterministic in (seed, scheme index, n). Degenerate draws are
// re-drawn a bounded number of times, then reported as an error.
Configuration place_generic(const std::vector<std::pair<SchemeKind, int>>& groups, int n,
                            const PlacementConstraint& constraint, u64 seed,
                            const linalg::PrimeModulus& prime);

// Lower-level single placement with explicit per-direction flags.
PlacedScheme place_one(const SchemeKind& kind, int n, const PlacementFlags& flags, u64 seed,
                       const linalg::PrimeModulus& prime);

// Redraws every frame (constraints honored); frame i depends only on
// (seed, i, n), so configurations sharing a prefix share placements.
Configuration replace_frames(const Configuration& cfg, u64 seed,
                             const linalg::PrimeModulus& prime);

// The generic remainder of total degree r: delta 2-fat points, h 2-jets and
// eps simple points (fat degree n+1); empty when r = 0.
std::vector<SchemeKind> remainder_kinds(int n, int r);

}  // namespace osculant::schemes
