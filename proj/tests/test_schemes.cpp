#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "osculant/combinat.hpp"
#include "osculant/schemes.hpp"

using namespace osculant;
using namespace osculant::schemes;

namespace {

MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }

// Direct set-comprehension slice, independent of the library implementation.
SlicePair naive_slice(const DualSet& d, int axis, int layer) {
  std::vector<MultiIndex> tr, re;
  for (const auto& a : d.idx) {
    if (a.e[axis] == layer) {
      std::vector<int> t;
      for (int i = 0; i < a.size(); ++i)
        if (i != axis) t.push_back(a.e[i]);
      tr.push_back(mi(std::move(t)));
    }
    if (a.e[axis] < layer) {
      re.push_back(a);
    } else if (a.e[axis] > layer) {
      auto b = a.e;
      b[axis] -= 1;
      re.push_back(mi(std::move(b)));
    }
  }
  return SlicePair{DualSet::make(d.n - 1, std::move(tr)), DualSet::make(d.n, std::move(re))};
}

DualSet swap_axes(const DualSet& d, int a, int b) {
  std::vector<MultiIndex> out;
  for (auto m : d.idx) {
    std::swap(m.e[a], m.e[b]);
    out.push_back(std::move(m));
  }
  return DualSet::make(d.n, std::move(out));
}

DualSet without(const DualSet& d, const MultiIndex& drop) {
  std::vector<MultiIndex> out;
  for (const auto& m : d.idx)
    if (!(m == drop)) out.push_back(m);
  return DualSet::make(d.n, std::move(out));
}

std::vector<SchemeKind> kinds_for(int n) {
  std::vector<SchemeKind> ks = {SchemeKind::fat_point(1), SchemeKind::fat_point(2),
                                SchemeKind::fat_point(3), SchemeKind::fat_point(4),
                                SchemeKind::jet2(), SchemeKind::tangent23()};
  if (n == 2) {
    for (int k = 1; k <= 3; ++k) {
      ks.push_back(SchemeKind::zbar(k));
      ks.push_back(SchemeKind::zprime(k));
    }
    ks.push_back(SchemeKind::custom_kind(
        DualSet::make(2, {mi({0, 0}), mi({1, 0}), mi({0, 1}), mi({1, 1}), mi({2, 0})}),
        "staircase"));
  }
  return ks;
}

}  // namespace

TEST_CASE("multi-index ordering is graded, then lexicographic") {
  CHECK(mi({0, 0}) < mi({0, 1}));
  CHECK(mi({0, 1}) < mi({1, 0}));   // same degree: lexicographic on exponents
  CHECK(mi({1, 0}) < mi({0, 2}));   // degree dominates
  CHECK(mi({2, 0}).total() == 2);
  CHECK_FALSE(mi({1, 0}) < mi({1, 0}));
  // Canonical order inside a dual set.
  auto d = dual_set(SchemeKind::fat_point(2), 2);
  REQUIRE(d.size() == 3);
  CHECK(d.idx[0] == mi({0, 0}));
  CHECK(d.idx[1] == mi({0, 1}));
  CHECK(d.idx[2] == mi({1, 0}));
}

TEST_CASE("dual set construction validates closure and arity") {
  CHECK_THROWS(DualSet::make(2, {mi({1, 0})}));           // missing origin
  CHECK_THROWS(DualSet::make(2, {mi({0, 0}), mi({1, 1})}));  // missing (1,0),(0,1)
  CHECK_THROWS(DualSet::make(2, {mi({0, 0, 0})}));        // arity mismatch
  CHECK_THROWS(DualSet::make(2, {mi({-1, 0})}));          // negative exponent
  auto d = DualSet::make(2, {mi({0, 0}), mi({0, 0}), mi({1, 0})});  // dedup
  CHECK(d.size() == 2);
  CHECK(is_order_ideal(2, d.idx));
  CHECK(d.contains(mi({1, 0})));
  CHECK_FALSE(d.contains(mi({0, 1})));
  CHECK(d.max_order() == 1);
}

TEST_CASE("dual set lengths match closed forms") {
  for (int n = 2; n <= 9; ++n) {
    CHECK(dual_set(SchemeKind::tangent23(), n).size() == std::size_t(2 * n + 1));
    CHECK(dual_set(SchemeKind::jet2(), n).size() == 2);
    for (int m = 1; m <= 5; ++m) {
      auto want = static_cast<std::size_t>(combinat::dim_forms(n, m - 1));
      CHECK(dual_set(SchemeKind::fat_point(m), n).size() == want);
    }
  }
  for (int k = 1; k <= 4; ++k) {
    auto base = static_cast<std::size_t>(combinat::dim_forms(2, k));
    CHECK(dual_set(SchemeKind::zbar(k), 2).size() == base + 2);
    CHECK(dual_set(SchemeKind::zprime(k), 2).size() == base + 1);
  }
  // scheme_length agrees with the materialized dual set everywhere.
  for (int n = 2; n <= 6; ++n)
    for (const auto& k : kinds_for(n)) CHECK(scheme_length(k, n) == dual_set(k, n).size());
}

TEST_CASE("tangential-osculating dual set contains second order along the line") {
  for (int n = 2; n <= 6; ++n) {
    auto d = dual_set(SchemeKind::tangent23(), n);
    std::vector<int> twice(n, 0);
    twice[n - 1] = 2;
    CHECK(d.contains(mi(twice)));  // the (2,3)-scheme is second order along L
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(n, 0), f(n, 0);
      e[i] = 1;
      f[i] += 1;
      f[n - 1] += 1;
      CHECK(d.contains(mi(e)));
      CHECK(d.contains(mi(f)));
    }
  }
}

TEST_CASE("kind/arity validation") {
  CHECK_THROWS(dual_set(SchemeKind::zbar(1), 3));
  CHECK_THROWS(dual_set(SchemeKind::zprime(2), 3));
  CHECK_NOTHROW(dual_set(SchemeKind::zbar(1), 2));
  auto custom = SchemeKind::custom_kind(DualSet::make(2, {mi({0, 0})}), "pt2v");
  CHECK_THROWS(dual_set(custom, 3));  // custom dual carries its own arity
  CHECK(dual_set(custom, 2).size() == 1);
}

TEST_CASE("distinguished axes") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(distinguished_axis(SchemeKind::jet2(), n) == n - 1);
    CHECK(distinguished_axis(SchemeKind::tangent23(), n) == n - 1);
    CHECK(distinguished_axis(SchemeKind::fat_point(3), n) == -1);
  }
  CHECK(distinguished_axis(SchemeKind::zbar(2), 2) == 0);
  CHECK(distinguished_axis(SchemeKind::zprime(1), 2) == 0);
}

TEST_CASE("slices conserve length, stay order ideals, and match a reimplementation") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& kind : kinds_for(n)) {
      auto d = dual_set(kind, n);
      for (int axis = 0; axis < n; ++axis) {
        for (int layer = 0; layer <= d.max_order() + 1; ++layer) {
          auto sp = differential_slice(d, axis, layer);
          CHECK(sp.trace.size() + sp.residual.size() == d.size());
          CHECK(sp.trace.n == n - 1);
          CHECK(sp.residual.n == n);
          CHECK(is_order_ideal(n - 1, sp.trace.idx));
          CHECK(is_order_ideal(n, sp.residual.idx));
          auto ref = naive_slice(d, axis, layer);
          CHECK(sp.trace == ref.trace);
          CHECK(sp.residual == ref.residual);
        }
      }
    }
  }
}

TEST_CASE("vertically graded slices of the tangential-osculating scheme") {
  for (int n = 3; n <= 8; ++n) {
    auto d = dual_set(SchemeKind::tangent23(), n);
    auto t23_below = dual_set(SchemeKind::tangent23(), n - 1);
    auto fat2_below = dual_set(SchemeKind::fat_point(2), n - 1);
    auto fat2_here = dual_set(SchemeKind::fat_point(2), n);

    // Slicing along a transversal axis, bottom layer: same scheme one
    // dimension down on the wall, a 2-jet left over.
    auto a = differential_slice(d, n - 2, 0);
    CHECK(a.trace == t23_below);
    CHECK(a.residual == dual_set(SchemeKind::jet2(), n));

    // Transversal axis, layer 1: 2-jet on the wall; the residual is the
    // lower-dimensional scheme embedded with its line turned transversal.
    auto b = differential_slice(d, n - 2, 1);
    CHECK(b.trace == dual_set(SchemeKind::jet2(), n - 1));
    CHECK(b.residual == swap_axes(embed_in_hyperplane(t23_below), n - 2, n - 1));

    // Slicing along the distinguished line, layers 0 and 1: double point on
    // the wall, double point left over.
    for (int layer : {0, 1}) {
      auto c = differential_slice(d, n - 1, layer);
      CHECK(c.trace == fat2_below);
      CHECK(c.residual == fat2_here);
    }

    // Top layer along the line: simple point on the wall, everything but the
    // top-order functional left over.
    auto e = differential_slice(d, n - 1, 2);
    CHECK(e.trace == dual_set(SchemeKind::fat_point(1), n - 1));
    std::vector<int> twice(n, 0);
    twice[n - 1] = 2;
    CHECK(e.residual == without(d, mi(twice)));
    CHECK(e.residual.size() == std::size_t(2 * n));
  }
}

TEST_CASE("planar tail schemes slice along their line as expected") {
  // ZBar(k) = {|a| <= k} u {(k+1,0),(k,1)}; its layer-0 slice along the
  // transversal axis drops one order and keeps the tail shape.
  for (int k = 1; k <= 3; ++k) {
    auto d = dual_set(SchemeKind::zbar(k), 2);
    auto sp = differential_slice(d, 1, 0);
    // trace: exponents (a,0) -> a in {0..k+1}: a length-(k+2) jet on the line.
    CHECK(sp.trace.size() == std::size_t(k + 2));
    CHECK(sp.residual.size() == d.size() - (k + 2));
    if (k >= 2) {
      auto spp = differential_slice(dual_set(SchemeKind::zprime(k), 2), 1, 0);
      CHECK(spp.trace.size() == std::size_t(k + 2));
    }
  }
}

TEST_CASE("hyperplane embedding appends a transversal axis") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& kind : kinds_for(n)) {
      auto d = dual_set(kind, n);
      auto e = embed_in_hyperplane(d);
      CHECK(e.n == n + 1);
      CHECK(e.size() == d.size());
      CHECK(is_order_ideal(n + 1, e.idx));
      for (const auto& m : e.idx) CHECK(m.e[n] == 0);
    }
  }
}

TEST_CASE("remainder kinds realize the remainder degree") {
  auto r7 = remainder_kinds(4, 7);
  REQUIRE(r7.size() == 2);
  CHECK(r7[0].tag == KindTag::FatPoint);
  CHECK(r7[0].param == 2);
  CHECK(r7[1].tag == KindTag::Jet2);
  CHECK(remainder_kinds(3, 0).empty());
  for (int n = 2; n <= 6; ++n) {
    for (int r = 0; r <= 2 * n + 1; ++r) {
      std::size_t total = 0;
      for (const auto& k : remainder_kinds(n, r)) total += scheme_length(k, n);
      CHECK(total == std::size_t(r));
    }
  }
}

TEST_CASE("generic placement is deterministic and prefix-stable") {
  const linalg::PrimeModulus P = linalg::PrimeModulus::default_prime();
  const u64 seed = 20260815;
  auto five = place_generic({{SchemeKind::tangent23(), 5}}, 4, {}, seed, P);
  auto five_again = place_generic({{SchemeKind::tangent23(), 5}}, 4, {}, seed, P);
  auto three = place_generic({{SchemeKind::tangent23(), 3}}, 4, {}, seed, P);
  REQUIRE(five.schemes.size() == 5);
  REQUIRE(three.schemes.size() == 3);
  CHECK(five.total_length() == 5 * 9);
  for (int i = 0; i < 5; ++i) {
    CHECK(five.schemes[i].frame.point == five_again.schemes[i].frame.point);
    CHECK(five.schemes[i].frame.dirs == five_again.schemes[i].frame.dirs);
  }
  for (int i = 0; i < 3; ++i) {
    CHECK(five.schemes[i].frame.point == three.schemes[i].frame.point);
    CHECK(five.schemes[i].frame.dirs == three.schemes[i].frame.dirs);
  }
  // Frames are fresh per index.
  CHECK(five.schemes[0].frame.point != five.schemes[1].frame.point);
}

TEST_CASE("placement frames are genuinely projective frames") {
  const linalg::PrimeModulus P = linalg::PrimeModulus::default_prime();
  auto cfg = place_generic({{SchemeKind::tangent23(), 2}, {SchemeKind::fat_point(3), 2}}, 3, {},
                           99, P);
  for (const auto& ps : cfg.schemes) {
    const int n = cfg.n;
    linalg::DenseMatrix m(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) m.at(0, i) = ps.frame.point[i];
    for (int k = 0; k < n; ++k)
      for (int i = 0; i <= n; ++i) m.at(k + 1, i) = ps.frame.dirs[k][i];
    CHECK(linalg::rank(m, P).full());
    // Chart directions have zero pivot coordinate.
    for (int k = 0; k < n; ++k) CHECK(ps.frame.dirs[k][ps.frame.pivot] == 0);
  }
}

TEST_CASE("placement constraints hold exactly in coordinates") {
  const linalg::PrimeModulus P = linalg::PrimeModulus::default_prime();
  const linalg::Fp F(P);
  const int n = 4;

  PlacementConstraint on_h;
  on_h.support_on_h = true;
  auto cfg = place_generic({{SchemeKind::tangent23(), 3}}, n, on_h, 7, P);
  for (const auto& ps : cfg.schemes) CHECK(ps.frame.point[n] == 0);

  PlacementConstraint dir_h;
  dir_h.support_on_h = true;
  dir_h.direction_in_h = true;
  auto cfg2 = place_generic({{SchemeKind::tangent23(), 3}}, n, dir_h, 8, P);
  for (const auto& ps : cfg2.schemes) {
    CHECK(ps.frame.point[n] == 0);
    CHECK(ps.frame.dirs[n - 1][n] == 0);  // the line lies inside H
    CHECK(ps.flags.dirs_in_h[n - 1]);
  }

  // A custom hyperplane form is honored exactly.
  std::vector<u64> h = {1, 2, 3, 4, 5};
  PlacementConstraint custom;
  custom.support_on_h = true;
  custom.direction_in_h = true;
  custom.hyperplane = h;
  auto cfg3 = place_generic({{SchemeKind::jet2(), 4}}, n, custom, 9, P);
  REQUIRE(cfg3.hyperplane.has_value());
  for (const auto& ps : cfg3.schemes) {
    u64 dot = 0;
    for (int i = 0; i <= n; ++i) dot = F.add(dot, F.mul(h[i], ps.frame.point[i]));
    CHECK(dot == 0);
    u64 dot2 = 0;
    for (int i = 0; i <= n; ++i) dot2 = F.add(dot2, F.mul(h[i], ps.frame.dirs[n - 1][i]));
    CHECK(dot2 == 0);
    // Unconstrained directions leave the hyperplane.
    u64 dot3 = 0;
    for (int i = 0; i <= n; ++i) dot3 = F.add(dot3, F.mul(h[i], ps.frame.dirs[0][i]));
    CHECK(dot3 != 0);
  }

  // Redraws keep every constraint.
  auto cfg4 = replace_frames(cfg3, 1234, P);
  for (const auto& ps : cfg4.schemes) {
    u64 dot = 0;
    for (int i = 0; i <= n; ++i) dot = F.add(dot, F.mul(h[i], ps.frame.point[i]));
    CHECK(dot == 0);
  }
  CHECK(cfg4.schemes[0].frame.point != cfg3.schemes[0].frame.point);
}

TEST_CASE("invalid placements are rejected") {
  const linalg::PrimeModulus P = linalg::PrimeModulus::default_prime();
  PlacementFlags bad;
  bad.dirs_in_h = {true};
  CHECK_THROWS(place_one(SchemeKind::jet2(), 2, bad, 1, P));  // direction in H needs support on H
  PlacementConstraint dir_only;
  dir_only.support_on_h = true;
  dir_only.direction_in_h = true;
  CHECK_THROWS(place_generic({{SchemeKind::fat_point(2), 1}}, 3, dir_only, 1, P));
  CHECK_THROWS(place_generic({{SchemeKind::zbar(1), 1}}, 3, {}, 1, P));
  CHECK_THROWS(place_generic({{SchemeKind::fat_point(2), -1}}, 3, {}, 1, P));
  std::vector<u64> short_h = {1, 2};
  PlacementConstraint bad_h;
  bad_h.support_on_h = true;
  bad_h.hyperplane = short_h;
  CHECK_THROWS(place_generic({{SchemeKind::fat_point(2), 1}}, 3, bad_h, 1, P));
}
