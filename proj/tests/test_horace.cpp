#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>

#include "osculant/combinat.hpp"
#include "osculant/horace.hpp"

using namespace osculant;
using namespace osculant::schemes;
using namespace osculant::horace;
using linalg::u64;

namespace {

const linalg::PrimeModulus kP = linalg::PrimeModulus::default_prime();

hilbert::HilbertOptions opts(u64 seed) {
  hilbert::HilbertOptions o;
  o.seed = seed;
  o.trials = 2;
  return o;
}

std::size_t count_kind(const Configuration& cfg, KindTag tag, int param = -1) {
  std::size_t c = 0;
  for (const auto& ps : cfg.schemes)
    if (ps.kind.tag == tag && (param < 0 || ps.kind.param == param)) ++c;
  return c;
}

void check_settled(const HoraceStep& step) {
  auto tc = trace_configuration(step);
  auto rc = residual_configuration(step);
  auto cc = conclusion_configuration(step);
  CHECK(tc.n == step.n - 1);
  CHECK(rc.n == step.n);
  CHECK(cc.n == step.n);
  CHECK(tc.total_length() == u64(combinat::dim_forms(step.n - 1, step.d)));
  CHECK(rc.total_length() == u64(combinat::dim_forms(step.n, step.d - 1)));
  CHECK(cc.total_length() == u64(combinat::dim_forms(step.n, step.d)));
}

}  // namespace

TEST_CASE("fourth-degree assemblies have the documented shapes") {
  auto a = build_step_thm22(4, 4, 1, kP);
  CHECK(a.provenance == "lemma23-44");
  CHECK(a.n == 4);
  CHECK(a.d == 4);
  CHECK(a.w.schemes.size() == 4);  // 2 whole schemes + degree-7 remainder (fat + jet)
  CHECK(count_kind(a.w, KindTag::Tangent23) == 2);
  CHECK(count_kind(a.w, KindTag::FatPoint, 2) == 1);
  CHECK(count_kind(a.w, KindTag::Jet2) == 1);
  CHECK(a.z.size() == 5);
  for (const auto& e : a.z) {
    CHECK(e.axis == 2);
    CHECK(e.layer == 0);
    CHECK(e.placed.flags.support_on_h);
  }
  check_settled(a);

  auto b = build_step_thm22(5, 4, 2, kP);
  CHECK(b.provenance == "lemma23-54");
  CHECK(b.w.schemes.size() == 3);
  CHECK(b.z.size() == 9);
  int layer1 = 0, custom = 0;
  for (const auto& e : b.z) {
    layer1 += e.layer == 1;
    custom += e.placed.kind.tag == KindTag::Custom;
  }
  CHECK(layer1 == 1);
  CHECK(custom == 1);  // the double point of the hyperplane
  check_settled(b);

  auto c = build_step_thm22(6, 4, 3, kP);
  CHECK(c.provenance == "lemma23-64");
  CHECK(c.w.schemes.size() == 3);
  CHECK(c.z.size() == 14);
  check_settled(c);
}

TEST_CASE("general assemblies at degree five") {
  auto g = build_step_thm22(5, 5, 4, kP);
  CHECK(g.provenance == "thm22-general");
  // t_{5,5} = 22 - 14 = 8 whole schemes plus the degree-10 remainder.
  CHECK(count_kind(g.w, KindTag::Tangent23) == 8);
  CHECK(count_kind(g.w, KindTag::FatPoint, 2) == 1);
  CHECK(count_kind(g.w, KindTag::Jet2) == 2);
  CHECK(g.z.size() == 14);  // s_{4,5} wall schemes, no layer corrections
  for (const auto& e : g.z) {
    CHECK(e.axis == 3);
    CHECK(e.layer == 0);
  }
  check_settled(g);

  auto h = build_step_thm22(4, 5, 5, kP);
  CHECK(h.provenance == "thm22-n4");
  CHECK(h.w.schemes.size() == 6);  // t_{4,5} = 14 - 8, empty remainder
  CHECK(count_kind(h.w, KindTag::Tangent23) == 6);
  CHECK(h.z.size() == 8);
  check_settled(h);
}

TEST_CASE("steps verify: trace, residual and conclusion all vanish") {
  struct Cell {
    int n, d;
  };
  int idx = 0;
  for (auto cell : {Cell{4, 4}, Cell{5, 4}, Cell{6, 4}, Cell{4, 5}, Cell{5, 5}}) {
    auto step = build_step_thm22(cell.n, cell.d, u64(100 + idx), kP);
    auto rep = verify_step(step, opts(u64(200 + idx)));
    CAPTURE(cell.n);
    CAPTURE(cell.d);
    CHECK(rep.trace_h0 == 0);
    CHECK(rep.residual_h0 == 0);
    CHECK(rep.conclusion_h0 == 0);
    CHECK(rep.step_valid);
    CHECK(rep.implication_observed);
    CHECK(rep.n == cell.n);
    CHECK(rep.d == cell.d);
    ++idx;
  }
}

TEST_CASE("derived configurations carry the right flags and frames") {
  auto step = build_step_thm22(5, 4, 9, kP);

  auto tc = trace_configuration(step);
  for (const auto& ps : tc.schemes) {
    CHECK_FALSE(ps.flags.support_on_h);  // the wall is its own ambient space
    CHECK(ps.kind.name().find("-trace") != std::string::npos);
  }

  auto rc = residual_configuration(step);
  bool kept_on_h = false;
  for (const auto& ps : rc.schemes) kept_on_h = kept_on_h || ps.flags.support_on_h;
  CHECK(kept_on_h);  // sliced schemes stay supported on the hyperplane

  auto cc = conclusion_configuration(step);
  CHECK(cc.schemes.size() == step.w.schemes.size() + step.z.size());
  // Whole schemes enter the conclusion with their frames verbatim...
  for (std::size_t i = 0; i < step.w.schemes.size(); ++i)
    CHECK(cc.schemes[i].frame.point == step.w.schemes[i].frame.point);
  // ...while the wall schemes are re-placed as fresh generic members.
  for (std::size_t i = step.w.schemes.size(); i < cc.schemes.size(); ++i) {
    CHECK_FALSE(cc.schemes[i].flags.support_on_h);
    CHECK(cc.schemes[i].frame.point != step.z[i - step.w.schemes.size()].placed.frame.point);
  }
}

TEST_CASE("out-of-domain or infeasible steps are rejected") {
  CHECK_THROWS(build_step_thm22(3, 4, 1, kP));
  CHECK_THROWS(build_step_thm22(4, 3, 1, kP));
  CHECK_THROWS(build_step7_inner(11, 1, kP));  // r_{3,11} = 0
  CHECK_THROWS(build_step7_inner(12, 1, kP));  // r_{3,12} = 0
  CHECK_THROWS(build_step7_inner(3, 1, kP));   // right residue, too low a degree
}

TEST_CASE("inner seventh-degree step at d = 10") {
  auto step = build_step7_inner(10, 7, kP);
  CHECK(step.provenance == "step7-inner");
  CHECK(step.n == 4);
  CHECK(step.d == 9);  // the step certifies the degree below
  CHECK(count_kind(step.w, KindTag::FatPoint, 1) == 80);   // 2 s_{3,10}
  CHECK(count_kind(step.w, KindTag::Tangent23) == 38);     // s_{4,10}-s_{3,10}-s_{3,9}-2
  CHECK(count_kind(step.w, KindTag::Jet2) == 1);           // degree-2 remainder
  std::size_t embedded = 0;
  for (const auto& ps : step.w.schemes)
    if (ps.kind.tag == KindTag::Custom) {
      ++embedded;
      CHECK(ps.flags.support_on_h);
    }
  CHECK(embedded == 3);
  CHECK(step.z.size() == 30);  // (s_{3,9} - 3) + 1 + 1
  check_settled(step);

  auto rep = verify_step(step, opts(77));
  CHECK(rep.step_valid);
  CHECK(rep.conclusion_h0 == 0);
  CHECK(rep.implication_observed);

  auto later = build_step7_inner(17, 8, kP);  // next admissible degree
  CHECK(later.d == 16);
  check_settled(later);
}

TEST_CASE("a tampered step fails validity but never fakes the implication") {
  auto step = build_step_thm22(4, 4, 31, kP);
  REQUIRE(!step.w.schemes.empty());
  step.w.schemes.pop_back();  // drop a whole scheme: counts no longer settle
  auto rep = verify_step(step, opts(32));
  CHECK_FALSE(rep.step_valid);       // the residual can no longer vanish
  CHECK(rep.residual_h0 > 0);
  CHECK(rep.conclusion_h0 > 0);
  CHECK(rep.implication_observed);   // vacuously: the hypotheses failed
}

TEST_CASE("third-degree base facts") {
  auto f4 = base_d3_facts(4, opts(41));
  CHECK(f4.n == 4);
  CHECK(f4.s == 3);
  CHECK(f4.h1_at_s == 0);
  CHECK(f4.h0_anomaly == 1);  // four schemes: one unexpected cubic
  CHECK(f4.h1_anomaly == 2);
  CHECK(f4.h0_above == 0);    // five schemes: nothing survives
  CHECK(f4.ok);

  auto f5 = base_d3_facts(5, opts(42));
  CHECK(f5.s == 5);
  CHECK(f5.h1_at_s == 0);
  CHECK(f5.h0_above == 0);
  CHECK(f5.h0_anomaly == 0);
  CHECK(f5.ok);
}

TEST_CASE("induction replay over the smallest grid") {
  auto tr = replay_induction(4, 4, opts(51));
  CHECK(tr.n_max == 4);
  CHECK(tr.d_max == 4);
  REQUIRE(tr.nodes.size() == 4);
  CHECK(tr.all_prop);
  CHECK(tr.leaves_ok);

  std::map<std::string, const NodeRecord*> by_key;
  for (const auto& n : tr.nodes) by_key[n.key] = &n;
  REQUIRE(by_key.count("n=4,d=4"));
  REQUIRE(by_key.count("n=4,d=3"));
  REQUIRE(by_key.count("n=3,d=4"));
  REQUIRE(by_key.count("n=4,d=2"));

  const auto* step = by_key["n=4,d=4"];
  CHECK(step->kind == "step");
  CHECK(step->provenance == "lemma23-44");
  CHECK(step->evaluated);
  CHECK(step->prop);
  CHECK(step->dime);
  CHECK(step->degue);
  CHECK(step->trace_h0 == 0);
  CHECK(step->error.empty());

  const auto* d3 = by_key["n=4,d=3"];
  CHECK(d3->kind == "leaf-reg-n3");
  CHECK(d3->known_anomaly);
  CHECK(d3->reg);

  const auto* n3 = by_key["n=3,d=4"];
  CHECK(n3->kind == "leaf-reg-d3");
  CHECK(n3->leaf_s == 5);  // s_{3,4} = 35/7
  CHECK(n3->leaf_h1_at_s == 0);
  CHECK(n3->leaf_h0_above == 0);

  const auto* quad = by_key["n=4,d=2"];
  CHECK(quad->kind == "leaf-quadric");
  CHECK(quad->leaf_s == 3);  // n/2 + 1
  CHECK(quad->reg);

  bool edge_wall = false, edge_below = false;
  for (const auto& [from, to] : tr.edges) {
    if (from == "n=4,d=4" && to == "n=3,d=4") edge_wall = true;
    if (from == "n=4,d=4" && to == "n=4,d=3") edge_below = true;
  }
  CHECK(edge_wall);
  CHECK(edge_below);
}

TEST_CASE("replay rejects out-of-range grids") {
  CHECK_THROWS(replay_induction(3, 4, opts(1)));
  CHECK_THROWS(replay_induction(10, 4, opts(1)));
  CHECK_THROWS(replay_induction(4, 3, opts(1)));
}
