#include "osculant/horace.hpp"

#include <stdexcept>

#include "osculant/combinat.hpp"

namespace osculant::horace {

namespace {

using combinat::i128;
using schemes::Configuration;
using schemes::DualSet;
using schemes::PlacedScheme;
using schemes::PlacementFlags;
using schemes::SchemeKind;

long long to_ll(i128 v, const char* what) {
  if (v > 0x7fffffffffffLL || v < -0x7fffffffffffLL)
    throw std::range_error(std::string("horace: ") + what + " out of machine range");
  return static_cast<long long>(v);
}

PlacementFlags free_flags(int n) {
  PlacementFlags fl;
  fl.support_on_h = false;
  fl.dirs_in_h.assign(n, false);
  return fl;
}

PlacementFlags on_h_flags(int n, int transversal_axis) {
  PlacementFlags fl;
  fl.support_on_h = true;
  fl.dirs_in_h.assign(n, true);
  fl.dirs_in_h[transversal_axis] = false;
  return fl;
}

// A scheme of the hyperplane viewed in the ambient space; the appended axis
// (index n-1) is the transversal one.
SchemeKind of_h_kind(const SchemeKind& inner, int n, const std::string& label) {
  return SchemeKind::custom_kind(
      schemes::embed_in_hyperplane(schemes::dual_set(inner, n - 1)), label);
}

int transversal_axis_of(const PlacementFlags& fl) {
  int axis = -1;
  for (std::size_t k = 0; k < fl.dirs_in_h.size(); ++k) {
    if (!fl.dirs_in_h[k]) {
      if (axis >= 0)
        throw std::domain_error("horace: on-H scheme needs exactly one transversal direction");
      axis = static_cast<int>(k);
    }
  }
  if (axis < 0)
    throw std::domain_error("horace: on-H scheme needs exactly one transversal direction");
  return axis;
}

struct StepAssembler {
  HoraceStep step;
  const linalg::PrimeModulus& prime;
  std::size_t counter = 0;

  StepAssembler(int n, int d, u64 seed, const linalg::PrimeModulus& p,
                const std::string& provenance)
      : prime(p) {
    step.n = n;
    step.d = d;
    step.w.n = n;
    step.seed = seed;
    step.provenance = provenance;
  }

  u64 next_seed() { return linalg::derive_seed(step.seed, counter++); }

  void add_w_free(const SchemeKind& k, long long copies) {
    for (long long i = 0; i < copies; ++i)
      step.w.schemes.push_back(schemes::place_one(k, step.n, free_flags(step.n), next_seed(), prime));
  }

  void add_w_on_h(const SchemeKind& k, int transversal_axis, long long copies) {
    for (long long i = 0; i < copies; ++i)
      step.w.schemes.push_back(
          schemes::place_one(k, step.n, on_h_flags(step.n, transversal_axis), next_seed(), prime));
  }

  void add_z(const SchemeKind& k, int axis, int layer, long long copies) {
    for (long long i = 0; i < copies; ++i) {
      ZEntry e;
      e.placed = schemes::place_one(k, step.n, on_h_flags(step.n, axis), next_seed(), prime);
      e.axis = axis;
      e.layer = layer;
      step.z.push_back(std::move(e));
    }
  }
};

// Every step of the proof has exactly settled trace, residual and conclusion;
// anything else means the assembly (not the math) is wrong.
void assert_settled(const HoraceStep& step) {
  const std::uint64_t want_trace = combinat::dim_forms(step.n - 1, step.d);
  const std::uint64_t want_res = combinat::dim_forms(step.n, step.d - 1);
  const std::uint64_t want_conc = combinat::dim_forms(step.n, step.d);
  const std::uint64_t got_trace = trace_configuration(step).total_length();
  const std::uint64_t got_res = residual_configuration(step).total_length();
  const std::uint64_t got_conc = conclusion_configuration(step).total_length();
  auto complain = [&](const char* which, std::uint64_t got, std::uint64_t want) {
    throw std::runtime_error(step.provenance + ": " + which + " length " + std::to_string(got) +
                             " is not settled (needs " + std::to_string(want) + ")");
  };
  if (got_trace != want_trace) complain("trace", got_trace, want_trace);
  if (got_res != want_res) complain("residual", got_res, want_res);
  if (got_conc != want_conc) complain("conclusion", got_conc, want_conc);
}

HoraceStep build_lemma23_44(u64 seed, const linalg::PrimeModulus& prime) {
  StepAssembler a(4, 4, seed, prime, "lemma23-44");
  a.add_w_free(SchemeKind::tangent23(), 2);
  for (const auto& k : schemes::remainder_kinds(4, 7)) a.add_w_free(k, 1);
  a.add_z(SchemeKind::tangent23(), 2, 0, 5);
  assert_settled(a.step);
  return std::move(a.step);
}

HoraceStep build_lemma23_54(u64 seed, const linalg::PrimeModulus& prime) {
  StepAssembler a(5, 4, seed, prime, "lemma23-54");
  a.add_w_free(SchemeKind::tangent23(), 3);
  a.add_z(SchemeKind::tangent23(), 3, 0, 7);
  a.add_z(SchemeKind::tangent23(), 3, 1, 1);
  // The degree-5 remainder, realized as a double point of H (length 5).
  a.add_z(of_h_kind(SchemeKind::fat_point(2), 5, "fat:2-of-h"), 4, 0, 1);
  assert_settled(a.step);
  return std::move(a.step);
}

HoraceStep build_lemma23_64(u64 seed, const linalg::PrimeModulus& prime) {
  StepAssembler a(6, 4, seed, prime, "lemma23-64");
  a.add_w_free(SchemeKind::tangent23(), 3);
  a.add_z(SchemeKind::tangent23(), 4, 0, 11);
  a.add_z(SchemeKind::tangent23(), 4, 1, 1);
  a.add_z(SchemeKind::tangent23(), 5, 2, 1);
  // The degree-2 remainder, realized as a 2-jet of H.
  a.add_z(of_h_kind(SchemeKind::jet2(), 6, "jet-of-h"), 5, 0, 1);
  assert_settled(a.step);
  return std::move(a.step);
}

HoraceStep build_thm22_main(int n, int d, u64 seed, const linalg::PrimeModulus& prime) {
  const auto sr = combinat::split_sr(n, d);
  const auto sr1 = combinat::split_sr(n - 1, d);
  const long long r = to_ll(sr.r, "r_{n,d}");
  const long long s1 = to_ll(sr1.s, "s_{n-1,d}");
  const auto shape = (n == 4) ? combinat::decompose_remainder_n4(sr1.r)
                              : combinat::decompose_remainder(sr1.r, n, n);
  const i128 t128 = combinat::t_quantity(n, d);
  if (t128 < 0)
    throw std::runtime_error(
        "thm22: infeasible counts, s_{n-1,d} + h + eps + delta > s_{n,d} (appendix A.1/A.2)");
  const long long t = to_ll(t128, "t_{n,d}");

  StepAssembler a(n, d, seed, prime, n == 4 ? "thm22-n4" : "thm22-general");
  a.add_w_free(SchemeKind::tangent23(), t);
  for (const auto& k : schemes::remainder_kinds(n, static_cast<int>(r))) a.add_w_free(k, 1);
  a.add_z(SchemeKind::tangent23(), n - 2, 0, s1);
  a.add_z(SchemeKind::tangent23(), n - 2, 1, shape.h);
  a.add_z(SchemeKind::tangent23(), n - 1, 2, shape.eps);
  a.add_z(SchemeKind::tangent23(), n - 1, 0, shape.delta);
  assert_settled(a.step);
  return std::move(a.step);
}

}  // namespace

HoraceStep build_step_thm22(int n, int d, u64 seed, const linalg::PrimeModulus& prime) {
  if (n < 4 || d < 4) throw std::domain_error("build_step_thm22: requires n >= 4 and d >= 4");
  if (d == 4 && n == 4) return build_lemma23_44(seed, prime);
  if (d == 4 && n == 5) return build_lemma23_54(seed, prime);
  if (d == 4 && n == 6) return build_lemma23_64(seed, prime);
  return build_thm22_main(n, d, seed, prime);
}

HoraceStep build_step7_inner(int d, u64 seed, const linalg::PrimeModulus& prime) {
  const auto facts = combinat::r3d_step7_facts(d);
  if (facts.r3d != 6)
    throw std::domain_error("build_step7_inner: requires r_{3,d} = 6; d = " + std::to_string(d) +
                            " has r_{3,d} = " + std::to_string(facts.r3d));
  if (d < 10) throw std::domain_error("build_step7_inner: requires d >= 10");
  const long long s3d = to_ll(combinat::split_sr(3, d).s, "s_{3,d}");
  const long long s3d1 = to_ll(combinat::split_sr(3, d - 1).s, "s_{3,d-1}");
  const long long s4d = to_ll(combinat::split_sr(4, d).s, "s_{4,d}");
  const long long r4d = to_ll(combinat::split_sr(4, d).r, "r_{4,d}");
  const long long w_t23 = s4d - s3d - s3d1 - 2;
  if (w_t23 < 0)
    throw std::runtime_error(
        "step7: infeasible counts, s_{4,d} - s_{3,d} - s_{3,d-1} - 2 < 0 (appendix A.4i)");

  StepAssembler a(4, d - 1, seed, prime, "step7-inner");
  a.add_w_free(SchemeKind::fat_point(1), 2 * s3d);
  a.add_w_free(SchemeKind::tangent23(), w_t23);
  a.add_w_on_h(of_h_kind(SchemeKind::tangent23(), 4, "t23-of-h"), 3, 3);
  for (const auto& k : schemes::remainder_kinds(4, static_cast<int>(r4d))) a.add_w_free(k, 1);
  a.add_z(SchemeKind::tangent23(), 2, 0, s3d1 - 3);
  a.add_z(SchemeKind::tangent23(), 2, 1, 1);
  a.add_z(SchemeKind::tangent23(), 3, 2, 1);
  assert_settled(a.step);
  return std::move(a.step);
}

Configuration trace_configuration(const HoraceStep& step) {
  Configuration tc;
  tc.n = step.n - 1;
  const PlacementFlags fl = free_flags(tc.n);
  auto push = [&](const DualSet& dual, const std::string& label) {
    if (dual.idx.empty()) return;
    PlacedScheme ps;
    ps.kind = SchemeKind::custom_kind(dual, label);
    ps.flags = fl;
    tc.schemes.push_back(std::move(ps));
  };
  for (const auto& ps : step.w.schemes) {
    if (!ps.flags.support_on_h) continue;
    const int axis = transversal_axis_of(ps.flags);
    auto sp = schemes::differential_slice(schemes::dual_set(ps.kind, step.n), axis, 0);
    push(sp.trace, ps.kind.name() + "-trace");
  }
  for (const auto& e : step.z) {
    auto sp = schemes::differential_slice(schemes::dual_set(e.placed.kind, step.n), e.axis, e.layer);
    push(sp.trace, e.placed.kind.name() + "-trace");
  }
  return tc;
}

Configuration residual_configuration(const HoraceStep& step) {
  Configuration rc;
  rc.n = step.n;
  auto push = [&](const DualSet& dual, const std::string& label, const PlacementFlags& fl) {
    if (dual.idx.empty()) return;
    PlacedScheme ps;
    ps.kind = SchemeKind::custom_kind(dual, label);
    ps.flags = fl;
    rc.schemes.push_back(std::move(ps));
  };
  for (const auto& ps : step.w.schemes) {
    if (!ps.flags.support_on_h) {
      PlacedScheme copy;
      copy.kind = ps.kind;
      copy.flags = free_flags(step.n);
      rc.schemes.push_back(std::move(copy));
      continue;
    }
    const int axis = transversal_axis_of(ps.flags);
    auto sp = schemes::differential_slice(schemes::dual_set(ps.kind, step.n), axis, 0);
    push(sp.residual, ps.kind.name() + "-res", ps.flags);
  }
  for (const auto& e : step.z) {
    auto sp = schemes::differential_slice(schemes::dual_set(e.placed.kind, step.n), e.axis, e.layer);
    push(sp.residual, e.placed.kind.name() + "-res", e.placed.flags);
  }
  return rc;
}

Configuration conclusion_configuration(const HoraceStep& step) {
  Configuration cc;
  cc.n = step.n;
  for (const auto& ps : step.w.schemes) cc.schemes.push_back(ps);
  for (const auto& e : step.z) {
    PlacedScheme fresh;
    fresh.kind = e.placed.kind;
    fresh.flags = free_flags(step.n);
    cc.schemes.push_back(std::move(fresh));
  }
  return cc;
}

StepReport verify_step(const HoraceStep& step, const hilbert::HilbertOptions& opt) {
  StepReport rep;
  rep.n = step.n;
  rep.d = step.d;
  rep.provenance = step.provenance;

  hilbert::HilbertOptions o = opt;
  o.seed = linalg::derive_seed(opt.seed, 11);
  rep.trace = hilbert::hilbert_report(trace_configuration(step), step.d, o);
  o.seed = linalg::derive_seed(opt.seed, 12);
  rep.residual = hilbert::hilbert_report(residual_configuration(step), step.d - 1, o);
  o.seed = linalg::derive_seed(opt.seed, 13);
  rep.conclusion = hilbert::hilbert_report(conclusion_configuration(step), step.d, o);

  rep.trace_h0 = rep.trace.h0;
  rep.residual_h0 = rep.residual.h0;
  rep.conclusion_h0 = rep.conclusion.h0;
  rep.step_valid = rep.trace_h0 == 0 && rep.residual_h0 == 0;
  rep.implication_observed = !rep.step_valid || rep.conclusion_h0 == 0;
  return rep;
}

namespace {

std::string node_key(int n, int d) {
  return "n=" + std::to_string(n) + ",d=" + std::to_string(d);
}

}  // namespace

BaseD3Facts base_d3_facts(int n, const hilbert::HilbertOptions& opt) {
  BaseD3Facts f;
  f.n = n;
  const long long s = to_ll(combinat::split_sr(n, 3).s, "s_{n,3}");
  f.s = static_cast<std::uint64_t>(s);
  const int top = (n == 4) ? s + 2 : s + 1;
  auto cfg = schemes::place_generic({{SchemeKind::tangent23(), top}}, n, {}, opt.seed,
                                    linalg::PrimeModulus(opt.prime));
  std::vector<std::size_t> cuts;
  for (int c = s; c <= top; ++c) cuts.push_back(static_cast<std::size_t>(c));
  auto ranks = hilbert::nested_ranks(cfg, cuts, 3, opt);
  const std::uint64_t C = combinat::dim_forms(n, 3);
  const std::uint64_t one = 2 * static_cast<std::uint64_t>(n) + 1;
  f.h1_at_s = one * s - ranks[0];
  if (n == 4) {
    f.h0_anomaly = C - ranks[1];
    f.h1_anomaly = one * (s + 1) - ranks[1];
    f.h0_above = C - ranks[2];
    f.ok = f.h1_at_s == 0 && f.h0_anomaly == 1 && f.h1_anomaly == 2 && f.h0_above == 0;
  } else {
    f.h0_above = C - ranks[1];
    f.ok = f.h1_at_s == 0 && f.h0_above == 0;
  }
  return f;
}

InductionTrace replay_induction(int n_max, int d_max, const hilbert::HilbertOptions& opt) {
  if (n_max < 4 || n_max > 9 || d_max < 4)
    throw std::domain_error("replay_induction: requires 4 <= n_max <= 9 and d_max >= 4");
  const linalg::PrimeModulus P(opt.prime);
  InductionTrace tr;
  tr.n_max = n_max;
  tr.d_max = d_max;

  auto cell_opt = [&](u64 salt_a, u64 salt_b) {
    hilbert::HilbertOptions o = opt;
    o.seed = linalg::derive_seed(opt.seed, linalg::derive_seed(salt_a, salt_b));
    return o;
  };

  // Third-degree leaves for each column n.
  for (int n = 4; n <= n_max; ++n) {
    NodeRecord node;
    node.key = node_key(n, 3);
    node.n = n;
    node.d = 3;
    node.kind = "leaf-reg-n3";
    auto f = base_d3_facts(n, cell_opt(3, n));
    node.evaluated = true;
    node.leaf_s = f.s;
    node.leaf_h1_at_s = f.h1_at_s;
    node.leaf_h0_above = f.h0_above;
    node.known_anomaly = (n == 4);
    node.reg = f.ok;
    tr.leaves_ok = tr.leaves_ok && f.ok;
    tr.nodes.push_back(std::move(node));
  }

  // The n=3 column: settled counts are regular in every degree.
  for (int d = 4; d <= d_max; ++d) {
    NodeRecord node;
    node.key = node_key(3, d);
    node.n = 3;
    node.d = d;
    node.kind = "leaf-reg-d3";
    const long long s = to_ll(combinat::split_sr(3, d).s, "s_{3,d}");
    auto o = cell_opt(4, d);
    auto cfg = schemes::place_generic({{SchemeKind::tangent23(), static_cast<int>(s) + 1}}, 3, {},
                                      o.seed, P);
    auto ranks = hilbert::nested_ranks(
        cfg, {static_cast<std::size_t>(s), static_cast<std::size_t>(s + 1)}, d, o);
    const std::uint64_t C = combinat::dim_forms(3, d);
    node.evaluated = true;
    node.leaf_s = static_cast<std::uint64_t>(s);
    node.leaf_h1_at_s = 7 * static_cast<std::uint64_t>(s) - ranks[0];
    node.leaf_h0_above = C - ranks[1];
    node.reg = node.leaf_h1_at_s == 0 && node.leaf_h0_above == 0;
    tr.leaves_ok = tr.leaves_ok && node.reg;
    tr.nodes.push_back(std::move(node));
  }

  // Quadric facts: h0 vanishes as soon as s > n/2.
  for (int n = 4; n <= n_max; ++n) {
    NodeRecord node;
    node.key = node_key(n, 2);
    node.n = n;
    node.d = 2;
    node.kind = "leaf-quadric";
    const int s = n / 2 + 1;
    auto o = cell_opt(2, n);
    auto cfg = schemes::place_generic({{SchemeKind::tangent23(), s}}, n, {}, o.seed, P);
    auto rep = hilbert::hilbert_report(cfg, 2, o);
    node.evaluated = true;
    node.leaf_s = static_cast<std::uint64_t>(s);
    node.leaf_h0_above = rep.h0;
    node.reg = rep.h0 == 0;
    tr.leaves_ok = tr.leaves_ok && node.reg;
    tr.nodes.push_back(std::move(node));
  }

  // Step nodes in dependency order.
  for (int d = 4; d <= d_max; ++d) {
    for (int n = 4; n <= n_max; ++n) {
      NodeRecord node;
      node.key = node_key(n, d);
      node.n = n;
      node.d = d;
      node.kind = "step";
      try {
        auto o = cell_opt(n, d);
        HoraceStep step = build_step_thm22(n, d, linalg::derive_seed(o.seed, 17), P);
        node.provenance = step.provenance;
        StepReport rep = verify_step(step, o);
        node.evaluated = true;
        node.trace_h0 = rep.trace_h0;
        node.residual_h0 = rep.residual_h0;
        node.conclusion_h0 = rep.conclusion_h0;
        node.dime = rep.trace_h0 == 0;
        node.degue = rep.residual_h0 == 0;
        node.prop = rep.step_valid && rep.conclusion_h0 == 0;
        node.reg = node.prop;  // settled counts: vanishing h0 gives regularity
        if (!node.prop) tr.all_prop = false;
      } catch (const std::exception& e) {
        node.evaluated = false;
        node.error = e.what();
        tr.all_prop = false;
      }
      tr.edges.emplace_back(node.key, node_key(n - 1, d));
      tr.edges.emplace_back(node.key, node_key(n, d - 1));
      tr.nodes.push_back(std::move(node));
    }
  }
  return tr;
}

}  // namespace osculant::horace
