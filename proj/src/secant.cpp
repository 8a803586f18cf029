#include "osculant/secant.hpp"

#include <stdexcept>

#include "osculant/combinat.hpp"

namespace osculant::secant {

namespace {

using schemes::SchemeKind;

std::uint64_t len_one(int k, int n) {
  // n + C(k+n,n) - 1 + 1 = length of one member of the family (Jet2-like
  // count for k=1 is 2n+1; k=0 gives n+1, a double point).
  return static_cast<std::uint64_t>(n) + combinat::dim_forms(n, k) - 1 + 1;
}

SecantReport assemble_report(SecantProblem p, const std::string& basis,
                             const hilbert::HilbertReport& h) {
  SecantReport r;
  r.problem = p;
  r.basis = basis;
  r.hilbert = h;
  r.N = combinat::dim_forms(p.n, p.d) - 1;
  r.expdim = expected_secant_dim(p);
  const std::uint64_t slack =
      h.dim_forms > h.total_length ? h.dim_forms - h.total_length : 0;
  // Lemma 1.2(b): dim = expdim - h0 + max(0, C - len).
  r.dim = r.expdim - h.h0 + slack;
  r.defect = r.expdim - r.dim;  // = h0 - slack
  r.defective = r.defect > 0;
  r.evidence_quality =
      (h.rank == std::min<std::uint64_t>(h.total_length, h.dim_forms))
          ? "certified-regular"
          : "randomized";
  return r;
}

}  // namespace

std::uint64_t expected_secant_dim(const SecantProblem& p) {
  if (p.k < 0 || p.n < 1 || p.d < 0 || p.s < 1)
    throw std::domain_error("expected_secant_dim: parameters out of range");
  const std::uint64_t N = combinat::dim_forms(p.n, p.d) - 1;
  const std::uint64_t parametric =
      static_cast<std::uint64_t>(p.s) * (len_one(p.k, p.n) - 1) + p.s - 1;
  return std::min(N, parametric);
}

SecantReport veronese_secant_dim(int n, int d, int s, const hilbert::HilbertOptions& opt) {
  if (n < 1 || d < 1 || s < 1)
    throw std::domain_error("veronese_secant_dim: parameters out of range");
  auto cfg = schemes::place_generic({{SchemeKind::fat_point(2), s}}, n, {}, opt.seed,
                                    linalg::PrimeModulus(opt.prime));
  auto h = hilbert::hilbert_report(cfg, d, opt);
  return assemble_report({0, n, d, s}, "fatpoint", h);
}

SecantReport tangential_secant_dim(int n, int d, int s, const hilbert::HilbertOptions& opt) {
  if (n < 2 || s < 1) throw std::domain_error("tangential_secant_dim: parameters out of range");
  if (d < 2)
    throw std::domain_error("tangential_secant_dim: degree must be >= 2 (the scheme has order-2 functionals)");
  auto cfg = schemes::place_generic({{SchemeKind::tangent23(), s}}, n, {}, opt.seed,
                                    linalg::PrimeModulus(opt.prime));
  auto h = hilbert::hilbert_report(cfg, d, opt);
  return assemble_report({1, n, d, s}, "tangent23", h);
}

SecantReport osculating_secant_dim_p2(int k, int d, int s, const hilbert::HilbertOptions& opt) {
  if (k < 0 || s < 1)
    throw std::domain_error("osculating_secant_dim_p2: parameters out of range");
  if (d < k + 2)
    throw std::domain_error("osculating_secant_dim_p2: requires d >= k+2");
  if (k == 0) return veronese_secant_dim(2, d, s, opt);
  auto cfg = schemes::place_generic({{SchemeKind::zbar(k), s}}, 2, {}, opt.seed,
                                    linalg::PrimeModulus(opt.prime));
  auto h = hilbert::hilbert_report(cfg, d, opt);
  return assemble_report({k, 2, d, s}, "zbar-specialized", h);
}

bool ah_exception(int n, int d, int s) {
  if (d == 2) return s >= 2 && s <= n;
  if (n == 2 && d == 4 && s == 5) return true;
  if (n == 3 && d == 4 && s == 9) return true;
  if (n == 4 && d == 3 && s == 7) return true;
  if (n == 4 && d == 4 && s == 14) return true;
  return false;
}

bool conj1_exception(int n, int d, int s) {
  if (d == 3) return s == n && n >= 2 && n <= 4;
  if (d == 2) return s >= 2 && 2 * s <= n;
  return false;
}

AHCheck check_ah(int n, int d, int s, const hilbert::HilbertOptions& opt) {
  if (d < 2) throw std::domain_error("check_ah: degree must be >= 2");
  AHCheck c;
  c.report = veronese_secant_dim(n, d, s, opt);
  c.in_exception_list = ah_exception(n, d, s);
  c.matches_ah = c.report.defective == c.in_exception_list;
  return c;
}

namespace {

// Shared-placement scan over s = 1..s_max for `kind`; returns one report per s.
std::vector<SecantReport> family_scan(int k, const SchemeKind& kind, const std::string& basis,
                                      int n, int d, int s_max,
                                      const hilbert::HilbertOptions& opt) {
  auto cfg = schemes::place_generic({{kind, s_max}}, n, {}, opt.seed,
                                    linalg::PrimeModulus(opt.prime));
  std::vector<std::size_t> cuts;
  for (int s = 1; s <= s_max; ++s) cuts.push_back(static_cast<std::size_t>(s));
  auto ranks = hilbert::nested_ranks(cfg, cuts, d, opt);
  const std::uint64_t one = schemes::scheme_length(kind, n);
  std::vector<SecantReport> out;
  for (int s = 1; s <= s_max; ++s) {
    auto h = hilbert::report_from_rank(n, d, one * s, ranks[s - 1], opt, opt.cross_check);
    out.push_back(assemble_report({k, n, d, s}, basis, h));
  }
  return out;
}

}  // namespace

Conj1Scan conj1_scan(int n_max, int d_max, const hilbert::HilbertOptions& opt) {
  if (n_max < 2 || d_max < 2) throw std::domain_error("conj1_scan: need n_max, d_max >= 2");
  Conj1Scan scan;
  for (int n = 2; n <= n_max; ++n) {
    for (int d = 2; d <= d_max; ++d) {
      const std::uint64_t C = combinat::dim_forms(n, d);
      const std::uint64_t one = 2 * static_cast<std::uint64_t>(n) + 1;
      const int s_max = static_cast<int>((C + one - 1) / one) + 1;
      hilbert::HilbertOptions cell = opt;
      cell.seed = linalg::derive_seed(opt.seed, linalg::derive_seed(n, d));
      auto reports = family_scan(1, SchemeKind::tangent23(), "tangent23", n, d, s_max, cell);
      for (auto& rep : reports) {
        Conj1Cell c;
        c.expected_defective = conj1_exception(n, d, rep.problem.s);
        c.matches = rep.defective == c.expected_defective;
        c.report = std::move(rep);
        if (!c.matches) ++scan.mismatch_count;
        scan.cells.push_back(std::move(c));
      }
    }
  }
  scan.all_match = scan.mismatch_count == 0;
  return scan;
}

Conj2aVerdict conj2a_classify(int k, int d, int s, const hilbert::HilbertOptions& opt) {
  if (k < 1) throw std::domain_error("conj2a_classify: requires k >= 1");
  if (d < k + 2) throw std::domain_error("conj2a_classify: requires d >= k+2");
  if (s < 1) throw std::domain_error("conj2a_classify: requires s >= 1");
  const linalg::PrimeModulus P(opt.prime);
  auto one_family = [&](const SchemeKind& kind, linalg::u64 salt) {
    hilbert::HilbertOptions o = opt;
    o.seed = linalg::derive_seed(opt.seed, salt);
    auto cfg = schemes::place_generic({{kind, s}}, 2, {}, o.seed, P);
    return hilbert::hilbert_report(cfg, d, o);
  };
  auto hx = one_family(SchemeKind::fat_point(k + 1), 1);
  auto ht = one_family(SchemeKind::fat_point(k + 2), 2);
  auto hy = one_family(SchemeKind::zbar(k), 3);

  Conj2aVerdict v;
  v.problem = {k, 2, d, s};
  v.h0_x = hx.h0;
  v.h1_x = hx.h1;
  v.h0_t = ht.h0;
  v.h0_ybar = hy.h0;
  v.h1_ybar = hy.h1;
  v.deg_y = hy.total_length;  // s (C(k+2,2) + 2)
  const std::uint64_t C = hy.dim_forms;
  v.condition_i = hx.h1 > (v.deg_y > C ? v.deg_y - C : 0);
  v.condition_ii = ht.h0 > (C > v.deg_y ? C - v.deg_y : 0);
  v.ybar_defective = hy.defective_evidence;
  if (hy.h0 == ht.h0) {
    v.branch = "lemma34-case-i";
  } else if (hx.h0 >= 2 * static_cast<std::uint64_t>(s) &&
             hy.h0 == hx.h0 - 2 * static_cast<std::uint64_t>(s)) {
    v.branch = "lemma34-case-ii";
  } else if (hy.regular) {
    v.branch = "regular";
  } else {
    v.branch = "inconsistent";
  }
  return v;
}

Conj2aScan conj2a_scan(int k_max, int d_max, int s_max, const hilbert::HilbertOptions& opt) {
  if (k_max < 1) throw std::domain_error("conj2a_scan: requires k_max >= 1");
  Conj2aScan scan;
  for (int k = 1; k <= k_max; ++k) {
    for (int d = k + 2; d <= d_max; ++d) {
      for (int s = 1; s <= s_max; ++s) {
        hilbert::HilbertOptions cell = opt;
        cell.seed = linalg::derive_seed(
            opt.seed, linalg::derive_seed(k, linalg::derive_seed(d, s)));
        auto v = conj2a_classify(k, d, s, cell);
        if (v.branch == "inconsistent") scan.any_inconsistent = true;
        const bool conditions = v.condition_i || v.condition_ii;
        if (v.ybar_defective && !conditions) scan.soundness_ok = false;
        if (!v.ybar_defective && conditions) scan.soundness_ok = false;
        scan.cells.push_back(std::move(v));
      }
    }
  }
  return scan;
}

SpanDim osculating_span_dim(int k, int n, int d, int s, const hilbert::HilbertOptions& opt) {
  if (k < 0 || n < 1 || s < 1 || d < k)
    throw std::domain_error("osculating_span_dim: requires d >= k, s >= 1");
  auto cfg = schemes::place_generic({{SchemeKind::fat_point(k + 1), s}}, n, {}, opt.seed,
                                    linalg::PrimeModulus(opt.prime));
  auto h = hilbert::hilbert_report(cfg, d, opt);
  SpanDim sd;
  sd.hilbert = h;
  sd.computed = h.dim_forms - 1 - h.h0;
  const std::uint64_t parametric = static_cast<std::uint64_t>(s) * combinat::dim_forms(n, k) - 1;
  sd.expected = std::min(parametric, h.dim_forms - 1);
  sd.matches = sd.computed == sd.expected;
  return sd;
}

}  // namespace osculant::secant
