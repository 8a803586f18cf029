#include "osculant/cli.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "osculant/cache.hpp"
#include "osculant/combinat.hpp"
#include "osculant/horace.hpp"
#include "osculant/json_out.hpp"
#include "osculant/secant.hpp"

namespace osculant::cli {

namespace {

using jsonio::json;
using schemes::SchemeKind;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ctx {
  linalg::u64 prime = linalg::kDefaultPrime;
  linalg::u64 seed = 0;
  unsigned trials = 3;
  std::string format = "json";
  std::string output;
  std::string cache_path = "osculant-cache.jsonl";
  bool no_cache = false;
  bool cross_check = false;

  hilbert::HilbertOptions opt() const {
    hilbert::HilbertOptions o;
    o.prime = prime;
    o.seed = seed;
    o.trials = trials;
    o.cross_check = cross_check;
    return o;
  }
};

struct Outcome {
  json reports;
  std::string csv;
  int exit_code = 0;
};

void write_out(const Ctx& ctx, const std::string& rendered) {
  if (ctx.output.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream out(ctx.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + ctx.output);
  out << rendered;
}

int finish(const Ctx& ctx, const std::string& cmd, const json& parameters,
           const std::function<Outcome()>& run) {
  cachef::ReportCache cache(ctx.cache_path, !ctx.no_cache);
  json key_params = parameters;
  key_params["format"] = ctx.format;
  key_params["cross_check"] = ctx.cross_check;
  const std::string key =
      cachef::ReportCache::make_key(cmd, key_params, ctx.prime, ctx.seed, ctx.trials);
  if (auto hit = cache.lookup(key)) {
    write_out(ctx, hit->value);
    return hit->exit_code;
  }
  Outcome out = run();
  const json env = jsonio::envelope(cmd, parameters, out.reports, ctx.prime, ctx.seed, ctx.trials);
  const std::string rendered = ctx.format == "json" ? jsonio::dump_canonical(env) : out.csv;
  write_out(ctx, rendered);
  cache.store(key, rendered, out.exit_code);
  return out.exit_code;
}

schemes::PlacementFlags sliced_flags(int n, int axis) {
  schemes::PlacementFlags fl;
  fl.support_on_h = true;
  fl.dirs_in_h.assign(n, true);
  fl.dirs_in_h[axis] = false;
  return fl;
}

// --- command bodies ----------------------------------------------------------

Outcome run_hilbert(const Ctx& ctx, int n, int d, const std::string& spec, bool on_h,
                    bool dir_in_h) {
  auto groups = parse_scheme_spec(spec, n);
  schemes::PlacementConstraint constraint;
  constraint.support_on_h = on_h;
  constraint.direction_in_h = dir_in_h;
  auto cfg =
      schemes::place_generic(groups, n, constraint, ctx.seed, linalg::PrimeModulus(ctx.prime));
  auto rep = hilbert::hilbert_report(cfg, d, ctx.opt());
  Outcome out;
  out.reports = jsonio::to_json(rep);
  out.csv = jsonio::hilbert_csv(rep);
  return out;
}

Outcome run_secant(const Ctx& ctx, int k, int n, int d, int s, bool span) {
  Outcome out;
  if (span) {
    auto sd = secant::osculating_span_dim(k, n, d, s, ctx.opt());
    out.reports = jsonio::to_json(sd);
    std::ostringstream csv;
    csv << "k,n,d,s,computed,expected,matches\n"
        << k << ',' << n << ',' << d << ',' << s << ',' << sd.computed << ',' << sd.expected << ','
        << (sd.matches ? "true" : "false") << '\n';
    out.csv = csv.str();
    out.exit_code = sd.matches ? 0 : 1;
    return out;
  }
  secant::SecantReport rep;
  if (k == 0) {
    rep = secant::veronese_secant_dim(n, d, s, ctx.opt());
  } else if (k == 1) {
    rep = secant::tangential_secant_dim(n, d, s, ctx.opt());
  } else {
    if (n != 2)
      throw UsageError("secant with k >= 2 is only supported for n = 2 (no explicit scheme "
                       "structure is available in higher dimension)");
    rep = secant::osculating_secant_dim_p2(k, d, s, ctx.opt());
  }
  out.reports = jsonio::to_json(rep);
  out.csv = jsonio::secant_reports_csv({rep});
  return out;
}

Outcome run_check_ah(const Ctx& ctx, int n_max, int d_max, int s_max) {
  Outcome out;
  std::vector<secant::AHCheck> checks;
  bool all_match = true;
  for (int n = 2; n <= n_max; ++n)
    for (int d = 2; d <= d_max; ++d)
      for (int s = 1; s <= s_max; ++s) {
        auto o = ctx.opt();
        o.seed = linalg::derive_seed(ctx.seed,
                                     linalg::derive_seed(static_cast<linalg::u64>(n) * 1000 + d,
                                                         static_cast<linalg::u64>(s)));
        checks.push_back(secant::check_ah(n, d, s, o));
        all_match = all_match && checks.back().matches_ah;
      }
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(jsonio::to_json(c));
  out.reports = json{{"cells", arr}, {"all_match", all_match}};
  out.csv = jsonio::ah_csv(checks);
  out.exit_code = all_match ? 0 : 1;
  return out;
}

Outcome run_conj1(const Ctx& ctx, int n_max, int d_max) {
  auto scan = secant::conj1_scan(n_max, d_max, ctx.opt());
  Outcome out;
  out.reports = jsonio::to_json(scan);
  out.csv = jsonio::conj1_csv(scan);
  out.exit_code = scan.all_match ? 0 : 1;
  return out;
}

Outcome run_conj2a_scan(const Ctx& ctx, int k_max, int d_max, int s_max) {
  auto scan = secant::conj2a_scan(k_max, d_max, s_max, ctx.opt());
  Outcome out;
  out.reports = jsonio::to_json(scan);
  out.csv = jsonio::conj2a_csv(scan);
  out.exit_code = (!scan.any_inconsistent && scan.soundness_ok) ? 0 : 1;
  return out;
}

Outcome run_conj2a_single(const Ctx& ctx, int k, int d, int s) {
  auto v = secant::conj2a_classify(k, d, s, ctx.opt());
  Outcome out;
  out.reports = jsonio::to_json(v);
  secant::Conj2aScan one;
  one.cells.push_back(v);
  out.csv = jsonio::conj2a_csv(one);
  out.exit_code = v.branch == "inconsistent" ? 1 : 0;
  return out;
}

Outcome run_horace_step(const Ctx& ctx, int n, int d, bool step7, bool drop_w, bool extra_z,
                        bool require_valid) {
  const linalg::PrimeModulus P(ctx.prime);
  horace::HoraceStep step = step7 ? horace::build_step7_inner(d, linalg::derive_seed(ctx.seed, 17), P)
                                  : horace::build_step_thm22(n, d, linalg::derive_seed(ctx.seed, 17), P);
  if (drop_w) {
    if (step.w.schemes.empty()) throw UsageError("--drop-w: the step has no whole schemes");
    step.w.schemes.pop_back();
  }
  if (extra_z) {
    horace::ZEntry e;
    e.axis = step.n - 2;
    e.layer = 0;
    e.placed = schemes::place_one(SchemeKind::tangent23(), step.n, sliced_flags(step.n, e.axis),
                                  linalg::derive_seed(ctx.seed, 0xE1), P);
    step.z.push_back(std::move(e));
  }
  auto rep = horace::verify_step(step, ctx.opt());
  Outcome out;
  out.reports = jsonio::to_json(rep);
  std::ostringstream csv;
  csv << "part,n,d,total_length,dim_forms,rank,h0,h1\n";
  auto row = [&](const char* part, const hilbert::HilbertReport& h) {
    csv << part << ',' << h.n << ',' << h.d << ',' << h.total_length << ',' << h.dim_forms << ','
        << h.rank << ',' << h.h0 << ',' << h.h1 << '\n';
  };
  row("trace", rep.trace);
  row("residual", rep.residual);
  row("conclusion", rep.conclusion);
  out.csv = csv.str();
  out.exit_code = 0;
  if (!rep.implication_observed) out.exit_code = 1;
  if (require_valid && !rep.step_valid) out.exit_code = 1;
  return out;
}

Outcome run_replay(const Ctx& ctx, int n_max, int d_max) {
  auto tr = horace::replay_induction(n_max, d_max, ctx.opt());
  Outcome out;
  out.reports = jsonio::to_json(tr);
  out.csv = jsonio::replay_csv(tr);
  out.exit_code = (tr.all_prop && tr.leaves_ok) ? 0 : 1;
  return out;
}

Outcome run_appendix(const std::string& which, int n_max, int d_max) {
  std::vector<combinat::AppendixFamily> fams;
  if (which == "all") {
    fams = {combinat::AppendixFamily::A1, combinat::AppendixFamily::A2,
            combinat::AppendixFamily::A3, combinat::AppendixFamily::A4,
            combinat::AppendixFamily::Mod7};
  } else {
    fams = {combinat::appendix_family_from_string(which)};
  }
  std::vector<combinat::InequalityVerdict> verdicts;
  for (auto f : fams) {
    const int dm = d_max > 0 ? d_max : (f == combinat::AppendixFamily::A4 ? 200 : 60);
    auto part = combinat::verify_appendix(f, n_max, dm);
    verdicts.insert(verdicts.end(), part.begin(), part.end());
  }
  bool all_hold = true;
  json arr = json::array();
  for (const auto& v : verdicts) {
    if (v.hypothesis_met && !v.holds) all_hold = false;
    arr.push_back(jsonio::to_json(v));
  }
  Outcome out;
  out.reports = json{{"verdicts", arr}, {"all_hold", all_hold}};
  out.csv = jsonio::appendix_csv(verdicts);
  out.exit_code = all_hold ? 0 : 1;
  return out;
}

Outcome run_selftest(const Ctx& ctx) {
  struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Check> checks;
  const linalg::PrimeModulus P(ctx.prime);

  {
    Check c{"appendix-inequalities", true, ""};
    for (auto f : {combinat::AppendixFamily::A1, combinat::AppendixFamily::A2,
                   combinat::AppendixFamily::A3, combinat::AppendixFamily::A4,
                   combinat::AppendixFamily::Mod7}) {
      const int dm = f == combinat::AppendixFamily::A4 ? 100 : 30;
      for (const auto& v : combinat::verify_appendix(f, 30, dm))
        if (v.hypothesis_met && !v.holds) {
          c.pass = false;
          c.detail = v.which + " fails at " + v.instance;
        }
    }
    if (c.pass) c.detail = "all counting inequalities hold on the self-test grid";
    checks.push_back(std::move(c));
  }
  {
    Check c{"tangent-scheme-quadric-facts", false, ""};
    auto h0_of = [&](int count, int n, int d, linalg::u64 salt) {
      auto cfg = schemes::place_generic({{SchemeKind::tangent23(), count}}, n, {},
                                        linalg::derive_seed(ctx.seed, salt), P);
      auto o = ctx.opt();
      o.seed = linalg::derive_seed(ctx.seed, salt + 1);
      return hilbert::hilbert_report(cfg, d, o).h0;
    };
    const auto a = h0_of(2, 4, 2, 100);
    const auto b = h0_of(3, 6, 2, 200);
    const auto f = h0_of(5, 3, 4, 300);
    c.pass = a == 1 && b == 1 && f == 0;
    c.detail = "h0(2 in P4, d=2)=" + std::to_string(a) + " h0(3 in P6, d=2)=" + std::to_string(b) +
               " h0(5 in P3, d=4)=" + std::to_string(f);
    checks.push_back(std::move(c));
  }
  {
    Check c{"double-point-quartic-exception", false, ""};
    auto rep = secant::veronese_secant_dim(2, 4, 5, ctx.opt());
    c.pass = rep.hilbert.h0 == 1 && rep.hilbert.h1 == 1 && rep.defective && rep.defect == 1;
    c.detail = "five double points on plane quartics: h0=" + std::to_string(rep.hilbert.h0) +
               " h1=" + std::to_string(rep.hilbert.h1) + " defect=" + std::to_string(rep.defect);
    checks.push_back(std::move(c));
  }
  {
    Check c{"horace-step-44", false, ""};
    auto step = horace::build_step_thm22(4, 4, linalg::derive_seed(ctx.seed, 400), P);
    auto rep = horace::verify_step(step, ctx.opt());
    c.pass = rep.step_valid && rep.conclusion_h0 == 0;
    c.detail = "trace_h0=" + std::to_string(rep.trace_h0) +
               " residual_h0=" + std::to_string(rep.residual_h0) +
               " conclusion_h0=" + std::to_string(rep.conclusion_h0);
    checks.push_back(std::move(c));
  }
  {
    Check c{"determinism", false, ""};
    auto once = [&]() {
      auto cfg = schemes::place_generic({{SchemeKind::fat_point(2), 5}}, 2, {}, ctx.seed, P);
      return jsonio::dump_canonical(jsonio::to_json(hilbert::hilbert_report(cfg, 4, ctx.opt())));
    };
    c.pass = once() == once();
    c.detail = c.pass ? "repeated runs render byte-identical reports" : "renderings differ";
    checks.push_back(std::move(c));
  }

  Outcome out;
  bool all = true;
  json arr = json::array();
  std::ostringstream csv;
  csv << "name,pass,detail\n";
  for (const auto& c : checks) {
    all = all && c.pass;
    arr.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    csv << c.name << ',' << (c.pass ? "true" : "false") << ",\"" << c.detail << "\"\n";
  }
  out.reports = json{{"checks", arr}, {"all_pass", all}};
  out.csv = csv.str();
  out.exit_code = all ? 0 : 1;
  return out;
}

}  // namespace

std::vector<std::pair<SchemeKind, int>> parse_scheme_spec(const std::string& text, int n) {
  std::vector<std::pair<SchemeKind, int>> out;
  const std::size_t len = text.size();
  std::size_t i = 0;
  if (len == 0) throw SpecError("empty scheme spec", 0);

  auto parse_int = [&](const char* what) -> long long {
    const std::size_t start = i;
    if (i >= len || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw SpecError(std::string("expected ") + what, start);
    long long v = 0;
    while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1000000) throw SpecError(std::string(what) + " out of range", start);
      ++i;
    }
    return v;
  };

  while (true) {
    const std::size_t term_start = i;
    std::size_t j = i;
    while (j < len &&
           (std::islower(static_cast<unsigned char>(text[j])) ||
            (j > i && std::isdigit(static_cast<unsigned char>(text[j])))))
      ++j;
    if (j == i) throw SpecError("expected scheme kind", i);
    const std::string kind = text.substr(i, j - i);
    i = j;

    bool has_param = false;
    long long param = 0;
    std::size_t colon_pos = 0;
    if (i < len && text[i] == ':') {
      colon_pos = i;
      ++i;
      param = parse_int("parameter");
      has_param = true;
    }
    long long count = 1;
    if (i < len && text[i] == '*') {
      const std::size_t star_pos = i;
      ++i;
      count = parse_int("count");
      if (count < 1) throw SpecError("count must be >= 1", star_pos + 1);
    }

    auto no_param = [&]() {
      if (has_param) throw SpecError("'" + kind + "' takes no parameter", colon_pos);
    };
    SchemeKind k;
    if (kind == "fat") {
      const long long m = has_param ? param : 2;
      if (m < 1 || m > 60) throw SpecError("fat-point multiplicity must be in 1..60", term_start);
      k = SchemeKind::fat_point(static_cast<int>(m));
    } else if (kind == "pt") {
      no_param();
      k = SchemeKind::fat_point(1);
    } else if (kind == "jet") {
      no_param();
      k = SchemeKind::jet2();
    } else if (kind == "t23") {
      no_param();
      k = SchemeKind::tangent23();
    } else if (kind == "zbar" || kind == "zprime") {
      if (n != 2) throw SpecError("'" + kind + "' requires n = 2", term_start);
      const long long kk = has_param ? param : 1;
      if (kk < 1 || kk > 60) throw SpecError("osculating order must be in 1..60", term_start);
      k = kind == "zbar" ? SchemeKind::zbar(static_cast<int>(kk))
                         : SchemeKind::zprime(static_cast<int>(kk));
    } else {
      throw SpecError("unknown scheme kind '" + kind + "'", term_start);
    }
    out.emplace_back(std::move(k), static_cast<int>(count));

    if (i == len) break;
    if (text[i] != ',') throw SpecError("expected ',' or end of spec", i);
    ++i;
    if (i == len) throw SpecError("trailing comma", i);
  }
  return out;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"osculant: exact regularity and secant-dimension engine for unions of "
               "fat points, jets and tangent-line schemes"};
  app.require_subcommand(1);

  Ctx ctx;
  app.add_option("--prime", ctx.prime, "prime modulus (< 2^63)")
      ->envname("OSCULANT_PRIME")
      ->capture_default_str();
  app.add_option("--seed", ctx.seed, "root seed for all placements")->capture_default_str();
  app.add_option("--trials", ctx.trials, "independent placements per rank")
      ->check(CLI::Range(1u, 64u))
      ->capture_default_str();
  app.add_option("--format", ctx.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", ctx.output, "write the report to this file instead of stdout");
  app.add_option("--cache", ctx.cache_path, "JSONL result cache")
      ->envname("OSCULANT_CACHE")
      ->capture_default_str();
  app.add_flag("--no-cache", ctx.no_cache, "disable the result cache");
  app.add_flag("--cross-check", ctx.cross_check,
               "re-run deficient ranks under a second prime and keep the max");

  struct {
    int n = 2, d = 2;
    std::string spec;
    bool on_h = false, dir_in_h = false;
  } hil;
  auto* c_hil = app.add_subcommand("hilbert", "Hilbert data of a configuration in one degree");
  c_hil->fallthrough();
  c_hil->add_option("--n", hil.n, "ambient projective dimension")->required()->check(CLI::Range(1, 9));
  c_hil->add_option("--d", hil.d, "degree")->required()->check(CLI::Range(1, 400));
  c_hil->add_option("--spec", hil.spec, "scheme spec, e.g. 't23*5,jet*2,pt'")->required();
  c_hil->add_flag("--on-h", hil.on_h, "constrain supports to the hyperplane {x_n = 0}");
  c_hil->add_flag("--dir-in-h", hil.dir_in_h,
                  "also constrain each kind's distinguished direction into the hyperplane");

  struct {
    int k = 1, n = 2, d = 2, s = 1;
    bool span = false;
  } sec;
  auto* c_sec = app.add_subcommand("secant", "secant-variety dimension of the osculating family");
  c_sec->fallthrough();
  c_sec->add_option("--k", sec.k, "osculating order (0 = double points, 1 = tangential)")
      ->required()
      ->check(CLI::Range(0, 60));
  c_sec->add_option("--n", sec.n)->required()->check(CLI::Range(1, 9));
  c_sec->add_option("--d", sec.d)->required()->check(CLI::Range(1, 400));
  c_sec->add_option("--s", sec.s)->required()->check(CLI::Range(1, 100000));
  c_sec->add_flag("--span", sec.span, "check the span dimension of the osculating spaces instead");

  struct {
    int n_max = 4, d_max = 4, s_max = 15;
  } ah;
  auto* c_ah = app.add_subcommand("check-ah", "double points against the classical exception list");
  c_ah->fallthrough();
  c_ah->add_option("--nmax", ah.n_max)->check(CLI::Range(2, 9));
  c_ah->add_option("--dmax", ah.d_max)->check(CLI::Range(2, 60));
  c_ah->add_option("--smax", ah.s_max)->check(CLI::Range(1, 1000));

  struct {
    int n_max = 6, d_max = 6;
  } c1;
  auto* c_c1 = app.add_subcommand("conj1", "tangential-variety defectivity scan");
  c_c1->fallthrough();
  c_c1->add_option("--nmax", c1.n_max)->check(CLI::Range(2, 9));
  c_c1->add_option("--dmax", c1.d_max)->check(CLI::Range(2, 60));

  struct {
    int k_max = 4, d_max = 12, s_max = 12;
    int k = -1, d = -1, s = -1;
  } c2;
  auto* c_c2 = app.add_subcommand("conj2a", "plane osculating classification (scan or one cell)");
  c_c2->fallthrough();
  c_c2->add_option("--kmax", c2.k_max)->check(CLI::Range(1, 10));
  c_c2->add_option("--dmax", c2.d_max)->check(CLI::Range(3, 60));
  c_c2->add_option("--smax", c2.s_max)->check(CLI::Range(1, 1000));
  c_c2->add_option("--k", c2.k, "single cell: osculating order")->check(CLI::Range(1, 60));
  c_c2->add_option("--d", c2.d, "single cell: degree")->check(CLI::Range(3, 400));
  c_c2->add_option("--s", c2.s, "single cell: number of points")->check(CLI::Range(1, 100000));

  struct {
    int n = 4, d = 4;
    bool step7 = false, drop_w = false, extra_z = false, require_valid = false;
  } hs;
  auto* c_hs = app.add_subcommand("horace-step", "assemble and verify one induction step");
  c_hs->fallthrough();
  c_hs->add_option("--n", hs.n)->check(CLI::Range(4, 9));
  c_hs->add_option("--d", hs.d)->check(CLI::Range(4, 120))->required();
  c_hs->add_flag("--step7", hs.step7,
                 "use the inner degree-(d-1) step for the r_{3,d} = 6 degrees");
  c_hs->add_flag("--drop-w", hs.drop_w, "negative control: drop one whole scheme");
  c_hs->add_flag("--extra-z", hs.extra_z, "control: add one extra sliced scheme");
  c_hs->add_flag("--require-valid", hs.require_valid,
                 "exit 1 unless trace and residual both vanish");

  struct {
    int n_max = 6, d_max = 6;
  } rp;
  auto* c_rp = app.add_subcommand("replay", "replay the induction over a grid");
  c_rp->fallthrough();
  c_rp->add_option("--nmax", rp.n_max)->check(CLI::Range(4, 9));
  c_rp->add_option("--dmax", rp.d_max)->check(CLI::Range(4, 12));

  struct {
    std::string which = "all";
    int n_max = 60, d_max = 0;
  } ax;
  auto* c_ax = app.add_subcommand("appendix", "exact recomputation of the counting inequalities");
  c_ax->fallthrough();
  c_ax->add_option("--which", ax.which)
      ->check(CLI::IsMember({"a1", "a2", "a3", "a4", "mod7", "all"}))
      ->capture_default_str();
  c_ax->add_option("--nmax", ax.n_max)->check(CLI::Range(4, 10000));
  c_ax->add_option("--dmax", ax.d_max, "0 = family default (200 for a4, 60 otherwise)")
      ->check(CLI::Range(0, 10000));

  auto* c_st = app.add_subcommand("selftest", "small battery of known values and invariants");
  c_st->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (ctx.prime >= (1ull << 63) || !linalg::is_prime_u64(ctx.prime)) {
    std::cerr << "usage error: --prime must be a prime below 2^63\n";
    return 2;
  }

  try {
    if (c_hil->parsed()) {
      const json params{{"n", hil.n}, {"d", hil.d},           {"spec", hil.spec},
                        {"on_h", hil.on_h}, {"dir_in_h", hil.dir_in_h}};
      return finish(ctx, "hilbert", params,
                    [&] { return run_hilbert(ctx, hil.n, hil.d, hil.spec, hil.on_h, hil.dir_in_h); });
    }
    if (c_sec->parsed()) {
      const json params{{"k", sec.k}, {"n", sec.n}, {"d", sec.d}, {"s", sec.s}, {"span", sec.span}};
      return finish(ctx, "secant", params,
                    [&] { return run_secant(ctx, sec.k, sec.n, sec.d, sec.s, sec.span); });
    }
    if (c_ah->parsed()) {
      const json params{{"n_max", ah.n_max}, {"d_max", ah.d_max}, {"s_max", ah.s_max}};
      return finish(ctx, "check-ah", params,
                    [&] { return run_check_ah(ctx, ah.n_max, ah.d_max, ah.s_max); });
    }
    if (c_c1->parsed()) {
      const json params{{"n_max", c1.n_max}, {"d_max", c1.d_max}};
      return finish(ctx, "conj1", params, [&] { return run_conj1(ctx, c1.n_max, c1.d_max); });
    }
    if (c_c2->parsed()) {
      const bool any_single = c2.k >= 0 || c2.d >= 0 || c2.s >= 0;
      const bool all_single = c2.k >= 0 && c2.d >= 0 && c2.s >= 0;
      if (any_single && !all_single)
        throw UsageError("single-cell mode needs all of --k, --d, --s");
      if (all_single) {
        if (c2.d < c2.k + 2) throw UsageError("single-cell mode needs d >= k + 2");
        const json params{{"k", c2.k}, {"d", c2.d}, {"s", c2.s}, {"single", true}};
        return finish(ctx, "conj2a", params,
                      [&] { return run_conj2a_single(ctx, c2.k, c2.d, c2.s); });
      }
      const json params{{"k_max", c2.k_max}, {"d_max", c2.d_max}, {"s_max", c2.s_max}};
      return finish(ctx, "conj2a", params,
                    [&] { return run_conj2a_scan(ctx, c2.k_max, c2.d_max, c2.s_max); });
    }
    if (c_hs->parsed()) {
      const json params{{"n", hs.n},           {"d", hs.d},
                        {"step7", hs.step7},   {"drop_w", hs.drop_w},
                        {"extra_z", hs.extra_z}, {"require_valid", hs.require_valid}};
      return finish(ctx, "horace-step", params, [&] {
        return run_horace_step(ctx, hs.n, hs.d, hs.step7, hs.drop_w, hs.extra_z, hs.require_valid);
      });
    }
    if (c_rp->parsed()) {
      const json params{{"n_max", rp.n_max}, {"d_max", rp.d_max}};
      return finish(ctx, "replay", params, [&] { return run_replay(ctx, rp.n_max, rp.d_max); });
    }
    if (c_ax->parsed()) {
      const json params{{"which", ax.which}, {"n_max", ax.n_max}, {"d_max", ax.d_max}};
      return finish(ctx, "appendix", params, [&] { return run_appendix(ax.which, ax.n_max, ax.d_max); });
    }
    if (c_st->parsed()) {
      return finish(ctx, "selftest", json::object(), [&] { return run_selftest(ctx); });
    }
    std::cerr << "usage error: no command given\n";
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "scheme spec error at position " << e.position() << ": " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace osculant::cli
