#include "osculant/json_out.hpp"

#include <sstream>

namespace osculant::jsonio {

namespace {

constexpr const char* kArtifactVersion = "0.1.0";

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string i128_to_string(combinat::i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u > 0) {
    digits += static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  if (neg) digits += '-';
  return std::string(digits.rbegin(), digits.rend());
}

json to_json(const hilbert::HilbertReport& r) {
  return json{{"n", r.n},
              {"d", r.d},
              {"total_length", r.total_length},
              {"dim_forms", r.dim_forms},
              {"rank", r.rank},
              {"h0", r.h0},
              {"h1", r.h1},
              {"expected_h0", r.expected_h0},
              {"expected_h1", r.expected_h1},
              {"regular", r.regular},
              {"defective_evidence", r.defective_evidence},
              {"trials", r.trials},
              {"prime", r.prime},
              {"seed", r.seed},
              {"cross_checked", r.cross_checked}};
}

json to_json(const secant::SecantProblem& p) {
  return json{{"k", p.k}, {"n", p.n}, {"d", p.d}, {"s", p.s}};
}

json to_json(const secant::SecantReport& r) {
  return json{{"problem", to_json(r.problem)},
              {"ambient_dim", r.N},
              {"expected_dim", r.expdim},
              {"dim", r.dim},
              {"defect", r.defect},
              {"defective", r.defective},
              {"basis", r.basis},
              {"evidence_quality", r.evidence_quality},
              {"hilbert", to_json(r.hilbert)}};
}

json to_json(const secant::AHCheck& c) {
  return json{{"report", to_json(c.report)},
              {"in_exception_list", c.in_exception_list},
              {"matches_ah", c.matches_ah}};
}

json to_json(const secant::Conj1Cell& c) {
  return json{{"report", to_json(c.report)},
              {"expected_defective", c.expected_defective},
              {"matches", c.matches}};
}

json to_json(const secant::Conj1Scan& s) {
  json cells = json::array();
  for (const auto& c : s.cells) cells.push_back(to_json(c));
  return json{{"cells", cells}, {"mismatch_count", s.mismatch_count}, {"all_match", s.all_match}};
}

json to_json(const secant::Conj2aVerdict& v) {
  return json{{"problem", to_json(v.problem)},
              {"branch", v.branch},
              {"h0_x", v.h0_x},
              {"h1_x", v.h1_x},
              {"h0_t", v.h0_t},
              {"h0_ybar", v.h0_ybar},
              {"h1_ybar", v.h1_ybar},
              {"deg_y", v.deg_y},
              {"condition_i", v.condition_i},
              {"condition_ii", v.condition_ii},
              {"ybar_defective", v.ybar_defective}};
}

json to_json(const secant::Conj2aScan& s) {
  json cells = json::array();
  for (const auto& c : s.cells) cells.push_back(to_json(c));
  return json{{"cells", cells},
              {"any_inconsistent", s.any_inconsistent},
              {"soundness_ok", s.soundness_ok}};
}

json to_json(const secant::SpanDim& s) {
  return json{{"computed", s.computed},
              {"expected", s.expected},
              {"matches", s.matches},
              {"hilbert", to_json(s.hilbert)}};
}

json to_json(const combinat::InequalityVerdict& v) {
  return json{{"which", v.which},
              {"instance", v.instance},
              {"hypothesis_met", v.hypothesis_met},
              {"holds", v.holds},
              {"lhs", i128_to_string(v.lhs)},
              {"rhs", i128_to_string(v.rhs)},
              {"comparison", v.comparison},
              {"note", v.note}};
}

json to_json(const horace::StepReport& r) {
  return json{{"n", r.n},
              {"d", r.d},
              {"provenance", r.provenance},
              {"trace_h0", r.trace_h0},
              {"residual_h0", r.residual_h0},
              {"conclusion_h0", r.conclusion_h0},
              {"step_valid", r.step_valid},
              {"implication_observed", r.implication_observed},
              {"trace", to_json(r.trace)},
              {"residual", to_json(r.residual)},
              {"conclusion", to_json(r.conclusion)}};
}

json to_json(const horace::NodeRecord& n) {
  json j{{"n", n.n},
         {"d", n.d},
         {"kind", n.kind},
         {"evaluated", n.evaluated},
         {"prop", n.prop},
         {"reg", n.reg},
         {"dime", n.dime},
         {"degue", n.degue}};
  if (!n.provenance.empty()) j["provenance"] = n.provenance;
  if (!n.error.empty()) j["error"] = n.error;
  if (n.kind == "step") {
    j["trace_h0"] = n.trace_h0;
    j["residual_h0"] = n.residual_h0;
    j["conclusion_h0"] = n.conclusion_h0;
  } else {
    j["leaf_s"] = n.leaf_s;
    j["leaf_h1_at_s"] = n.leaf_h1_at_s;
    j["leaf_h0_above"] = n.leaf_h0_above;
    if (n.known_anomaly) j["known_anomaly"] = true;
  }
  return j;
}

json to_json(const horace::InductionTrace& t) {
  json nodes = json::object();
  for (const auto& n : t.nodes) nodes[n.key] = to_json(n);
  json edges = json::array();
  for (const auto& [from, to] : t.edges) edges.push_back(json::array({from, to}));
  return json{{"n_max", t.n_max},
              {"d_max", t.d_max},
              {"nodes", nodes},
              {"edges", edges},
              {"all_prop", t.all_prop},
              {"leaves_ok", t.leaves_ok}};
}

json to_json(const horace::BaseD3Facts& f) {
  json j{{"n", f.n},
         {"s", f.s},
         {"h1_at_s", f.h1_at_s},
         {"h0_above", f.h0_above},
         {"ok", f.ok}};
  if (f.n == 4) {
    j["h0_anomaly"] = f.h0_anomaly;
    j["h1_anomaly"] = f.h1_anomaly;
  }
  return j;
}

json envelope(const std::string& command, const json& parameters, const json& reports,
              linalg::u64 prime, linalg::u64 seed, unsigned trials) {
  return json{{"command", command},
              {"parameters", parameters},
              {"artifact_version", kArtifactVersion},
              {"prime", prime},
              {"seed", seed},
              {"trials", trials},
              {"reports", reports}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

namespace {

std::string secant_csv_header() {
  return "k,n,d,s,ambient_dim,expected_dim,dim,defect,defective,basis,evidence_quality,"
         "total_length,dim_forms,rank,h0,h1,regular\n";
}

void secant_csv_row(std::ostringstream& out, const secant::SecantReport& r) {
  out << r.problem.k << ',' << r.problem.n << ',' << r.problem.d << ',' << r.problem.s << ','
      << r.N << ',' << r.expdim << ',' << r.dim << ',' << r.defect << ','
      << (r.defective ? "true" : "false") << ',' << csv_escape(r.basis) << ','
      << csv_escape(r.evidence_quality) << ',' << r.hilbert.total_length << ','
      << r.hilbert.dim_forms << ',' << r.hilbert.rank << ',' << r.hilbert.h0 << ','
      << r.hilbert.h1 << ',' << (r.hilbert.regular ? "true" : "false") << '\n';
}

}  // namespace

std::string secant_reports_csv(const std::vector<secant::SecantReport>& rows) {
  std::ostringstream out;
  out << secant_csv_header();
  for (const auto& r : rows) secant_csv_row(out, r);
  return out.str();
}

std::string ah_csv(const std::vector<secant::AHCheck>& rows) {
  std::ostringstream out;
  out << "k,n,d,s,ambient_dim,expected_dim,dim,defect,defective,basis,evidence_quality,"
         "total_length,dim_forms,rank,h0,h1,regular,in_exception_list,matches_ah\n";
  for (const auto& c : rows) {
    std::ostringstream row;
    secant_csv_row(row, c.report);
    std::string line = row.str();
    line.pop_back();
    out << line << ',' << (c.in_exception_list ? "true" : "false") << ','
        << (c.matches_ah ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string conj1_csv(const secant::Conj1Scan& s) {
  std::ostringstream out;
  out << "k,n,d,s,ambient_dim,expected_dim,dim,defect,defective,basis,evidence_quality,"
         "total_length,dim_forms,rank,h0,h1,regular,expected_defective,matches\n";
  for (const auto& c : s.cells) {
    std::ostringstream row;
    secant_csv_row(row, c.report);
    std::string line = row.str();
    line.pop_back();  // replace the newline with the two verdict columns
    out << line << ',' << (c.expected_defective ? "true" : "false") << ','
        << (c.matches ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string conj2a_csv(const secant::Conj2aScan& s) {
  std::ostringstream out;
  out << "k,n,d,s,branch,h0_x,h1_x,h0_t,h0_ybar,h1_ybar,deg_y,condition_i,condition_ii,"
         "ybar_defective\n";
  for (const auto& v : s.cells) {
    out << v.problem.k << ',' << v.problem.n << ',' << v.problem.d << ',' << v.problem.s << ','
        << csv_escape(v.branch) << ',' << v.h0_x << ',' << v.h1_x << ',' << v.h0_t << ','
        << v.h0_ybar << ',' << v.h1_ybar << ',' << v.deg_y << ','
        << (v.condition_i ? "true" : "false") << ',' << (v.condition_ii ? "true" : "false") << ','
        << (v.ybar_defective ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string appendix_csv(const std::vector<combinat::InequalityVerdict>& rows) {
  std::ostringstream out;
  out << "which,instance,hypothesis_met,holds,lhs,rhs,comparison,note\n";
  for (const auto& v : rows) {
    out << csv_escape(v.which) << ',' << csv_escape(v.instance) << ','
        << (v.hypothesis_met ? "true" : "false") << ',' << (v.holds ? "true" : "false") << ','
        << i128_to_string(v.lhs) << ',' << i128_to_string(v.rhs) << ','
        << csv_escape(v.comparison) << ',' << csv_escape(v.note) << '\n';
  }
  return out.str();
}

std::string replay_csv(const horace::InductionTrace& t) {
  std::ostringstream out;
  out << "key,n,d,kind,provenance,evaluated,prop,reg,dime,degue,trace_h0,residual_h0,"
         "conclusion_h0,leaf_s,leaf_h1_at_s,leaf_h0_above,error\n";
  for (const auto& n : t.nodes) {
    out << csv_escape(n.key) << ',' << n.n << ',' << n.d << ',' << csv_escape(n.kind) << ','
        << csv_escape(n.provenance) << ',' << (n.evaluated ? "true" : "false") << ','
        << (n.prop ? "true" : "false") << ',' << (n.reg ? "true" : "false") << ','
        << (n.dime ? "true" : "false") << ',' << (n.degue ? "true" : "false") << ','
        << n.trace_h0 << ',' << n.residual_h0 << ',' << n.conclusion_h0 << ',' << n.leaf_s << ','
        << n.leaf_h1_at_s << ',' << n.leaf_h0_above << ',' << csv_escape(n.error) << '\n';
  }
  return out.str();
}

std::string hilbert_csv(const hilbert::HilbertReport& r) {
  std::ostringstream out;
  out << "n,d,total_length,dim_forms,rank,h0,h1,expected_h0,expected_h1,regular,"
         "defective_evidence,trials,prime,seed,cross_checked\n";
  out << r.n << ',' << r.d << ',' << r.total_length << ',' << r.dim_forms << ',' << r.rank << ','
      << r.h0 << ',' << r.h1 << ',' << r.expected_h0 << ',' << r.expected_h1 << ','
      << (r.regular ? "true" : "false") << ',' << (r.defective_evidence ? "true" : "false") << ','
      << r.trials << ',' << r.prime << ',' << r.seed << ','
      << (r.cross_checked ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace osculant::jsonio
