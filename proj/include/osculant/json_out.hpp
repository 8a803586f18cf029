#pragma once
// JSON/CSV serialization of every report type, with stable field names and a
// canonical byte layout (sorted keys, two-space indent, trailing newline) so
// equal runs produce byte-identical documents.

#include <string>
#include <vector>

#include "json.hpp"

#include "osculant/combinat.hpp"
#include "osculant/horace.hpp"
#include "osculant/secant.hpp"

namespace osculant::jsonio {

using json = nlohmann::json;

std::string i128_to_string(combinat::i128 v);

json to_json(const hilbert::HilbertReport& r);
json to_json(const secant::SecantProblem& p);
json to_json(const secant::SecantReport& r);
json to_json(const secant::AHCheck& c);
json to_json(const secant::Conj1Cell& c);
json to_json(const secant::Conj1Scan& s);
json to_json(const secant::Conj2aVerdict& v);
json to_json(const secant::Conj2aScan& s);
json to_json(const secant::SpanDim& s);
json to_json(const combinat::InequalityVerdict& v);
json to_json(const horace::StepReport& r);
json to_json(const horace::NodeRecord& n);
json to_json(const horace::InductionTrace& t);
json to_json(const horace::BaseD3Facts& f);

// Top-level document: {command, parameters, artifact_version, prime, seed,
// trials, reports}.
json envelope(const std::string& command, const json& parameters, const json& reports,
              linalg::u64 prime, linalg::u64 seed, unsigned trials);

// Canonical rendering used everywhere (including the cache).
std::string dump_canonical(const json& j);

// CSV renderings (header row + one row per cell/verdict/node).
std::string secant_reports_csv(const std::vector<secant::SecantReport>& rows);
std::string ah_csv(const std::vector<secant::AHCheck>& rows);
std::string conj1_csv(const secant::Conj1Scan& s);
std::string conj2a_csv(const secant::Conj2aScan& s);
std::string appendix_csv(const std::vector<combinat::InequalityVerdict>& rows);
std::string replay_csv(const horace::InductionTrace& t);
std::string hilbert_csv(const hilbert::HilbertReport& r);

}  // namespace osculant::jsonio
