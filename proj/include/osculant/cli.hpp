#pragma once
// Command-line surface: scheme-spec parsing, command dispatch, report
// serialization and the JSONL result cache.
//
// Exit codes: 0 = success with all internal verdicts as expected;
//             1 = a verification command found a violated expectation;
//             2 = usage error (bad flags, malformed scheme spec, bad prime).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osculant/schemes.hpp"

namespace osculant::cli {

// Malformed scheme spec; position is a 0-based byte offset into the text.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar: term (',' term)*, term = kind (':' integer)? ('*' integer)?.
// Kinds: fat (parameter m, default 2), jet, t23, pt (alias fat:1),
// zbar / zprime (parameter k, default 1; require n = 2).
std::vector<std::pair<schemes::SchemeKind, int>> parse_scheme_spec(const std::string& text, int n);

// Full application; argv as passed to main.
int run_cli(int argc, const char* const* argv);

}  // namespace osculant::cli
