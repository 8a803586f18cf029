#pragma once
// Append-only JSONL result cache. One record per line:
//   {"key": <canonical key>, "value": <rendered report>, "timestamp": <utc>}
// The key folds in everything that determines the bytes of the report
// (command, parameters, prime, seed, trials, artifact version), so a hit can
// be replayed verbatim and must equal fresh recomputation byte for byte.

#include <optional>
#include <string>

#include "json.hpp"

#include "osculant/field_linalg.hpp"

namespace osculant::cachef {

class ReportCache {
 public:
  ReportCache(std::string path, bool enabled);

  bool enabled() const { return enabled_; }
  const std::string& path() const { return path_; }

  struct Hit {
    std::string value;
    int exit_code = 0;
  };

  // Last stored record for the key, if any (later lines win).
  std::optional<Hit> lookup(const std::string& key) const;

  // Appends one record; no-op when disabled.
  void store(const std::string& key, const std::string& value, int exit_code) const;

  static std::string make_key(const std::string& command, const nlohmann::json& parameters,
                              linalg::u64 prime, linalg::u64 seed, unsigned trials);

 private:
  std::string path_;
  bool enabled_ = false;
};

}  // namespace osculant::cachef
