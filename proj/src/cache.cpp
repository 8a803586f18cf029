#include "osculant/cache.hpp"

#include <chrono>
#include <fstream>
#include <utility>

namespace osculant::cachef {

ReportCache::ReportCache(std::string path, bool enabled)
    : path_(std::move(path)), enabled_(enabled && !path_.empty()) {}

std::optional<ReportCache::Hit> ReportCache::lookup(const std::string& key) const {
  if (!enabled_) return std::nullopt;
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::optional<Hit> hit;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    auto k = j.find("key");
    auto v = j.find("value");
    if (k == j.end() || v == j.end() || !k->is_string() || !v->is_string()) continue;
    if (k->get<std::string>() != key) continue;
    Hit h;
    h.value = v->get<std::string>();
    if (auto e = j.find("exit"); e != j.end() && e->is_number_integer()) h.exit_code = e->get<int>();
    hit = std::move(h);
  }
  return hit;
}

void ReportCache::store(const std::string& key, const std::string& value, int exit_code) const {
  if (!enabled_) return;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  nlohmann::json rec{{"key", key}, {"value", value}, {"exit", exit_code}, {"timestamp", ms}};
  std::ofstream out(path_, std::ios::app);
  if (!out) return;
  out << rec.dump() << '\n';
}

std::string ReportCache::make_key(const std::string& command, const nlohmann::json& parameters,
                                  linalg::u64 prime, linalg::u64 seed, unsigned trials) {
  nlohmann::json k{{"command", command},
                   {"parameters", parameters},
                   {"prime", prime},
                   {"seed", seed},
                   {"trials", trials},
                   {"artifact_version", "0.1.0"}};
  return k.dump();
}

}  // namespace osculant::cachef
