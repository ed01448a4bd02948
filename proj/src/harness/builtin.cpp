#include <string>
#include <utility>
#include <vector>

#include "geophase/error.hpp"
#include "geophase/harness/scenario.hpp"

namespace geophase::harness {

namespace {

// Generated from configs/*.json at configure time.
const std::vector<std::pair<std::string, std::string>> kBundled = {
#include "builtin_scenarios.inc"
};

}  // namespace

const std::vector<std::pair<std::string, json>>& builtin_scenarios() {
  static const std::vector<std::pair<std::string, json>> parsed = [] {
    std::vector<std::pair<std::string, json>> out;
    for (const auto& [name, text] : kBundled) out.emplace_back(name, json::parse(text));
    return out;
  }();
  return parsed;
}

const json& builtin_scenario(const std::string& name) {
  for (const auto& [n, doc] : builtin_scenarios())
    if (n == name) return doc;
  fail(ErrorCode::validation, "no bundled scenario named '" + name + "'");
}

}  // namespace geophase::harness
