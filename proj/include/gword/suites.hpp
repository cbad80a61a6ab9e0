#pragma once

// Named property suites run by `gword verify`. Each suite checks one family
// of positivity results at desk scale and reports failures rather than
// throwing.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gword {

struct SuiteInfo {
  std::string name;
  std::string description;
  /// Result tags (see result_tags()) the suite exercises.
  std::vector<std::string> covers;
};

/// Every positivity result the tool knows how to check.
const std::vector<std::string>& result_tags();
const std::vector<SuiteInfo>& suite_registry();

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// First few failure descriptions.
  std::vector<std::string> notes;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool passed() const { return failures == 0; }
};

/// Throws InvalidArgument for an unknown suite name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace gword
