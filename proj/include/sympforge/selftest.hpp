#pragma once

// Seeded invariant suites per module, used by `sympforge selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace sympforge::selftest {

struct InvariantResult {
  std::string module;
  std::string invariant;
  bool passed = false;
  std::size_t cases = 0;
  double seconds = 0;
  std::string detail;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<InvariantResult> results;
  double total_seconds = 0;
  bool passed() const;
  /// "module/invariant" for every failed invariant.
  std::vector<std::string> failed() const;
};

const std::vector<std::string>& modules();

/// Deliberate mutations that a sound suite must catch:
/// "taming-sign", "normal-form-basis", "hodge-volume".
const std::vector<std::string>& known_faults();

/// `scope` is "all" or a module name. Throws Error(InvalidInput) on unknown
/// scope or fault names.
Report run(const std::string& scope, std::uint64_t seed,
           const std::vector<std::string>& faults = {});

}  // namespace sympforge::selftest
