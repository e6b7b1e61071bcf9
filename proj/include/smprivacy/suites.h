// SPDX-License-Identifier: Apache-2.0
//
// Named verification suites. Each one exhausts or samples a small parameter
// range and tallies pass/fail per property.
#ifndef SMPRIVACY_SUITES_H_
#define SMPRIVACY_SUITES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "smprivacy/ems.h"

namespace smprivacy {

struct SuiteOptions {
  std::uint64_t seed = 20180415;
  int random_laws = 50;
  std::size_t conservation_pairs = 10'000;
  // Restricts theorem2 / disjointness to one configuration.
  std::optional<EmsConfig> config;
  std::optional<int> block_length;
  std::optional<int> blocks;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  // First failure, or a short summary when everything passed.
  std::string detail;
  nlohmann::json witness;

  bool passed() const { return failures == 0 && cases > 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;

  bool passed() const;
};

const std::vector<std::string>& known_suites();

// Throws DomainError for an unknown suite name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

nlohmann::json to_json(const SuiteReport& report);

}  // namespace smprivacy

#endif  // SMPRIVACY_SUITES_H_
