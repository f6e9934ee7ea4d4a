#pragma once

// Seeded property suites over generated programs. Each case draws from its
// own stream split off the seed by case index, so a case can be replayed on
// its own and cases can run on any number of threads.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lamg/approx.hpp"
#include "lamg/propgen.hpp"

namespace lamg::suites {

struct SuiteConfig {
  propgen::GenConfig gen;
  std::size_t count = 100;
  std::size_t threads = 1;
};

struct CaseResult {
  std::size_t index = 0;
  approx::VerdictKind kind = approx::VerdictKind::Holds;
  std::optional<approx::Cause> cause;
  // What was checked and, for failures, what went wrong.
  std::string detail;
  std::optional<approx::Witness> witness;
  // Named counters the suite aggregates into its report.
  std::map<std::string, double> stats;
};

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t inconclusive = 0;
  double wall_seconds = 0;
  SuiteConfig config;
  // Failing cases, sorted by index.
  std::vector<CaseResult> failures;
  // Counters summed over cases, plus derived rates.
  std::map<std::string, double> stats;
};

const std::vector<std::string_view>& suite_names();
bool known_suite(std::string_view name);

// Runs case `index` of `suite`. Throws std::invalid_argument for an unknown
// suite.
CaseResult run_case(std::string_view suite, const SuiteConfig& config, std::size_t index);

SuiteReport run_suite(std::string_view suite, const SuiteConfig& config);

}  // namespace lamg::suites
