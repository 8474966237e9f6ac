#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pdk::suite {

struct CriterionResult {
  int id = 0;
  std::string group;
  std::string title;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Empty runs everything; otherwise a group name or a criterion number.
  std::string filter;
  unsigned threads = 0;
};

/// Criterion ids in order: 1..9.
std::vector<int> criterion_ids();
std::string criterion_group(int id);
std::string criterion_title(int id);
bool matches_filter(int id, const std::string& filter);

CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_suite(const SuiteOptions& options);

}  // namespace pdk::suite
