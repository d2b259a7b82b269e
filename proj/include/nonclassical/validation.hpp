#ifndef NONCLASSICAL_VALIDATION_HPP_
#define NONCLASSICAL_VALIDATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace nonclassical {

struct CriterionInfo {
  int id = 0;
  std::string name;
  std::string summary;
  /// Wall-clock budget; exceeding it fails the criterion.
  double budget_seconds = 0.0;
};

struct CriterionReport {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured quantities as "key=value" pairs separated by spaces.
  std::string detail;
  double seconds = 0.0;
};

/// The acceptance suite, ordered by id (1..11).
const std::vector<CriterionInfo>& criteria();

/// Runs one criterion by id or name. Exceptions thrown by the modules are
/// reported as failures. Throws ConfigError for an unknown criterion.
CriterionReport run_criterion(const std::string& id_or_name, std::uint64_t seed = 2024);

/// "PASS 6 scheme-order (12.3s) key=value ..."
std::string format_report(const CriterionReport& r);

}  // namespace nonclassical

#endif  // NONCLASSICAL_VALIDATION_HPP_
