#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace curenet::cli {

struct OraclePair {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double worst_ratio = 1.0;  ///< approximation / oracle, 1 when both are zero
  std::string first_failure;
};

struct OracleReport {
  std::vector<OraclePair> pairs;
  bool ok() const;
};

struct OracleSuiteOptions {
  std::size_t size_limit = 8;
  std::uint64_t seed = 1;
  std::size_t instances = 40;  ///< per pair
};

/// Random connected instances with 1..size_limit nodes, each approximation
/// run against its exhaustive counterpart.
OracleReport oracle_suite(const OracleSuiteOptions& options);

void write_report_csv(std::ostream& out, const OracleReport& report);

}  // namespace curenet::cli
