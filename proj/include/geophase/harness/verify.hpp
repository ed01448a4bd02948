#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geophase/gravity.hpp"

namespace geophase::harness {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  /// Deterministic metrics; these are the data outputs.
  std::vector<std::pair<std::string, double>> metrics;
  std::string detail;
  double seconds = 0.0;     // wall time, never written to data files
  double time_limit = 0.0;  // seconds
};

struct VerifyOptions {
  PhysicalConstants constants = PhysicalConstants::planck_units();
  int threads = 1;
};

struct VerifySummary {
  std::vector<CriterionResult> criteria;
  bool all_passed = false;
  double seconds = 0.0;
};

CriterionResult check_constants(const PhysicalConstants& k);
CriterionResult check_unitarity();
CriterionResult check_holonomy();
CriterionResult check_phase_pipeline();
CriterionResult check_thermo_oracle();
CriterionResult check_einstein_trace(const PhysicalConstants& k);
CriterionResult check_cosmological_constant(const PhysicalConstants& k);
CriterionResult check_reduction();

/// Decimal long-division remainder; independent of the BigInt division path.
int decimal_remainder(const std::string& decimal, int n);

/// Runs every criterion, then reruns the data-producing ones and compares
/// the serialized outputs byte for byte.
VerifySummary verify(const VerifyOptions& opt = {});

/// Data outputs (no timings).
nlohmann::json verify_to_json(const VerifySummary& s);
std::string verify_to_csv(const VerifySummary& s);
/// One human-readable PASS/FAIL line per criterion, with timings.
std::string verify_text(const VerifySummary& s);

}  // namespace geophase::harness
