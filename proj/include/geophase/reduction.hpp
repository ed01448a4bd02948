#pragma once

// Modular state reduction: a measurement at scale L (Planck lengths) over n
// excited base states selects the energy-ordered state L mod n.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "geophase/geometry.hpp"

namespace geophase {

using BigInt = boost::multiprecision::cpp_int;

/// Parses a nonnegative decimal integer; ErrorCode::validation otherwise.
BigInt parse_big_int(const std::string& decimal);

/// Exact Euclidean remainder of L >= 0 by n >= 1.
int index_mod(const BigInt& scale, int n);

struct ReductionSample {
  BigInt scale;
  int n = 1;
  int index = 0;
  int gamma_index = 0;
};

struct UniformityScan {
  std::vector<std::uint64_t> histogram;
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Histogram of index_mod over L_start + k*stride, k in [0, count).
/// Requires count >= 10 n. The range is split across `threads` workers and
/// merged in a fixed order.
UniformityScan uniformity_scan(const BigInt& start, std::int64_t count, int n,
                               std::int64_t stride = 1, int threads = 1);

struct SensitivityMap {
  std::vector<std::pair<std::int64_t, int>> entries;  // (delta, index(L + delta))
  double changed_fraction = 0.0;  // share of unit steps that change the index
};

SensitivityMap sensitivity_map(const BigInt& scale, int n, std::int64_t radius);

struct CorrespondenceRecord {
  double t = 0.0;
  int scale_index = 0;
  int gamma_index = 0;
  bool agree = false;
};

struct CorrespondenceReport {
  std::vector<CorrespondenceRecord> records;
  double agreement_rate = 0.0;
};

/// Compares L(t) mod n against floor(gamma(t)) mod n on a time grid.
CorrespondenceReport correspondence_report(const std::vector<BigInt>& scales, int n,
                                           const CurvatureProfile& profile,
                                           const ThermoParams& thermo,
                                           const std::vector<double>& times);

}  // namespace geophase
