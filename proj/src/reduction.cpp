#include "geophase/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "geophase/error.hpp"

namespace geophase {

namespace {

int euclidean_mod(const BigInt& value, int n) {
  BigInt r = value % n;
  if (r < 0) r += n;
  return r.convert_to<int>();
}

}  // namespace

BigInt parse_big_int(const std::string& decimal) {
  if (decimal.empty() ||
      !std::all_of(decimal.begin(), decimal.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    fail(ErrorCode::validation, "expected a nonnegative decimal integer, got '" + decimal + "'");
  return BigInt(decimal);
}

int index_mod(const BigInt& scale, int n) {
  if (n <= 0) fail(ErrorCode::domain, "index_mod: n must be >= 1");
  if (scale < 0) fail(ErrorCode::domain, "index_mod: L must be >= 0");
  return euclidean_mod(scale, n);
}

UniformityScan uniformity_scan(const BigInt& start, std::int64_t count, int n,
                               std::int64_t stride, int threads) {
  if (n <= 0) fail(ErrorCode::domain, "uniformity_scan: n must be >= 1");
  if (count < 10 * static_cast<std::int64_t>(n))
    fail(ErrorCode::domain, "uniformity_scan: count must be >= 10 n");
  if (start < 0) fail(ErrorCode::domain, "uniformity_scan: L_start must be >= 0");
  if (stride < 0) fail(ErrorCode::domain, "uniformity_scan: stride must be >= 0");

  const int workers = static_cast<int>(
      std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(1, count / 1024)));
  const int step = static_cast<int>(stride % n);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n, 0));

  auto scan_chunk = [&](int w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    int residue = index_mod(start + BigInt(begin) * stride, n);
    auto& hist = partial[w];
    for (std::int64_t k = begin; k < end; ++k) {
      ++hist[residue];
      residue += step;
      if (residue >= n) residue -= n;
    }
  };
  if (workers == 1) {
    scan_chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(scan_chunk, w);
    for (auto& th : pool) th.join();
  }

  UniformityScan out;
  out.histogram.assign(n, 0);
  for (const auto& hist : partial)
    for (int r = 0; r < n; ++r) out.histogram[r] += hist[r];

  const double expected = static_cast<double>(count) / n;
  for (std::uint64_t observed : out.histogram) {
    const double diff = static_cast<double>(observed) - expected;
    out.chi_square += diff * diff / expected;
  }
  out.degrees_of_freedom = n - 1;
  if (n > 1) {
    boost::math::chi_squared dist(out.degrees_of_freedom);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
  }
  return out;
}

SensitivityMap sensitivity_map(const BigInt& scale, int n, std::int64_t radius) {
  if (radius < 1) fail(ErrorCode::domain, "sensitivity_map: radius must be >= 1");
  if (n <= 0) fail(ErrorCode::domain, "sensitivity_map: n must be >= 1");
  SensitivityMap out;
  out.entries.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (std::int64_t d = -radius; d <= radius; ++d)
    out.entries.emplace_back(d, euclidean_mod(scale + d, n));
  std::int64_t changed = 0;
  for (std::size_t k = 1; k < out.entries.size(); ++k)
    if (out.entries[k].second != out.entries[k - 1].second) ++changed;
  out.changed_fraction = static_cast<double>(changed) / (2 * radius);
  return out;
}

CorrespondenceReport correspondence_report(const std::vector<BigInt>& scales, int n,
                                           const CurvatureProfile& profile,
                                           const ThermoParams& thermo,
                                           const std::vector<double>& times) {
  if (scales.size() != times.size())
    fail(ErrorCode::domain, "correspondence_report: series lengths differ");
  if (n <= 0) fail(ErrorCode::domain, "correspondence_report: n must be >= 1");
  CorrespondenceReport out;
  out.records.reserve(times.size());
  std::size_t agree = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    CorrespondenceRecord rec;
    rec.t = times[k];
    rec.scale_index = index_mod(scales[k], n);
    rec.gamma_index = initial_index(gamma_of(profile, thermo, times[k]), n);
    rec.agree = rec.scale_index == rec.gamma_index;
    agree += rec.agree ? 1 : 0;
    out.records.push_back(rec);
  }
  out.agreement_rate =
      times.empty() ? 0.0 : static_cast<double>(agree) / static_cast<double>(times.size());
  return out;
}

}  // namespace geophase
