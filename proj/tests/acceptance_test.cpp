// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <algorithm>
#include <iostream>
#include <thread>

#include "geophase/harness/verify.hpp"

int main() {
  geophase::harness::VerifyOptions opt;
  opt.threads = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1u, 4u));
  const auto summary = geophase::harness::verify(opt);
  std::cout << geophase::harness::verify_text(summary);
  return summary.all_passed ? 0 : 1;
}
