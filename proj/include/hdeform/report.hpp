#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace hdeform {

struct VerificationReport {
  std::string check;
  bool pass = false;
  /// Sorted, truncated unless full residuals were requested.
  std::vector<std::string> residuals;
  std::int64_t elapsed_ms = 0;
  /// Free-form findings (for example which golden variant matched).
  std::vector<std::string> notes;
  std::size_t residual_total = 0;
};

/// Wall-clock helper for filling elapsed_ms.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace hdeform
