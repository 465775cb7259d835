#pragma once

#include <cstddef>
#include <vector>

namespace porpi::bench {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;         // sample standard deviation
  double ci_half_width = 0.0;  // Student t interval
};

/// Mean with a two-sided `confidence` interval; zero width for n < 2.
Summary summarize(const std::vector<double>& values, double confidence = 0.95);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Welch test of H1: mean(a) > mean(b).
TTestResult welch_one_sided(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace porpi::bench
