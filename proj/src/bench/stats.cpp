#include "porpi/bench/stats.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace porpi::bench {

namespace {

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double variance_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

Summary summarize(const std::vector<double>& values, double confidence) {
  Summary s;
  s.n = values.size();
  if (s.n == 0) return s;
  s.mean = mean_of(values);
  s.stddev = std::sqrt(variance_of(values, s.mean));
  if (s.n >= 2 && s.stddev > 0.0) {
    boost::math::students_t dist(static_cast<double>(s.n - 1));
    const double q = boost::math::quantile(boost::math::complement(dist, (1.0 - confidence) / 2.0));
    s.ci_half_width = q * s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

TTestResult welch_one_sided(const std::vector<double>& a, const std::vector<double>& b) {
  TTestResult r;
  if (a.size() < 2 || b.size() < 2) return r;
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double va = variance_of(a, ma) / static_cast<double>(a.size());
  const double vb = variance_of(b, mb) / static_cast<double>(b.size());
  const double se2 = va + vb;
  if (se2 <= 0.0) {
    r.p_value = ma > mb ? 0.0 : 1.0;
    r.t = ma > mb ? INFINITY : (ma < mb ? -INFINITY : 0.0);
    return r;
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.df = se2 * se2 /
         (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
  boost::math::students_t dist(r.df);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.t));
  return r;
}

}  // namespace porpi::bench
