#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

// Small statistics helpers shared by the test suites: exact binomial pmfs,
// chi-square goodness-of-fit with cell pooling, and a Wilson-Hilferty
// critical value so we don't need a chi-square table.

namespace testutil {

// Chi-square critical value via the Wilson-Hilferty cube approximation.
// z = 2.326347874 gives the 99th percentile (significance 0.01).
inline double chi_square_critical(double df, double z = 2.326347874) {
  const double a = 2.0 / (9.0 * df);
  const double c = 1.0 - a + z * std::sqrt(a);
  return df * c * c * c;
}

// P(Binomial(m, 1/2) = k) through lgamma; exact to double precision for the
// sizes used here.
inline double binomial_half_pmf(std::int64_t m, std::int64_t k) {
  if (k < 0 || k > m) return 0.0;
  const double lg = std::lgamma(static_cast<double>(m) + 1.0) -
                    std::lgamma(static_cast<double>(k) + 1.0) -
                    std::lgamma(static_cast<double>(m - k) + 1.0) -
                    static_cast<double>(m) * std::log(2.0);
  return std::exp(lg);
}

// Endpoint law of an m-step ±1 walk from `start`: P(endpoint = start+2k-m).
inline std::map<std::int64_t, double> walk_endpoint_pmf(std::int64_t start,
                                                        std::int64_t m) {
  std::map<std::int64_t, double> pmf;
  for (std::int64_t k = 0; k <= m; ++k)
    pmf[start + 2 * k - m] = binomial_half_pmf(m, k);
  return pmf;
}

struct GofResult {
  double statistic = 0.0;
  double critical = 0.0;
  int cells = 0;  // after pooling
  bool pass() const { return statistic <= critical; }
};

// Pearson chi-square of observed counts against expected probabilities.
// Cells with expected count < 5 are pooled into their neighbor (values are
// processed in ascending order, pooling left to right, remainder merged
// into the last kept cell), the textbook validity rule.
inline GofResult chi_square_gof(const std::map<std::int64_t, std::int64_t>& observed,
                                const std::map<std::int64_t, double>& expected_pmf,
                                std::int64_t samples, double z = 2.326347874) {
  std::vector<double> exp_counts;
  std::vector<double> obs_counts;
  double exp_run = 0.0, obs_run = 0.0;
  for (const auto& [value, p] : expected_pmf) {
    exp_run += p * static_cast<double>(samples);
    const auto it = observed.find(value);
    obs_run += it == observed.end() ? 0.0 : static_cast<double>(it->second);
    if (exp_run >= 5.0) {
      exp_counts.push_back(exp_run);
      obs_counts.push_back(obs_run);
      exp_run = obs_run = 0.0;
    }
  }
  if (exp_run > 0.0 || obs_run > 0.0) {
    if (exp_counts.empty()) {
      exp_counts.push_back(exp_run);
      obs_counts.push_back(obs_run);
    } else {
      exp_counts.back() += exp_run;
      obs_counts.back() += obs_run;
    }
  }

  GofResult result;
  result.cells = static_cast<int>(exp_counts.size());
  for (std::size_t i = 0; i < exp_counts.size(); ++i) {
    const double d = obs_counts[i] - exp_counts[i];
    result.statistic += d * d / exp_counts[i];
  }
  result.critical = chi_square_critical(
      std::max(1.0, static_cast<double>(result.cells - 1)), z);
  return result;
}

// Standard error of a frequency estimate p over n samples.
inline double freq_stderr(double p, std::int64_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace testutil
