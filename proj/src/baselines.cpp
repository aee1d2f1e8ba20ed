#include "rwcmp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "rwcmp/errors.hpp"

namespace rwcmp::baselines {

GuessProbability guess_probability(std::int64_t steps) {
  if (steps < 2) throw InvalidInput("guess probability needs steps >= 2");
  if (steps % 2 != 0)
    throw OddSteps("guess probability needs an even step count, got " +
                   std::to_string(steps));
  // C(m, m/2)/2^m as the telescoping product prod (2j-1)/(2j): each factor
  // is in (0,1), so no intermediate overflow or underflow for any feasible m.
  double exact = 1.0;
  for (std::int64_t j = 1; j <= steps / 2; ++j)
    exact *= static_cast<double>(2 * j - 1) / static_cast<double>(2 * j);
  const double stirling =
      std::sqrt(2.0 / (std::numbers::pi * static_cast<double>(steps)));
  return {exact, stirling};
}

double apriori_guess_probability(std::int64_t n) {
  if (n < 1) throw InvalidInput("need n >= 1, got " + std::to_string(n));
  // Sum the harmonic series smallest terms first to keep full precision.
  double h = 0.0;
  for (std::int64_t k = n; k >= 1; --k) h += 1.0 / static_cast<double>(k);
  return h / static_cast<double>(n);
}

Pmf Pmf::uniform(std::int64_t n) {
  if (n < 1) throw InvalidInput("uniform pmf needs n >= 1");
  std::vector<std::int64_t> support(static_cast<std::size_t>(n));
  std::iota(support.begin(), support.end(), std::int64_t{1});
  std::vector<double> probabilities(support.size(), 1.0 / static_cast<double>(n));
  return Pmf(std::move(support), std::move(probabilities));
}

Pmf::Pmf(std::vector<std::int64_t> support, std::vector<double> probabilities)
    : support_(std::move(support)), probabilities_(std::move(probabilities)) {
  if (support_.empty()) throw InvalidInput("pmf needs a non-empty support");
  if (support_.size() != probabilities_.size())
    throw InvalidInput("pmf needs one probability per support point");
  if (support_.front() < 1)
    throw InvalidInput("pmf support must consist of positive integers");
  if (std::adjacent_find(support_.begin(), support_.end(),
                         std::greater_equal<>()) != support_.end())
    throw InvalidInput("pmf support must be strictly increasing");

  // Kahan summation keeps the sum-to-one check meaningful even for very
  // large supports, where a naive sum's own error could exceed the 1e-12
  // tolerance.
  double sum = 0.0, carry = 0.0;
  cdf_.resize(probabilities_.size());
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    const double p = probabilities_[i];
    if (!(p >= 0.0)) throw InvalidInput("pmf probabilities must be non-negative");
    const double y = p - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    cdf_[i] = sum;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidInput("pmf probabilities must sum to 1 (off by " +
                       std::to_string(sum - 1.0) + ")");
}

double Pmf::cdf(std::int64_t v) const {
  const auto it = std::lower_bound(support_.begin(), support_.end(), v);
  if (it == support_.end() || *it != v)
    throw ValueNotInSupport("value " + std::to_string(v) +
                            " not in the pmf support");
  return cdf_[static_cast<std::size_t>(it - support_.begin())];
}

std::int64_t inverse_transform(const Pmf& pmf, std::int64_t n_target,
                               std::int64_t value) {
  if (n_target < 1) throw InvalidInput("need n_target >= 1");
  const double image = static_cast<double>(n_target) * pmf.cdf(value);
  return std::max<std::int64_t>(1, std::llround(image));
}

std::size_t SubintervalScheme::bucket_of(std::int64_t v) const {
  if (v < endpoints.front())
    throw ValueNotInSupport("value " + std::to_string(v) + " below the scheme's range");
  const auto it = std::upper_bound(endpoints.begin(), endpoints.end(), v);
  return static_cast<std::size_t>(it - endpoints.begin()) - 1;
}

SubintervalScheme make_subintervals(std::int64_t a, std::int64_t n) {
  if (n < 1) throw InvalidInput("need n >= 1, got " + std::to_string(n));
  if (a < 1 || a > n)
    throw InvalidInput("pivot " + std::to_string(a) + " outside [1, " +
                       std::to_string(n) + "]");
  // Exact integer ceil(sqrt(n)), immune to double rounding at squares.
  auto width = static_cast<std::int64_t>(
      std::llround(std::sqrt(static_cast<double>(n))));
  while (width > 1 && (width - 1) * (width - 1) >= n) --width;
  while (width * width < n) ++width;
  // Lay bucket edges on the lattice a + k*width so that a is the left edge
  // of its own half-open bucket, then close the range with edge 1.
  std::vector<std::int64_t> edges;
  for (std::int64_t e = a; e > 1; e -= width) edges.push_back(e);
  edges.push_back(1);
  std::reverse(edges.begin(), edges.end());
  for (std::int64_t e = a + width; e <= n; e += width) edges.push_back(e);

  SubintervalScheme scheme;
  scheme.endpoints = std::move(edges);
  scheme.pivot = a;
  return scheme;
}

SubintervalOutcome subinterval_protocol(std::int64_t a, std::int64_t b,
                                        std::int64_t n) {
  if (b < 1 || b > n)
    throw InvalidInput("value " + std::to_string(b) + " outside [1, " +
                       std::to_string(n) + "]");
  SubintervalOutcome out;
  out.scheme = make_subintervals(a, n);
  out.bob_bucket = out.scheme.bucket_of(b);
  // a is its bucket's left edge: a strictly smaller b sits in a strictly
  // earlier bucket, so the bucket order alone decides a <= b exactly.
  out.a_le_b = out.bob_bucket >= out.scheme.pivot_bucket();
  return out;
}

std::vector<std::int64_t> digit_decompose(std::int64_t x, std::int64_t base) {
  if (x < 0) throw InvalidInput("digit decomposition needs x >= 0");
  if (base < 2) throw InvalidInput("digit base must be >= 2");
  std::vector<std::int64_t> digits;
  do {
    digits.push_back(x % base);
    x /= base;
  } while (x > 0);
  return digits;
}

std::int64_t digit_recompose(const std::vector<std::int64_t>& digits,
                             std::int64_t base) {
  if (base < 2) throw InvalidInput("digit base must be >= 2");
  std::int64_t value = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it < 0 || *it >= base)
      throw InvalidInput("digit " + std::to_string(*it) + " outside [0, base)");
    value = value * base + *it;
  }
  return value;
}

std::strong_ordering compare_digits(const std::vector<std::int64_t>& lhs,
                                    const std::vector<std::int64_t>& rhs) {
  // Digits are stored least significant first; ignore high zeros so
  // {1, 0} and {1} denote the same number.
  auto top = [](const std::vector<std::int64_t>& d) {
    std::size_t k = d.size();
    while (k > 0 && d[k - 1] == 0) --k;
    return k;
  };
  const std::size_t lt = top(lhs), rt = top(rhs);
  if (lt != rt) return lt <=> rt;
  for (std::size_t i = lt; i-- > 0;) {
    if (lhs[i] != rhs[i]) return lhs[i] <=> rhs[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace rwcmp::baselines
