#pragma once

#include <compare>
#include <cstdint>
#include <vector>

// Reference points the walk protocol is measured against: how well an
// adversary can guess a hidden value outright, and two non-probabilistic
// comparison schemes (coarse subintervals, digit-by-digit) that trade
// privacy for certainty.

namespace rwcmp::baselines {

struct GuessProbability {
  double exact = 0.0;     // C(m, m/2) / 2^m, the mode of the endpoint law
  double stirling = 0.0;  // sqrt(2 / (pi m)) approximation
};

// Probability of guessing a walker's hidden start from its endpoint after m
// steps: the best guess is the distribution mode, hit with probability
// C(m, m/2)/2^m. Requires even m >= 2 (odd m has no return to parity).
GuessProbability guess_probability(std::int64_t steps);

// Probability of guessing a uniform value on [1, n] given only the partial
// order learned from comparisons: (1/n) * H_n with H_n the n-th harmonic
// number.
double apriori_guess_probability(std::int64_t n);

// A discrete distribution: a strictly increasing integer support with one
// probability per point, summing to 1 (within 1e-12).
class Pmf {
 public:
  static Pmf uniform(std::int64_t n);  // equal mass on 1..n
  Pmf(std::vector<std::int64_t> support, std::vector<double> probabilities);

  const std::vector<std::int64_t>& support() const { return support_; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  // F(v) = P(X <= v); v outside the support throws ValueNotInSupport.
  double cdf(std::int64_t v) const;

 private:
  std::vector<std::int64_t> support_;
  std::vector<double> probabilities_;
  std::vector<double> cdf_;
};

// Monotone reduction of an arbitrarily distributed value to a uniform-like
// scale: v -> max(1, round(n_target * F(v))). Order-preserving, so two
// parties can map their values independently and compare the images.
std::int64_t inverse_transform(const Pmf& pmf, std::int64_t n_target,
                               std::int64_t value);

// Partition of [1, n] into ~sqrt(n) buckets with a's own value inserted as
// a breakpoint: buckets are half-open [e_i, e_{i+1}), so everything in a's
// bucket is >= a and "b's bucket is at least a's bucket" decides a <= b
// exactly for every pair.
struct SubintervalScheme {
  std::vector<std::int64_t> endpoints;  // ascending bucket left edges, e_0 = 1
  std::int64_t pivot = 0;               // a itself; always one of the endpoints

  std::size_t bucket_of(std::int64_t v) const;
  std::size_t pivot_bucket() const { return bucket_of(pivot); }
  std::size_t bucket_count() const { return endpoints.size(); }
};

SubintervalScheme make_subintervals(std::int64_t a, std::int64_t n);

struct SubintervalOutcome {
  bool a_le_b = false;
  std::size_t bob_bucket = 0;
  SubintervalScheme scheme;
};

// Runs the bucket exchange for a concrete pair; exact for all 1 <= a,b <= n.
SubintervalOutcome subinterval_protocol(std::int64_t a, std::int64_t b,
                                        std::int64_t n);

// Base-n digits of x, least significant first; x = sum digits[i] * base^i.
std::vector<std::int64_t> digit_decompose(std::int64_t x, std::int64_t base);

std::int64_t digit_recompose(const std::vector<std::int64_t>& digits,
                             std::int64_t base);

// Lexicographic comparison from the most significant digit down — the order
// of the recomposed values.
std::strong_ordering compare_digits(const std::vector<std::int64_t>& lhs,
                                    const std::vector<std::int64_t>& rhs);

}  // namespace rwcmp::baselines
