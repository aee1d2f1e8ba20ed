#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

// Closed-form analysis of the comparison protocol: Chernoff-style tail
// bounds for the walk displacement, the two correctness lower bounds built
// from them, maximization of the bound over the tail exponent, and exact
// first moments of uniform value pairs.
//
// Model recap. Values a, b are independent uniform on [1, n]; each party
// walks m = n^lambda steps. For an exponent alpha in (1/2, 1], the
// displacement tail satisfies
//
//   P(S_m >= m^alpha) <= exp(-m^(2*alpha-1) + m * ln cosh(m^(alpha-1)))
//                     <= exp(-m^(2*alpha-1) / 2),
//
// and with t(m, alpha) = (1 - exp(-m^(2*alpha-1)/2))^2 (both walks stay
// within m^alpha) and q(n, m, alpha) = P(|a-b| > 2*m^alpha) the bounds are
//
//   plain:    t * q * (1 - 1/n)
//   improved: (t * q + (1 - q)/2) * (1 - 1/n)
//
// (when the values are closer than the walk spread, the endpoint order is
// still right half the time). Admissible exponents additionally require
// 2*m^alpha < n, i.e. alpha < ln(n/2) / (lambda * ln n).

namespace rwcmp::analytics {

using Rational = boost::rational<std::int64_t>;

// E|a - b| = (n^2 - 1) / (3n), exact.
Rational expected_abs_diff(std::int64_t n);

// E min(a, b) = (n + 1)(2n + 1) / (6n), exact.
Rational expected_min(std::int64_t n);

// P(|a - b| < t) < 2t/n for t >= 1 (anti-concentration of the gap).
double closeness_bound(std::int64_t n, std::int64_t t);

// Tail bound with the exact ln-cosh exponent (the sharper of the two).
// Accepts alpha in [1/2, 1].
double tail_bound_cosh(std::int64_t m, double alpha);

// Tail bound exp(-m^(2*alpha-1)/2). Accepts alpha in [1/2, 1].
double tail_bound_simple(std::int64_t m, double alpha);

// q(n, m, alpha) = (n - 2m^a + 1)(n - 2m^a) / (n^2 - n). Requires the
// admissible range 2*m^alpha < n; throws AlphaOutOfRange outside it.
double q_term(std::int64_t n, std::int64_t m, double alpha);

struct BoundQuery {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double alpha = 0.0;
  // Optional consistency tag: when set, m must equal n^lambda to within
  // 1e-9 relative.
  std::optional<double> lambda;
};

struct BoundResult {
  double value = 0.0;
  double alpha_star = 0.0;  // exponent the value was evaluated at
  double q_term = 0.0;
  double tail_term = 0.0;   // (1 - exp(-m^(2a-1)/2))^2
};

// Plain lower bound t*q*(1 - 1/n) at a caller-chosen exponent.
BoundResult lower_bound_main(const BoundQuery& query);

// Improved lower bound (t*q + (1-q)/2)*(1 - 1/n) at a caller-chosen exponent.
BoundResult lower_bound_improved(const BoundQuery& query);

// Maximizes the plain bound over admissible alpha for m = n^lambda and
// reports the improved bound at that argmax (the convention behind the
// reference tables this module reproduces). Requires n >= 4; throws
// EmptyAlphaRange when no admissible exponent exists (lambda too large
// for n). alpha_star is located to well inside 1e-4 absolute.
BoundResult maximize_bound(std::int64_t n, double lambda);

struct TableRow {
  double lambda = 0.0;
  std::int64_t n = 0;
  BoundResult bound;
};

// The two reference sweeps: lambda = 4/3 and 5/3 over n = 10^3 .. 10^9.
std::vector<TableRow> bound_table(double lambda);

}  // namespace rwcmp::analytics
