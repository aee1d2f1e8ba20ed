#include "rwcmp/analytics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rwcmp/errors.hpp"

namespace rwcmp::analytics {

namespace {

// Tail bounds tolerate the closed interval; the q/bound family needs the
// open one (the bounds are only derived for 1/2 < alpha < 1).
void check_alpha_closed(double alpha) {
  if (!(alpha >= 0.5) || !(alpha <= 1.0))
    throw AlphaOutOfRange("alpha must lie in [1/2, 1], got " + std::to_string(alpha));
}

void check_alpha_open(double alpha) {
  if (!(alpha > 0.5) || !(alpha < 1.0))
    throw AlphaOutOfRange("alpha must lie in (1/2, 1), got " + std::to_string(alpha));
}

void check_n(std::int64_t n) {
  if (n < 2) throw InvalidInput("need n >= 2, got " + std::to_string(n));
}

void check_m(std::int64_t m) {
  if (m < 1) throw InvalidInput("need m >= 1, got " + std::to_string(m));
}

// ln cosh x without cancellation. The direct form |x| + log1p(e^{-2|x|}) - ln 2
// subtracts two O(1) quantities, which destroys the result when it is later
// multiplied by a huge step count; below the crossover a truncated series
// keeps full relative precision (next omitted term < 1e-17 of the first).
double ln_cosh(double x) {
  const double a = std::fabs(x);
  if (a < 0.1) {
    const double x2 = a * a;
    return x2 * (1.0 / 2 + x2 * (-1.0 / 12 + x2 * (1.0 / 45 - x2 * 17.0 / 2520)));
  }
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Real-valued step-count kernels; the bound maximization scans m = n^lambda
// which overflows integers long before it stops being meaningful.
double tail_term_real(double m, double alpha) {
  const double stay = -std::expm1(-0.5 * std::pow(m, 2.0 * alpha - 1.0));
  return stay * stay;
}

double q_term_real(double n, double m, double alpha) {
  const double spread = 2.0 * std::pow(m, alpha);
  return (n - spread + 1.0) * (n - spread) / (n * n - n);
}

double bound_main_real(double n, double m, double alpha) {
  return tail_term_real(m, alpha) * q_term_real(n, m, alpha) * (1.0 - 1.0 / n);
}

double bound_improved_real(double n, double m, double alpha) {
  const double q = q_term_real(n, m, alpha);
  return (tail_term_real(m, alpha) * q + 0.5 * (1.0 - q)) * (1.0 - 1.0 / n);
}

BoundResult make_result(double n, double m, double alpha, bool improved) {
  BoundResult r;
  r.alpha_star = alpha;
  r.q_term = q_term_real(n, m, alpha);
  r.tail_term = tail_term_real(m, alpha);
  r.value = improved ? bound_improved_real(n, m, alpha) : bound_main_real(n, m, alpha);
  return r;
}

void check_admissible(double n, double m, double alpha) {
  if (!(2.0 * std::pow(m, alpha) < n))
    throw AlphaOutOfRange("inadmissible exponent: 2*m^alpha reaches n");
}

void check_query(const BoundQuery& query) {
  check_n(query.n);
  check_m(query.m);
  check_alpha_open(query.alpha);
  if (query.lambda) {
    const double expected = std::pow(static_cast<double>(query.n), *query.lambda);
    if (std::fabs(static_cast<double>(query.m) - expected) > 1e-9 * expected)
      throw InvalidInput("query's m is not n^lambda");
  }
}

}  // namespace

Rational expected_abs_diff(std::int64_t n) {
  if (n < 1) throw InvalidInput("need n >= 1, got " + std::to_string(n));
  return Rational(n * n - 1, 3 * n);
}

Rational expected_min(std::int64_t n) {
  if (n < 1) throw InvalidInput("need n >= 1, got " + std::to_string(n));
  return Rational((n + 1) * (2 * n + 1), 6 * n);
}

double closeness_bound(std::int64_t n, std::int64_t t) {
  if (n < 1) throw InvalidInput("need n >= 1, got " + std::to_string(n));
  if (t < 1) throw InvalidInput("need t >= 1, got " + std::to_string(t));
  return 2.0 * static_cast<double>(t) / static_cast<double>(n);
}

double tail_bound_cosh(std::int64_t m, double alpha) {
  check_m(m);
  check_alpha_closed(alpha);
  const auto md = static_cast<double>(m);
  const double exponent = -std::pow(md, 2.0 * alpha - 1.0) +
                          md * ln_cosh(std::pow(md, alpha - 1.0));
  return std::exp(exponent);
}

double tail_bound_simple(std::int64_t m, double alpha) {
  check_m(m);
  check_alpha_closed(alpha);
  return std::exp(-0.5 * std::pow(static_cast<double>(m), 2.0 * alpha - 1.0));
}

double q_term(std::int64_t n, std::int64_t m, double alpha) {
  check_n(n);
  check_m(m);
  check_alpha_open(alpha);
  check_admissible(static_cast<double>(n), static_cast<double>(m), alpha);
  return q_term_real(static_cast<double>(n), static_cast<double>(m), alpha);
}

BoundResult lower_bound_main(const BoundQuery& query) {
  check_query(query);
  const auto n = static_cast<double>(query.n);
  const auto m = static_cast<double>(query.m);
  check_admissible(n, m, query.alpha);
  return make_result(n, m, query.alpha, /*improved=*/false);
}

BoundResult lower_bound_improved(const BoundQuery& query) {
  check_query(query);
  const auto n = static_cast<double>(query.n);
  const auto m = static_cast<double>(query.m);
  check_admissible(n, m, query.alpha);
  return make_result(n, m, query.alpha, /*improved=*/true);
}

BoundResult maximize_bound(std::int64_t n, double lambda) {
  if (n < 4) throw InvalidInput("maximization needs n >= 4");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidInput("need lambda > 0, got " + std::to_string(lambda));

  const auto nd = static_cast<double>(n);
  const double m = std::pow(nd, lambda);
  // Admissibility: alpha > 1/2, alpha < 1, and 2*m^alpha < n, i.e.
  // alpha < ln(n/2) / (lambda * ln n). The open interval is shrunk a hair
  // at both ends so the optimizer never touches a boundary point.
  const double hi_cap = std::log(nd / 2.0) / (lambda * std::log(nd));
  const double lo = 0.5 + 1e-6;
  const double hi = std::min(1.0, hi_cap) - 1e-6;
  if (!(hi > lo))
    throw EmptyAlphaRange("no admissible exponent for n=" + std::to_string(n) +
                          ", lambda=" + std::to_string(lambda));

  // Coarse grid to localize the maximum of the plain bound, then a golden
  // section refinement inside the bracketing cells.
  constexpr int kGrid = 512;
  int best = 0;
  double best_val = -1.0;
  auto at = [&](int i) { return lo + (hi - lo) * i / (kGrid - 1); };
  for (int i = 0; i < kGrid; ++i) {
    const double v = bound_main_real(nd, m, at(i));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = at(best > 0 ? best - 1 : 0);
  double b = at(best < kGrid - 1 ? best + 1 : kGrid - 1);
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_gr * (b - a);
  double d = a + inv_gr * (b - a);
  double fc = bound_main_real(nd, m, c);
  double fd = bound_main_real(nd, m, d);
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_gr * (b - a);
      fc = bound_main_real(nd, m, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_gr * (b - a);
      fd = bound_main_real(nd, m, d);
    }
  }
  const double alpha_star = 0.5 * (a + b);
  // Report the improved bound at the plain bound's argmax; this pairing is
  // what the reference tables tabulate.
  return make_result(nd, m, alpha_star, /*improved=*/true);
}

std::vector<TableRow> bound_table(double lambda) {
  std::vector<TableRow> rows;
  for (std::int64_t n = 1000; n <= 1000000000; n *= 10) {
    TableRow row;
    row.lambda = lambda;
    row.n = n;
    row.bound = maximize_bound(n, lambda);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rwcmp::analytics
