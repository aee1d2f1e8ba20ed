#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "rwcmp/walks.hpp"

// Monte Carlo laboratory: empirical correctness of the endpoint comparison,
// the endpoint-equals-value guessing rate, and a CSV reproduction of the
// analytic bound tables with simulated companions.
//
// Determinism: every trial draws from its own derived streams
// (stream ids 4t, 4t+1, 4t+2 for starts, Alice's walk, Bob's walk), so a
// (seed, plan) pair fixes every number and the no-walk arm of a comparison
// reuses exactly the same value and Bob-walk draws as the both-walk arm.

namespace rwcmp::simlab {

enum class SimVariant { BothWalk, NoWalk };

struct SimPlan {
  std::int64_t n = 1000;
  std::int64_t alice_steps = 10000;
  std::int64_t bob_steps = 10000;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  SimVariant variant = SimVariant::BothWalk;

  void validate() const;  // n >= 2, trials >= 1, steps >= 0, NoWalk => alice 0
};

struct SimSummary {
  std::int64_t trials_total = 0;
  std::int64_t trials_A_lt_B = 0;     // trials where the published order said a < b
  std::int64_t trials_correct_given_A_lt_B = 0;    // ... and a < b actually held
  std::int64_t equality_count = 0;  // published values equal (no verdict)
  std::int64_t guess_hits = 0;      // Bob's endpoint landed exactly on b
  double estimate = 0.0;            // trials_correct_given_A_lt_B / trials_A_lt_B
  double std_error = 0.0;           // binomial, sqrt(p(1-p)/trials_A_lt_B)
};

// Estimates P(a < b | endpoint order says so). Throws NoConditioningEvents
// when no trial produced the conditioning event.
SimSummary run_simulation(const SimPlan& plan,
                          walks::Engine engine = walks::Engine::FastEndpoint);

struct PairedSummary {
  SimSummary both_walk;
  SimSummary no_walk;
};

// The same trials run through both variants, sharing value and Bob-walk
// draws, so the comparison is paired rather than independent. Needs
// trials >= 10^4 for the paired estimates to mean anything.
PairedSummary compare_nowalk(std::int64_t n, std::int64_t bob_steps,
                             std::int64_t trials, std::uint64_t seed,
                             walks::Engine engine = walks::Engine::FastEndpoint);

// P(B == b): how often Bob's published endpoint is exactly his hidden
// value, i.e. the peeker's best-guess success rate. Even steps only,
// trials >= 10^4.
double guess_rate(std::int64_t n, std::int64_t steps, std::int64_t trials,
                  std::uint64_t seed,
                  walks::Engine engine = walks::Engine::FastEndpoint);

// CSV with one row per (lambda, n) cell of the two reference sweeps:
// lambda,n,bound,alpha_star,mc_estimate,mc_std_error. Monte Carlo columns
// are filled for n <= 10^4 (steps = round(n^lambda)) and left empty above.
std::string reproduce_tables(std::int64_t mc_trials = 20000,
                             std::uint64_t seed = 1);

// Per-trial trace: header trial,a,b,A,B,a_lt_b,A_lt_B, one row per trial,
// and a trailing '#' summary line. Byte-identical for equal (plan, engine).
void write_trials_csv(std::ostream& out, const SimPlan& plan,
                      walks::Engine engine = walks::Engine::FastEndpoint);

}  // namespace rwcmp::simlab
