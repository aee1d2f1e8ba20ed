#include "rwcmp/simlab.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "rwcmp/analytics.hpp"
#include "rwcmp/errors.hpp"
#include "rwcmp/rng.hpp"

namespace rwcmp::simlab {

namespace {

// Per-trial stream tags; tag 3 is reserved.
constexpr std::uint64_t kTagStarts = 0;
constexpr std::uint64_t kTagAliceWalk = 1;
constexpr std::uint64_t kTagBobWalk = 2;

RngStream trial_stream(std::uint64_t seed, std::int64_t trial, std::uint64_t tag) {
  return RngStream(seed, static_cast<std::uint64_t>(trial) * 4 + tag);
}

struct TrialDraw {
  std::int64_t a, b;    // hidden values
  std::int64_t ca, cb;  // published/compared values (endpoints)
};

TrialDraw draw_trial(const SimPlan& plan, std::int64_t trial, walks::Engine engine) {
  TrialDraw d{};
  auto starts = trial_stream(plan.seed, trial, kTagStarts);
  d.a = starts.uniform_int(1, plan.n);
  d.b = starts.uniform_int(1, plan.n);
  if (plan.variant == SimVariant::BothWalk) {
    auto aw = trial_stream(plan.seed, trial, kTagAliceWalk);
    d.ca = walks::walk(walks::WalkSpec(d.a, plan.alice_steps), aw, engine).endpoint;
  } else {
    d.ca = d.a;
  }
  auto bw = trial_stream(plan.seed, trial, kTagBobWalk);
  d.cb = walks::walk(walks::WalkSpec(d.b, plan.bob_steps), bw, engine).endpoint;
  return d;
}

void finish_summary(SimSummary& s) {
  if (s.trials_A_lt_B == 0)
    throw NoConditioningEvents("no trial produced the conditioning event");
  s.estimate = static_cast<double>(s.trials_correct_given_A_lt_B) / static_cast<double>(s.trials_A_lt_B);
  s.std_error = std::sqrt(s.estimate * (1.0 - s.estimate) /
                          static_cast<double>(s.trials_A_lt_B));
}

}  // namespace

void SimPlan::validate() const {
  if (n < 2) throw InvalidInput("plan needs n >= 2");
  if (trials < 1) throw InvalidInput("plan needs trials >= 1");
  if (alice_steps < 0 || bob_steps < 0)
    throw InvalidInput("plan step counts must be non-negative");
  if (variant == SimVariant::NoWalk && alice_steps != 0)
    throw InvalidInput("no-walk plan requires alice_steps = 0");
}

SimSummary run_simulation(const SimPlan& plan, walks::Engine engine) {
  plan.validate();
  SimSummary s;
  s.trials_total = plan.trials;
  for (std::int64_t t = 0; t < plan.trials; ++t) {
    const TrialDraw d = draw_trial(plan, t, engine);
    if (d.ca == d.cb) ++s.equality_count;
    if (d.cb == d.b) ++s.guess_hits;
    if (d.ca < d.cb) {
      ++s.trials_A_lt_B;
      if (d.a < d.b) ++s.trials_correct_given_A_lt_B;
    }
  }
  finish_summary(s);
  return s;
}

PairedSummary compare_nowalk(std::int64_t n, std::int64_t bob_steps,
                             std::int64_t trials, std::uint64_t seed,
                             walks::Engine engine) {
  if (trials < 10000)
    throw InvalidInput("paired comparison needs trials >= 10000");
  SimPlan both{n, bob_steps, bob_steps, trials, seed, SimVariant::BothWalk};
  SimPlan nowalk{n, 0, bob_steps, trials, seed, SimVariant::NoWalk};
  // Same seed, same stream layout: both arms see identical (a, b) pairs and
  // identical Bob walks, differing only in Alice's side.
  return {run_simulation(both, engine), run_simulation(nowalk, engine)};
}

double guess_rate(std::int64_t n, std::int64_t steps, std::int64_t trials,
                  std::uint64_t seed, walks::Engine engine) {
  if (steps % 2 != 0)
    throw OddSteps("an odd-length walk never returns to its start");
  if (trials < 10000) throw InvalidInput("rate estimate needs trials >= 10000");
  SimPlan plan{n, 0, steps, trials, seed, SimVariant::NoWalk};
  plan.validate();
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const TrialDraw d = draw_trial(plan, t, engine);
    if (d.cb == d.b) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::string reproduce_tables(std::int64_t mc_trials, std::uint64_t seed) {
  if (mc_trials < 1) throw InvalidInput("need mc_trials >= 1");
  std::ostringstream out;
  out << "lambda,n,bound,alpha_star,mc_estimate,mc_std_error\n";
  char line[160];
  int row = 0;
  for (const double lambda : {4.0 / 3.0, 5.0 / 3.0}) {
    const char* label = lambda < 1.5 ? "4/3" : "5/3";
    for (const auto& entry : analytics::bound_table(lambda)) {
      std::snprintf(line, sizeof(line), "%s,%lld,%.6f,%.6f", label,
                    static_cast<long long>(entry.n), entry.bound.value,
                    entry.bound.alpha_star);
      out << line;
      if (entry.n <= 10000) {
        const auto steps = static_cast<std::int64_t>(
            std::llround(std::pow(static_cast<double>(entry.n), lambda)));
        SimPlan plan{entry.n, steps, steps, mc_trials,
                     seed + static_cast<std::uint64_t>(row) * 0x9e3779b9ULL,
                     SimVariant::BothWalk};
        const auto sim = run_simulation(plan);
        std::snprintf(line, sizeof(line), ",%.6f,%.6f", sim.estimate, sim.std_error);
        out << line;
      } else {
        out << ",,";
      }
      out << '\n';
      ++row;
    }
  }
  return out.str();
}

void write_trials_csv(std::ostream& out, const SimPlan& plan, walks::Engine engine) {
  plan.validate();
  SimSummary s;
  s.trials_total = plan.trials;
  out << "trial,a,b,A,B,a_lt_b,A_lt_B\n";
  for (std::int64_t t = 0; t < plan.trials; ++t) {
    const TrialDraw d = draw_trial(plan, t, engine);
    if (d.ca == d.cb) ++s.equality_count;
    if (d.cb == d.b) ++s.guess_hits;
    if (d.ca < d.cb) {
      ++s.trials_A_lt_B;
      if (d.a < d.b) ++s.trials_correct_given_A_lt_B;
    }
    out << t << ',' << d.a << ',' << d.b << ',' << d.ca << ',' << d.cb << ','
        << (d.a < d.b ? 1 : 0) << ',' << (d.ca < d.cb ? 1 : 0) << '\n';
  }
  char tail[192];
  if (s.trials_A_lt_B > 0) {
    const double p = static_cast<double>(s.trials_correct_given_A_lt_B) / static_cast<double>(s.trials_A_lt_B);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(s.trials_A_lt_B));
    std::snprintf(tail, sizeof(tail),
                  "# trials_total=%lld trials_A_lt_B=%lld correct=%lld estimate=%.6f "
                  "std_error=%.6f equality_count=%lld guess_hits=%lld\n",
                  static_cast<long long>(s.trials_total),
                  static_cast<long long>(s.trials_A_lt_B),
                  static_cast<long long>(s.trials_correct_given_A_lt_B), p, se,
                  static_cast<long long>(s.equality_count),
                  static_cast<long long>(s.guess_hits));
  } else {
    std::snprintf(tail, sizeof(tail),
                  "# trials_total=%lld trials_A_lt_B=0 correct=0 estimate=na "
                  "std_error=na equality_count=%lld guess_hits=%lld\n",
                  static_cast<long long>(s.trials_total),
                  static_cast<long long>(s.equality_count),
                  static_cast<long long>(s.guess_hits));
  }
  out << tail;
}

}  // namespace rwcmp::simlab
