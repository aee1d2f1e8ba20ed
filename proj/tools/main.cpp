#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rwcmp/analytics.hpp"
#include "rwcmp/baselines.hpp"
#include "rwcmp/errors.hpp"
#include "rwcmp/protocol.hpp"
#include "rwcmp/simlab.hpp"
#include "rwcmp/transport.hpp"

namespace {

using namespace rwcmp;

protocol::Variant parse_variant(const std::string& name) {
  if (name == "asym") return protocol::Variant::Asymmetric;
  if (name == "sym") return protocol::Variant::Symmetric;
  if (name == "nowalk") return protocol::Variant::NoWalk;
  throw InvalidInput("unknown variant: " + name);
}

void print_bound_row(const analytics::BoundResult& r) {
  std::printf("value,alpha_star,q_term,tail_term\n");
  std::printf("%.6f,%.6f,%.6f,%.6f\n", r.value, r.alpha_star, r.q_term, r.tail_term);
}

void print_verdict_line(const char* prefix, const std::optional<protocol::Verdict>& v) {
  if (!v) {
    std::printf("%sverdict=unknown\n", prefix);
  } else {
    std::printf("%sverdict=%s\n", prefix, v->a_less_than_b ? "a<b" : "a>=b");
  }
}

struct CompareArgs {
  std::string role = "alice";
  std::int64_t value = 1;
  std::int64_t n = 8000;
  std::int64_t steps = 160000;
  std::string variant = "asym";
  std::uint64_t seed = 1;
  bool share = false;
  bool verbose = false;
};

protocol::ProtocolConfig make_config(const CompareArgs& args, protocol::Role role) {
  protocol::ProtocolConfig config;
  config.n = args.n;
  config.variant = parse_variant(args.variant);
  config.alice_steps = 0;
  config.bob_steps = 0;
  const std::int64_t own =
      (config.variant == protocol::Variant::NoWalk && role == protocol::Role::Alice)
          ? 0
          : args.steps;
  if (role == protocol::Role::Alice)
    config.alice_steps = own;
  else
    config.bob_steps = own;
  return config;
}

int run_compare(const CompareArgs& args, const std::string& listen,
                const std::string& connect) {
  const auto role = args.role == "alice" ? protocol::Role::Alice : protocol::Role::Bob;
  const auto config = make_config(args, role);
  protocol::PartyInput input{role, args.value};
  RngStream rng(args.seed, role == protocol::Role::Alice ? 0 : 1);
  transport::SessionOptions options;
  options.share_verdict = args.share;

  std::optional<protocol::Verdict> verdict;
  if (!listen.empty()) {
    transport::TcpListener listener(static_cast<std::uint16_t>(std::stoi(listen)));
    auto channel = listener.accept_one();
    verdict = transport::run_session(input, config, channel, rng, options);
  } else {
    const auto colon = connect.rfind(':');
    if (colon == std::string::npos)
      throw InvalidInput("--connect expects HOST:PORT");
    auto channel = transport::TcpChannel::connect(
        connect.substr(0, colon),
        static_cast<std::uint16_t>(std::stoi(connect.substr(colon + 1))));
    verdict = transport::run_session(input, config, channel, rng, options);
  }

  print_verdict_line("", verdict);
  if (args.verbose && verdict) {
    std::printf("B=%lld\n", static_cast<long long>(verdict->basis.endpoint_b));
    if (config.variant == protocol::Variant::Symmetric && verdict->basis.endpoint_a)
      std::printf("A=%lld\n", static_cast<long long>(*verdict->basis.endpoint_a));
  }
  return 0;
}

int run_compare_local(std::int64_t a, std::int64_t b, std::int64_t n,
                      std::int64_t steps, const std::string& variant_name,
                      std::uint64_t seed, bool share) {
  const auto variant = parse_variant(variant_name);
  protocol::ProtocolConfig config;
  config.n = n;
  config.variant = variant;
  config.alice_steps = variant == protocol::Variant::NoWalk ? 0 : steps;
  config.bob_steps = steps;

  auto [alice_end, bob_end] = transport::LoopbackChannel::make_pair();
  transport::SessionOptions options;
  options.share_verdict = share;

  std::optional<protocol::Verdict> alice_verdict, bob_verdict;
  std::exception_ptr bob_error;
  std::thread bob_thread([&] {
    try {
      RngStream rng(seed, 1);
      bob_verdict = transport::run_session({protocol::Role::Bob, b}, config,
                                           *bob_end, rng, options);
    } catch (...) {
      bob_error = std::current_exception();
    }
  });
  RngStream rng(seed, 0);
  alice_verdict = transport::run_session({protocol::Role::Alice, a}, config,
                                         *alice_end, rng, options);
  bob_thread.join();
  if (bob_error) std::rethrow_exception(bob_error);

  print_verdict_line("alice: ", alice_verdict);
  print_verdict_line("bob: ", bob_verdict);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-walk private comparison toolkit"};
  app.require_subcommand(1);

  // ---- bound ----
  auto* bound = app.add_subcommand("bound", "evaluate or maximize the correctness bounds");
  std::int64_t b_n = 1000;
  double b_lambda = 0.0, b_alpha = 0.0;
  std::int64_t b_steps = 0;
  std::string b_formula = "improved";
  int b_table = 0;
  bound->add_option("--n", b_n, "value range size");
  auto* b_lambda_opt = bound->add_option("--lambda", b_lambda, "steps = n^lambda");
  auto* b_steps_opt = bound->add_option("--steps", b_steps, "walk length");
  auto* b_alpha_opt = bound->add_option("--alpha", b_alpha, "tail exponent in (1/2, 1]");
  bound->add_option("--formula", b_formula, "main|improved")
      ->check(CLI::IsMember({"main", "improved"}));
  auto* b_table_opt = bound->add_option("--table", b_table, "print sweep 1 (lambda=4/3) or 2 (5/3)")
                          ->check(CLI::IsMember({1, 2}));

  // ---- compare ----
  auto* compare = app.add_subcommand("compare", "run one side of a comparison session over TCP");
  CompareArgs c_args;
  std::string c_listen, c_connect;
  compare->add_option("--role", c_args.role, "alice|bob")
      ->required()
      ->check(CLI::IsMember({"alice", "bob"}));
  compare->add_option("--value", c_args.value, "private value in [1, n]")->required();
  compare->add_option("--n", c_args.n, "value range size");
  compare->add_option("--steps", c_args.steps, "own walk length");
  compare->add_option("--variant", c_args.variant, "asym|sym|nowalk")
      ->check(CLI::IsMember({"asym", "sym", "nowalk"}));
  compare->add_option("--seed", c_args.seed, "walk randomness seed");
  compare->add_flag("--share", c_args.share, "send the verdict to the peer");
  compare->add_flag("--verbose", c_args.verbose, "print public endpoints");
  auto* c_listen_opt = compare->add_option("--listen", c_listen, "listen on this port");
  auto* c_connect_opt = compare->add_option("--connect", c_connect, "connect to HOST:PORT");
  c_listen_opt->excludes(c_connect_opt);

  // ---- compare-local ----
  auto* local = app.add_subcommand("compare-local", "run both sides in-process");
  std::int64_t l_a = 1, l_b = 1, l_n = 8000, l_steps = 160000;
  std::string l_variant = "asym";
  std::uint64_t l_seed = 1;
  bool l_share = false;
  local->add_option("--a", l_a, "Alice's value")->required();
  local->add_option("--b", l_b, "Bob's value")->required();
  local->add_option("--n", l_n, "value range size");
  local->add_option("--steps", l_steps, "walk length for each walking party");
  local->add_option("--variant", l_variant, "asym|sym|nowalk")
      ->check(CLI::IsMember({"asym", "sym", "nowalk"}));
  local->add_option("--seed", l_seed, "walk randomness seed");
  local->add_flag("--share", l_share, "Alice shares the verdict");

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo correctness estimate");
  std::int64_t s_n = 1000, s_steps = 0, s_trials = 100000;
  double s_lambda = 0.0;
  std::uint64_t s_seed = 1;
  std::string s_variant = "both", s_csv;
  bool s_stepwise = false;
  simulate->add_option("--n", s_n, "value range size");
  auto* s_steps_opt = simulate->add_option("--steps", s_steps, "walk length");
  auto* s_lambda_opt = simulate->add_option("--lambda", s_lambda, "steps = round(n^lambda)");
  simulate->add_option("--trials", s_trials, "Monte Carlo trials");
  simulate->add_option("--seed", s_seed, "simulation seed");
  simulate->add_option("--variant", s_variant, "both|nowalk")
      ->check(CLI::IsMember({"both", "nowalk"}));
  simulate->add_flag("--stepwise", s_stepwise,
                     "draw walks step by step instead of sampling endpoints");
  simulate->add_option("--csv", s_csv, "also write a per-trial CSV to this path");
  s_steps_opt->excludes(s_lambda_opt);

  // ---- tables ----
  auto* tables = app.add_subcommand("tables", "reproduce the bound sweeps with Monte Carlo columns");
  std::int64_t t_trials = 20000;
  std::uint64_t t_seed = 1;
  tables->add_option("--trials", t_trials, "Monte Carlo trials per cell");
  tables->add_option("--seed", t_seed, "simulation seed");

  // ---- baseline ----
  auto* baseline = app.add_subcommand("baseline", "guessing and bucket-scheme reference numbers");
  std::int64_t g_steps = 0, g_apriori = 0;
  std::vector<std::int64_t> g_sub;
  auto* g_guess_opt = baseline->add_option("--guess-prob", g_steps,
                                           "P(endpoint = value) after this many steps");
  auto* g_apriori_opt = baseline->add_option("--apriori", g_apriori,
                                             "a-priori guess probability on [1, n]");
  auto* g_sub_opt = baseline->add_option("--subinterval", g_sub,
                                         "bucket comparison for A B N")
                        ->expected(3);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) {
      if (*b_table_opt) {
        std::printf("n,bound,alpha_star\n");
        for (const auto& row : analytics::bound_table(b_table == 1 ? 4.0 / 3.0 : 5.0 / 3.0))
          std::printf("%lld,%.6f,%.6f\n", static_cast<long long>(row.n),
                      row.bound.value, row.bound.alpha_star);
        return 0;
      }
      std::int64_t m = b_steps;
      double lambda = b_lambda;
      if (*b_steps_opt && !*b_lambda_opt)
        lambda = std::log(static_cast<double>(m)) / std::log(static_cast<double>(b_n));
      if (*b_lambda_opt && !*b_steps_opt)
        m = static_cast<std::int64_t>(
            std::llround(std::pow(static_cast<double>(b_n), b_lambda)));
      if (!*b_steps_opt && !*b_lambda_opt)
        throw InvalidInput("bound needs --steps or --lambda (or --table)");
      if (*b_alpha_opt) {
        analytics::BoundQuery query{b_n, m, b_alpha, std::nullopt};
        print_bound_row(b_formula == "main" ? analytics::lower_bound_main(query)
                                            : analytics::lower_bound_improved(query));
      } else {
        print_bound_row(analytics::maximize_bound(b_n, lambda));
      }
      return 0;
    }

    if (compare->parsed()) {
      if (c_listen.empty() == c_connect.empty())
        throw InvalidInput("compare needs exactly one of --listen / --connect");
      return run_compare(c_args, c_listen, c_connect);
    }

    if (local->parsed())
      return run_compare_local(l_a, l_b, l_n, l_steps, l_variant, l_seed, l_share);

    if (simulate->parsed()) {
      simlab::SimPlan plan;
      plan.n = s_n;
      if (*s_lambda_opt)
        s_steps = static_cast<std::int64_t>(
            std::llround(std::pow(static_cast<double>(s_n), s_lambda)));
      else if (!*s_steps_opt)
        throw InvalidInput("simulate needs --steps or --lambda");
      plan.variant = s_variant == "both" ? simlab::SimVariant::BothWalk
                                         : simlab::SimVariant::NoWalk;
      plan.alice_steps = plan.variant == simlab::SimVariant::NoWalk ? 0 : s_steps;
      plan.bob_steps = s_steps;
      plan.trials = s_trials;
      plan.seed = s_seed;
      const auto engine =
          s_stepwise ? walks::Engine::Stepwise : walks::Engine::FastEndpoint;
      if (!s_csv.empty()) {
        std::ofstream file(s_csv, std::ios::binary);
        if (!file) throw InvalidInput("cannot open " + s_csv + " for writing");
        simlab::write_trials_csv(file, plan, engine);
      }
      const auto summary = simlab::run_simulation(plan, engine);
      std::printf(
          "n=%lld steps=%lld trials_total=%lld trials_A_lt_B=%lld estimate=%.6f "
          "std_error=%.6f equality_count=%lld guess_hits=%lld\n",
          static_cast<long long>(plan.n), static_cast<long long>(s_steps),
          static_cast<long long>(summary.trials_total),
          static_cast<long long>(summary.trials_A_lt_B), summary.estimate,
          summary.std_error, static_cast<long long>(summary.equality_count),
          static_cast<long long>(summary.guess_hits));
      return 0;
    }

    if (tables->parsed()) {
      std::fputs(simlab::reproduce_tables(t_trials, t_seed).c_str(), stdout);
      return 0;
    }

    if (baseline->parsed()) {
      if (*g_guess_opt) {
        const auto gp = baselines::guess_probability(g_steps);
        std::printf("steps,exact,stirling\n%lld,%.8g,%.8g\n",
                    static_cast<long long>(g_steps), gp.exact, gp.stirling);
      } else if (*g_apriori_opt) {
        std::printf("n,probability\n%lld,%.8g\n", static_cast<long long>(g_apriori),
                    baselines::apriori_guess_probability(g_apriori));
      } else if (*g_sub_opt) {
        const auto out = baselines::subinterval_protocol(g_sub[0], g_sub[1], g_sub[2]);
        std::printf("a,b,n,a_le_b,buckets\n%lld,%lld,%lld,%s,%zu\n",
                    static_cast<long long>(g_sub[0]), static_cast<long long>(g_sub[1]),
                    static_cast<long long>(g_sub[2]), out.a_le_b ? "true" : "false",
                    out.scheme.bucket_count());
      } else {
        throw InvalidInput("baseline needs one of --guess-prob / --apriori / --subinterval");
      }
      return 0;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 0;
}
