#pragma once

#include <cstdint>
#include <optional>

#include "rwcmp/rng.hpp"
#include "rwcmp/walks.hpp"

// Two-party comparison by published walk endpoints. Alice holds a, Bob
// holds b, both in [1, n]. Each party starts a ±1 random walk at its value;
// endpoints are compared in place of the values, so the verdict "a < b" is
// right with the probability the analytics module bounds, and nobody learns
// more than an endpoint m steps of noise away from a value.
//
// Variants:
//   Asymmetric — Bob publishes B; Alice decides A < B and may share.
//   Symmetric  — both publish; both decide.
//   NoWalk     — Alice skips her walk and compares a itself against B
//                (sharper verdict, and her value never leaves her side).
//
// Phases: Init -> WalkDone -> AwaitingPeer -> Decided -> Shared. Operations
// called out of order throw ProtocolOrder.

namespace rwcmp::protocol {

enum class Variant : std::uint8_t { Asymmetric = 0, Symmetric = 1, NoWalk = 2 };
enum class Role : std::uint8_t { Alice = 0, Bob = 1 };
enum class Phase { Init, WalkDone, AwaitingPeer, Decided, Shared };

struct ProtocolConfig {
  std::int64_t n = 8000;
  std::int64_t alice_steps = 160000;
  std::int64_t bob_steps = 160000;
  Variant variant = Variant::Asymmetric;

  // n >= 2, step counts >= 0 (zero is legal everywhere), NoWalk pins
  // alice_steps to 0. Throws InvalidInput.
  void validate() const;
  std::int64_t steps_for(Role role) const {
    return role == Role::Alice ? alice_steps : bob_steps;
  }
};

struct PartyInput {
  Role role = Role::Alice;
  std::int64_t value = 1;  // the private value, in [1, n]
};

// What a decision was based on; endpoint_a is absent when Alice compared
// her raw value (NoWalk) — it never exists in that variant.
struct DecisionBasis {
  std::optional<std::int64_t> endpoint_a;
  std::int64_t endpoint_b = 0;
};

struct Verdict {
  bool a_less_than_b = false;
  DecisionBasis basis;
};

class SessionState {
 public:
  Phase phase() const { return phase_; }
  Role role() const { return role_; }
  const ProtocolConfig& config() const { return config_; }

  // This party's comparison value: the walk endpoint, or the raw value for
  // NoWalk Alice. Local knowledge — the wire layer controls what leaves.
  std::int64_t own_endpoint() const { return own_value_; }

  // WalkDone -> AwaitingPeer. Returns the endpoint to publish, or nullopt
  // for parties that keep theirs private (Alice in Asymmetric/NoWalk).
  std::optional<std::int64_t> publish();

  // AwaitingPeer -> Decided, given the peer's published endpoint. Only
  // parties that receive an endpoint decide: Alice always, Bob in
  // Symmetric. Throws ProtocolOrder elsewhere.
  Verdict decide(std::int64_t peer_endpoint);

  // Decided -> Shared. Re-announces the verdict for the peer's benefit;
  // allowed in every variant, idempotent within a session.
  Verdict share_verdict();

  const std::optional<Verdict>& verdict() const { return verdict_; }

 private:
  friend SessionState prepare(const PartyInput&, const ProtocolConfig&,
                              RngStream&, walks::Engine);

  Role role_ = Role::Alice;
  ProtocolConfig config_;
  Phase phase_ = Phase::Init;
  std::int64_t own_value_ = 0;
  bool walked_ = false;  // own_value_ came from a walk (affects the basis)
  std::optional<Verdict> verdict_;
};

// Runs this party's walk (if any) and returns a state in WalkDone.
// Validates the config and that value is in [1, n].
SessionState prepare(const PartyInput& input, const ProtocolConfig& config,
                     RngStream& rng,
                     walks::Engine engine = walks::Engine::Stepwise);

// Role-checked conveniences over prepare: the input's role must match, or
// InvalidInput is thrown.
SessionState alice_prepare(const PartyInput& input,
                           const ProtocolConfig& config, RngStream& rng,
                           walks::Engine engine = walks::Engine::Stepwise);
SessionState bob_prepare(const PartyInput& input, const ProtocolConfig& config,
                         RngStream& rng,
                         walks::Engine engine = walks::Engine::Stepwise);

}  // namespace rwcmp::protocol
