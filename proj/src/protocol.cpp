#include "rwcmp/protocol.hpp"

#include <string>

#include "rwcmp/errors.hpp"

namespace rwcmp::protocol {

void ProtocolConfig::validate() const {
  if (n < 2) throw InvalidInput("config needs n >= 2, got " + std::to_string(n));
  if (alice_steps < 0 || bob_steps < 0)
    throw InvalidInput("config step counts must be non-negative");
  if (variant == Variant::NoWalk && alice_steps != 0)
    throw InvalidInput("no-walk variant requires alice_steps = 0");
}

SessionState prepare(const PartyInput& input, const ProtocolConfig& config,
                     RngStream& rng, walks::Engine engine) {
  config.validate();
  if (input.value < 1 || input.value > config.n)
    throw InvalidInput("party value " + std::to_string(input.value) +
                       " outside [1, " + std::to_string(config.n) + "]");

  SessionState state;
  state.role_ = input.role;
  state.config_ = config;

  const bool walks_at_all =
      !(input.role == Role::Alice && config.variant == Variant::NoWalk);
  if (walks_at_all) {
    const walks::WalkSpec spec(input.value, config.steps_for(input.role));
    state.own_value_ = walks::walk(spec, rng, engine).endpoint;
    state.walked_ = true;
  } else {
    state.own_value_ = input.value;
    state.walked_ = false;
  }
  state.phase_ = Phase::WalkDone;
  return state;
}

SessionState alice_prepare(const PartyInput& input,
                           const ProtocolConfig& config, RngStream& rng,
                           walks::Engine engine) {
  if (input.role != Role::Alice)
    throw InvalidInput("alice_prepare() given a non-Alice input");
  return prepare(input, config, rng, engine);
}

SessionState bob_prepare(const PartyInput& input, const ProtocolConfig& config,
                         RngStream& rng, walks::Engine engine) {
  if (input.role != Role::Bob)
    throw InvalidInput("bob_prepare() given a non-Bob input");
  return prepare(input, config, rng, engine);
}

std::optional<std::int64_t> SessionState::publish() {
  if (phase_ != Phase::WalkDone)
    throw ProtocolOrder("publish() requires phase WalkDone");
  phase_ = Phase::AwaitingPeer;
  const bool endpoint_is_public =
      role_ == Role::Bob || config_.variant == Variant::Symmetric;
  if (endpoint_is_public) return own_value_;
  return std::nullopt;
}

Verdict SessionState::decide(std::int64_t peer_endpoint) {
  if (phase_ != Phase::AwaitingPeer)
    throw ProtocolOrder("decide() requires phase AwaitingPeer");
  const bool receives_endpoint =
      role_ == Role::Alice || config_.variant == Variant::Symmetric;
  if (!receives_endpoint)
    throw ProtocolOrder("this role never receives a peer endpoint");

  Verdict v;
  if (role_ == Role::Alice) {
    v.a_less_than_b = own_value_ < peer_endpoint;
    v.basis.endpoint_a = walked_ ? std::optional(own_value_) : std::nullopt;
    v.basis.endpoint_b = peer_endpoint;
  } else {
    // Symmetric Bob: the peer endpoint is Alice's side of the comparison.
    v.a_less_than_b = peer_endpoint < own_value_;
    v.basis.endpoint_a = peer_endpoint;
    v.basis.endpoint_b = own_value_;
  }
  verdict_ = v;
  phase_ = Phase::Decided;
  return v;
}

Verdict SessionState::share_verdict() {
  if (phase_ != Phase::Decided && phase_ != Phase::Shared)
    throw ProtocolOrder("share_verdict() requires a decided session");
  phase_ = Phase::Shared;
  return *verdict_;
}

}  // namespace rwcmp::protocol
