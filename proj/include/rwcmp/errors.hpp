#pragma once

#include <stdexcept>
#include <string>

// Exception taxonomy for the whole library. Every throw site uses one of
// these so callers (CLI, tests) can distinguish bad input from protocol
// misuse from wire-level garbage.

namespace rwcmp {

// A caller-supplied parameter is outside an operation's domain.
struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A protocol operation was invoked from the wrong phase.
struct ProtocolOrder : std::runtime_error {
  explicit ProtocolOrder(const std::string& what) : std::runtime_error(what) {}
};

// Tail/bound evaluation asked for an exponent outside (1/2, 1].
struct AlphaOutOfRange : std::runtime_error {
  explicit AlphaOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

// Bound maximization over an empty admissible exponent interval.
struct EmptyAlphaRange : std::runtime_error {
  explicit EmptyAlphaRange(const std::string& what) : std::runtime_error(what) {}
};

// A wire frame violates the framing rules (length, field ranges, truncation).
struct MalformedFrame : std::runtime_error {
  explicit MalformedFrame(const std::string& what) : std::runtime_error(what) {}
};

// A wire frame carries an unrecognized message kind byte.
struct UnknownKind : std::runtime_error {
  explicit UnknownKind(const std::string& what) : std::runtime_error(what) {}
};

// Peer speaks a different protocol version.
struct VersionMismatch : std::runtime_error {
  explicit VersionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Peers disagree on session parameters (n, variant).
struct ConfigMismatch : std::runtime_error {
  explicit ConfigMismatch(const std::string& what) : std::runtime_error(what) {}
};

// The byte channel closed mid-frame or before a mandatory message.
struct ChannelClosed : std::runtime_error {
  explicit ChannelClosed(const std::string& what) : std::runtime_error(what) {}
};

// A conditional Monte Carlo estimate has an empty conditioning event.
struct NoConditioningEvents : std::runtime_error {
  explicit NoConditioningEvents(const std::string& what) : std::runtime_error(what) {}
};

// An even step count is required (return-to-start probabilities).
struct OddSteps : std::runtime_error {
  explicit OddSteps(const std::string& what) : std::runtime_error(what) {}
};

// A value lies outside a distribution's support.
struct ValueNotInSupport : std::runtime_error {
  explicit ValueNotInSupport(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rwcmp
