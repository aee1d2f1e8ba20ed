#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rwcmp/protocol.hpp"

// Wire format and session driver. Frames are a 4-byte big-endian length
// (payload bytes, at most 64) followed by the payload; payload byte 0 is the
// message kind:
//
//   0x01 Hello    version u8, variant u8, n u64 BE, own step count u64 BE
//   0x02 Endpoint walk endpoint, i64 BE two's complement
//   0x03 Verdict  u8, 1 if a < b
//
// A session exchanges Hellos (version/config check), then endpoints
// according to the variant, then an optional courtesy Verdict. A party that
// has sent everything half-closes its direction; a clean EOF at a frame
// boundary is how Bob learns Alice chose not to share.

namespace rwcmp::transport {

inline constexpr std::uint8_t kProtocolVersion = 1;
inline constexpr std::uint32_t kMaxPayload = 64;

struct Hello {
  std::uint8_t version = kProtocolVersion;
  protocol::Variant variant = protocol::Variant::Asymmetric;
  std::uint64_t n = 0;
  std::uint64_t steps = 0;  // sender's own walk length
};

struct EndpointMsg {
  std::int64_t value = 0;
};

struct VerdictMsg {
  bool a_less_than_b = false;
};

using Message = std::variant<Hello, EndpointMsg, VerdictMsg>;

// Full frame (length prefix included).
std::vector<std::uint8_t> encode(const Message& msg);

// Parses a full frame. Throws MalformedFrame on any framing or field-range
// violation, UnknownKind on an unrecognized kind byte.
Message decode(std::span<const std::uint8_t> frame);

// Blocking, reliable, stream-oriented duplex byte channel.
class ByteChannel {
 public:
  virtual ~ByteChannel() = default;
  virtual void send(std::span<const std::uint8_t> bytes) = 0;
  // Blocks for at least one byte; returns 0 only on EOF.
  virtual std::size_t recv_some(std::span<std::uint8_t> out) = 0;
  // Half-close: flushes this direction and lets the peer see EOF.
  virtual void close_send() = 0;
};

void send_message(ByteChannel& channel, const Message& msg);

// Next frame, or nullopt on EOF at a frame boundary. EOF mid-frame throws
// ChannelClosed.
std::optional<Message> recv_message(ByteChannel& channel);

// In-process channel pair backed by two byte queues; both ends are
// thread-safe and block like sockets do.
class LoopbackChannel final : public ByteChannel {
 public:
  static std::pair<std::unique_ptr<LoopbackChannel>, std::unique_ptr<LoopbackChannel>>
  make_pair();

  void send(std::span<const std::uint8_t> bytes) override;
  std::size_t recv_some(std::span<std::uint8_t> out) override;
  void close_send() override;

 private:
  struct Shared;
  LoopbackChannel(std::shared_ptr<Shared> shared, int side);
  std::shared_ptr<Shared> shared_;
  int side_;
};

// TCP channel over a connected socket. Move-only; owns the descriptor.
class TcpChannel final : public ByteChannel {
 public:
  explicit TcpChannel(int fd);
  ~TcpChannel() override;
  TcpChannel(TcpChannel&& other) noexcept;
  TcpChannel& operator=(TcpChannel&& other) noexcept;
  TcpChannel(const TcpChannel&) = delete;
  TcpChannel& operator=(const TcpChannel&) = delete;

  // Retries refused connections until timeout_ms elapses, so the connector
  // may start before the listener is ready.
  static TcpChannel connect(const std::string& host, std::uint16_t port,
                            int timeout_ms = 5000);

  void send(std::span<const std::uint8_t> bytes) override;
  std::size_t recv_some(std::span<std::uint8_t> out) override;
  void close_send() override;

 private:
  int fd_ = -1;
};

class TcpListener {
 public:
  // Binds host:port; port 0 picks an ephemeral port (see port()).
  explicit TcpListener(std::uint16_t port, const std::string& host = "127.0.0.1");
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  TcpChannel accept_one();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

struct SessionOptions {
  bool share_verdict = false;
  walks::Engine engine = walks::Engine::Stepwise;
};

// Drives one party through a complete session on an established channel.
// Returns the verdict this party is entitled to: its own decision, the
// peer's shared one, or nullopt (Bob, asymmetric, verdict withheld).
// Throws VersionMismatch/ConfigMismatch when the Hellos disagree,
// ProtocolOrder on out-of-sequence messages, ChannelClosed on truncation.
std::optional<protocol::Verdict> run_session(const protocol::PartyInput& input,
                                             const protocol::ProtocolConfig& config,
                                             ByteChannel& channel, RngStream& rng,
                                             const SessionOptions& options = {});

}  // namespace rwcmp::transport
