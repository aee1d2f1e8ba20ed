#include "rwcmp/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

#include "rwcmp/errors.hpp"

namespace rwcmp::transport {

namespace {

constexpr std::uint8_t kKindHello = 0x01;
constexpr std::uint8_t kKindEndpoint = 0x02;
constexpr std::uint8_t kKindVerdict = 0x03;

constexpr std::size_t kHelloPayload = 19;    // kind + version + variant + n + steps
constexpr std::size_t kEndpointPayload = 9;  // kind + i64
constexpr std::size_t kVerdictPayload = 2;   // kind + flag

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode(const Message& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(4 + kHelloPayload);
  if (const auto* hello = std::get_if<Hello>(&msg)) {
    put_u32(out, kHelloPayload);
    out.push_back(kKindHello);
    out.push_back(hello->version);
    out.push_back(static_cast<std::uint8_t>(hello->variant));
    put_u64(out, hello->n);
    put_u64(out, hello->steps);
  } else if (const auto* ep = std::get_if<EndpointMsg>(&msg)) {
    put_u32(out, kEndpointPayload);
    out.push_back(kKindEndpoint);
    put_u64(out, static_cast<std::uint64_t>(ep->value));
  } else {
    const auto& verdict = std::get<VerdictMsg>(msg);
    put_u32(out, kVerdictPayload);
    out.push_back(kKindVerdict);
    out.push_back(verdict.a_less_than_b ? 1 : 0);
  }
  return out;
}

Message decode(std::span<const std::uint8_t> frame) {
  if (frame.size() < 5) throw MalformedFrame("frame shorter than header + kind");
  const std::uint32_t len = (std::uint32_t{frame[0]} << 24) |
                            (std::uint32_t{frame[1]} << 16) |
                            (std::uint32_t{frame[2]} << 8) | frame[3];
  if (len == 0 || len > kMaxPayload)
    throw MalformedFrame("payload length " + std::to_string(len) + " outside [1, 64]");
  if (frame.size() != 4u + len)
    throw MalformedFrame("frame size disagrees with its length field");

  const std::uint8_t* payload = frame.data() + 4;
  switch (payload[0]) {
    case kKindHello: {
      if (len != kHelloPayload) throw MalformedFrame("hello payload must be 19 bytes");
      Hello hello;
      hello.version = payload[1];
      if (hello.version != kProtocolVersion)
        throw VersionMismatch("hello carries version " +
                              std::to_string(hello.version) + ", expected " +
                              std::to_string(kProtocolVersion));
      if (payload[2] > 2) throw MalformedFrame("unknown variant byte");
      hello.variant = static_cast<protocol::Variant>(payload[2]);
      hello.n = get_u64(payload + 3);
      hello.steps = get_u64(payload + 11);
      return hello;
    }
    case kKindEndpoint: {
      if (len != kEndpointPayload)
        throw MalformedFrame("endpoint payload must be 9 bytes");
      return EndpointMsg{static_cast<std::int64_t>(get_u64(payload + 1))};
    }
    case kKindVerdict: {
      if (len != kVerdictPayload)
        throw MalformedFrame("verdict payload must be 2 bytes");
      if (payload[1] > 1) throw MalformedFrame("verdict flag must be 0 or 1");
      return VerdictMsg{payload[1] == 1};
    }
    default:
      throw UnknownKind("unknown message kind byte " + std::to_string(payload[0]));
  }
}

void send_message(ByteChannel& channel, const Message& msg) {
  const auto bytes = encode(msg);
  channel.send(bytes);
}

namespace {

// Fills `out` completely. Returns false when EOF arrives before the first
// byte; throws ChannelClosed when EOF interrupts a partial read.
bool recv_exact(ByteChannel& channel, std::span<std::uint8_t> out) {
  std::size_t have = 0;
  while (have < out.size()) {
    const std::size_t got = channel.recv_some(out.subspan(have));
    if (got == 0) {
      if (have == 0) return false;
      throw ChannelClosed("channel closed mid-frame");
    }
    have += got;
  }
  return true;
}

}  // namespace

std::optional<Message> recv_message(ByteChannel& channel) {
  std::uint8_t header[4];
  if (!recv_exact(channel, header)) return std::nullopt;
  const std::uint32_t len = (std::uint32_t{header[0]} << 24) |
                            (std::uint32_t{header[1]} << 16) |
                            (std::uint32_t{header[2]} << 8) | header[3];
  if (len == 0 || len > kMaxPayload)
    throw MalformedFrame("payload length " + std::to_string(len) + " outside [1, 64]");
  std::vector<std::uint8_t> frame(4 + len);
  std::memcpy(frame.data(), header, 4);
  if (!recv_exact(channel, std::span(frame).subspan(4)))
    throw ChannelClosed("channel closed mid-frame");
  return decode(frame);
}

// ---------------------------------------------------------------------------
// LoopbackChannel

struct LoopbackChannel::Shared {
  std::mutex mutex;
  std::condition_variable cv;
  std::deque<std::uint8_t> stream[2];  // stream[i]: bytes flowing from side i
  bool closed[2] = {false, false};
};

LoopbackChannel::LoopbackChannel(std::shared_ptr<Shared> shared, int side)
    : shared_(std::move(shared)), side_(side) {}

std::pair<std::unique_ptr<LoopbackChannel>, std::unique_ptr<LoopbackChannel>>
LoopbackChannel::make_pair() {
  auto shared = std::make_shared<Shared>();
  return {std::unique_ptr<LoopbackChannel>(new LoopbackChannel(shared, 0)),
          std::unique_ptr<LoopbackChannel>(new LoopbackChannel(shared, 1))};
}

void LoopbackChannel::send(std::span<const std::uint8_t> bytes) {
  std::lock_guard lock(shared_->mutex);
  if (shared_->closed[side_]) throw ChannelClosed("send after close_send");
  shared_->stream[side_].insert(shared_->stream[side_].end(), bytes.begin(),
                                bytes.end());
  shared_->cv.notify_all();
}

std::size_t LoopbackChannel::recv_some(std::span<std::uint8_t> out) {
  if (out.empty()) return 0;
  const int peer = 1 - side_;
  std::unique_lock lock(shared_->mutex);
  shared_->cv.wait(lock, [&] {
    return !shared_->stream[peer].empty() || shared_->closed[peer];
  });
  auto& queue = shared_->stream[peer];
  const std::size_t count = std::min(out.size(), queue.size());
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = queue.front();
    queue.pop_front();
  }
  return count;  // 0 only when the peer closed with nothing pending
}

void LoopbackChannel::close_send() {
  std::lock_guard lock(shared_->mutex);
  shared_->closed[side_] = true;
  shared_->cv.notify_all();
}

// ---------------------------------------------------------------------------
// TCP

TcpChannel::TcpChannel(int fd) : fd_(fd) {
  if (fd_ < 0) throw ChannelClosed("invalid socket descriptor");
}

TcpChannel::~TcpChannel() {
  if (fd_ >= 0) ::close(fd_);
}

TcpChannel::TcpChannel(TcpChannel&& other) noexcept : fd_(other.fd_) {
  other.fd_ = -1;
}

TcpChannel& TcpChannel::operator=(TcpChannel&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

TcpChannel TcpChannel::connect(const std::string& host, std::uint16_t port,
                               int timeout_ms) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
    throw InvalidInput("not an IPv4 address: " + host);

  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw ChannelClosed("socket(): " + std::string(std::strerror(errno)));
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return TcpChannel(fd);
    }
    const int err = errno;
    ::close(fd);
    if ((err != ECONNREFUSED && err != ECONNRESET && err != ETIMEDOUT) ||
        std::chrono::steady_clock::now() >= deadline)
      throw ChannelClosed("connect(): " + std::string(std::strerror(err)));
    std::this_thread::sleep_for(std::chrono::milliseconds(25));
  }
}

void TcpChannel::send(std::span<const std::uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t k = ::send(fd_, bytes.data() + sent, bytes.size() - sent,
                             MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      throw ChannelClosed("send(): " + std::string(std::strerror(errno)));
    }
    sent += static_cast<std::size_t>(k);
  }
}

std::size_t TcpChannel::recv_some(std::span<std::uint8_t> out) {
  for (;;) {
    const ssize_t k = ::recv(fd_, out.data(), out.size(), 0);
    if (k >= 0) return static_cast<std::size_t>(k);
    if (errno == EINTR) continue;
    throw ChannelClosed("recv(): " + std::string(std::strerror(errno)));
  }
}

void TcpChannel::close_send() { ::shutdown(fd_, SHUT_WR); }

TcpListener::TcpListener(std::uint16_t port, const std::string& host) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw ChannelClosed("socket(): " + std::string(std::strerror(errno)));
  const int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw InvalidInput("not an IPv4 address: " + host);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(fd_, 1) != 0) {
    const int err = errno;
    ::close(fd_);
    throw ChannelClosed("bind/listen: " + std::string(std::strerror(err)));
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

TcpChannel TcpListener::accept_one() {
  for (;;) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return TcpChannel(fd);
    }
    if (errno == EINTR) continue;
    throw ChannelClosed("accept(): " + std::string(std::strerror(errno)));
  }
}

// ---------------------------------------------------------------------------
// Session driver

namespace {

void drain_to_eof(ByteChannel& channel) {
  std::uint8_t sink[256];
  while (channel.recv_some(sink) != 0) {
  }
}

Message expect_message(ByteChannel& channel, const char* what) {
  auto msg = recv_message(channel);
  if (!msg)
    throw ChannelClosed(std::string("peer closed while awaiting ") + what);
  return *std::move(msg);
}

}  // namespace

std::optional<protocol::Verdict> run_session(const protocol::PartyInput& input,
                                             const protocol::ProtocolConfig& config,
                                             ByteChannel& channel, RngStream& rng,
                                             const SessionOptions& options) {
  config.validate();

  Hello mine;
  mine.version = kProtocolVersion;
  mine.variant = config.variant;
  mine.n = static_cast<std::uint64_t>(config.n);
  mine.steps = static_cast<std::uint64_t>(config.steps_for(input.role));
  send_message(channel, mine);

  auto state = protocol::prepare(input, config, rng, options.engine);
  const auto published = state.publish();
  if (published) send_message(channel, EndpointMsg{*published});

  const Message first = expect_message(channel, "hello");
  const auto* peer_hello = std::get_if<Hello>(&first);
  if (!peer_hello) throw ProtocolOrder("peer's first message was not a hello");
  if (peer_hello->version != kProtocolVersion)
    throw VersionMismatch("peer speaks version " +
                          std::to_string(peer_hello->version) + ", expected " +
                          std::to_string(kProtocolVersion));
  if (peer_hello->variant != config.variant ||
      peer_hello->n != static_cast<std::uint64_t>(config.n))
    throw ConfigMismatch("peers disagree on session parameters");

  const bool receives_endpoint = input.role == protocol::Role::Alice ||
                                 config.variant == protocol::Variant::Symmetric;
  if (receives_endpoint) {
    const Message next = expect_message(channel, "peer endpoint");
    const auto* ep = std::get_if<EndpointMsg>(&next);
    if (!ep) throw ProtocolOrder("expected the peer's endpoint message");
    const auto verdict = state.decide(ep->value);
    if (options.share_verdict)
      send_message(channel, VerdictMsg{state.share_verdict().a_less_than_b});
    channel.close_send();
    drain_to_eof(channel);
    return verdict;
  }

  // Bob in a one-sided variant: everything is sent; either the peer shares
  // the verdict or closes without it.
  channel.close_send();
  auto last = recv_message(channel);
  if (!last) return std::nullopt;
  const auto* shared = std::get_if<VerdictMsg>(&*last);
  if (!shared) throw ProtocolOrder("expected a shared verdict or a close");
  drain_to_eof(channel);
  protocol::Verdict verdict;
  verdict.a_less_than_b = shared->a_less_than_b;
  verdict.basis.endpoint_a = std::nullopt;
  verdict.basis.endpoint_b = state.own_endpoint();
  return verdict;
}

}  // namespace rwcmp::transport
