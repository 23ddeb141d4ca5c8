#include "tgraph/tcp_transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>
#include <vector>

#include "tgraph/wire.hpp"

namespace tgraph {

namespace {

[[noreturn]] void sys_fail(const std::string& what) {
  throw IoError(what + ": " + std::strerror(errno));
}

bool write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

bool read_exact(int fd, char* out, std::size_t len) {
  while (len > 0) {
    const ssize_t n = ::recv(fd, out, len, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    out += n;
    len -= static_cast<std::size_t>(n);
  }
  return true;
}

// Reads one frame; empty optional-like result (false) on a closed socket.
bool read_frame(int fd, std::string& frame) {
  frame.assign(wire::kHeaderBytes, '\0');
  if (!read_exact(fd, frame.data(), wire::kHeaderBytes)) return false;
  const wire::Header h = wire::decode_header(frame);
  frame.resize(wire::kHeaderBytes + h.payload_len);
  return read_exact(fd, frame.data() + wire::kHeaderBytes, h.payload_len);
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

class Listener {
 public:
  Listener(WorkerAddress worker, DeliverFn deliver) : worker_(worker), deliver_(std::move(deliver)) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) sys_fail("socket");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) sys_fail("bind");
    if (::listen(fd_, 64) < 0) sys_fail("listen");
    socklen_t len = sizeof(addr);
    if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) < 0) sys_fail("getsockname");
    port_ = ntohs(addr.sin_port);
    acceptor_ = std::thread([this] { accept_loop(); });
  }

  ~Listener() {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    acceptor_.join();
    {
      std::lock_guard lock(mu_);
      for (int c : conns_) ::shutdown(c, SHUT_RDWR);
    }
    for (auto& t : handlers_) t.join();
    for (int c : conns_) ::close(c);
  }

  [[nodiscard]] std::uint16_t port() const { return port_; }

 private:
  void accept_loop() {
    while (true) {
      const int c = ::accept(fd_, nullptr, nullptr);
      if (c < 0) {
        if (errno == EINTR) continue;
        return;
      }
      set_nodelay(c);
      std::lock_guard lock(mu_);
      conns_.push_back(c);
      handlers_.emplace_back([this, c] { serve(c); });
    }
  }

  void serve(int c) {
    std::string frame;
    try {
      while (read_frame(c, frame)) {
        const std::string reply = deliver_(worker_, std::move(frame)).get();
        if (!write_all(c, reply)) return;
      }
    } catch (const std::exception&) {
      // Malformed frame: drop the connection; the client sees it closed.
    }
  }

  WorkerAddress worker_;
  DeliverFn deliver_;
  int fd_ = -1;
  std::uint16_t port_ = 0;
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<int> conns_;
  std::vector<std::thread> handlers_;
};

struct ClientConn {
  std::mutex mu;
  int fd = -1;
  std::uint16_t port = 0;
};

class TcpTransport final : public Transport {
 public:
  TcpTransport(const ClusterSpec& spec, DeliverFn deliver) : spec_(spec) {
    for (std::uint32_t m = 0; m < spec.machines; ++m) {
      for (std::uint32_t r = 0; r < spec.workers_per_machine; ++r) {
        listeners_.push_back(std::make_unique<Listener>(WorkerAddress{m, r}, deliver));
        auto conn = std::make_unique<ClientConn>();
        conn->port = listeners_.back()->port();
        conns_.push_back(std::move(conn));
      }
    }
  }

  ~TcpTransport() override {
    for (auto& c : conns_) {
      if (c->fd >= 0) ::close(c->fd);
    }
    listeners_.clear();
  }

  std::future<std::string> send(WorkerAddress dest, std::string frame) override {
    ClientConn* conn = conns_.at(spec_.index_of(dest)).get();
    return std::async(std::launch::async, [conn, frame = std::move(frame)] {
      std::lock_guard lock(conn->mu);
      if (conn->fd < 0) connect(*conn);
      std::string reply;
      if (!write_all(conn->fd, frame) || !read_frame(conn->fd, reply)) {
        ::close(conn->fd);
        conn->fd = -1;
        throw IoError("connection to worker lost");
      }
      return reply;
    });
  }

 private:
  static void connect(ClientConn& conn) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) sys_fail("socket");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(conn.port);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
      ::close(fd);
      sys_fail("connect");
    }
    set_nodelay(fd);
    conn.fd = fd;
  }

  ClusterSpec spec_;
  std::vector<std::unique_ptr<Listener>> listeners_;
  std::vector<std::unique_ptr<ClientConn>> conns_;
};

}  // namespace

std::unique_ptr<Transport> make_tcp_transport(const ClusterSpec& spec, DeliverFn deliver) {
  return std::make_unique<TcpTransport>(spec, std::move(deliver));
}

}  // namespace tgraph
