#pragma once

#include <functional>
#include <future>
#include <memory>
#include <string>

#include "tgraph/cluster.hpp"

namespace tgraph {

// Passes a request frame to the addressed worker actor; resolves to its reply frame.
using DeliverFn = std::function<std::future<std::string>(WorkerAddress, std::string)>;

// Loopback TCP transport: every worker gets a listening socket on 127.0.0.1
// and requests travel as length-prefixed wire frames. Each destination keeps
// one client connection, so requests from one sender arrive in send order.
std::unique_ptr<Transport> make_tcp_transport(const ClusterSpec& spec, DeliverFn deliver);

}  // namespace tgraph
