#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tgraph/sampler.hpp"
#include "tgraph/types.hpp"

namespace tgraph::wire {

inline constexpr char kMagic[] = "TGRP";
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 4 + 2 + 2 + 8 + 4;

enum class MsgType : std::uint16_t {
  kSampleRequest = 1,
  kSampleResponse = 2,
  kFeatureRequest = 3,
  kFeatureResponse = 4,
  kError = 5,
};

// One hop for the targets owned by the destination machine.
struct SampleRequestMsg {
  std::vector<NodeId> targets;
  std::vector<Timestamp> timestamps;  // query (window end) times
  std::vector<Timestamp> t_starts;
  std::uint32_t fanout = 1;
  PolicyKind policy = PolicyKind::kRecent;
  Timestamp delta = 0;
  std::uint64_t seed = 0;  // layer seed
  std::uint32_t origin_machine = 0;
  std::uint32_t origin_rank = 0;

  friend bool operator==(const SampleRequestMsg&, const SampleRequestMsg&) = default;
};

struct SampleResponseMsg {
  std::vector<std::uint32_t> offsets;
  std::vector<NodeId> neighbors;
  std::vector<EdgeId> edge_ids;
  std::vector<Timestamp> timestamps;

  friend bool operator==(const SampleResponseMsg&, const SampleResponseMsg&) = default;
};

struct FeatureRequestMsg {
  std::uint8_t kind = 0;  // FeatureKind
  std::vector<std::uint64_t> ids;
  std::uint32_t origin_machine = 0;
  std::uint32_t origin_rank = 0;

  friend bool operator==(const FeatureRequestMsg&, const FeatureRequestMsg&) = default;
};

struct FeatureResponseMsg {
  std::uint32_t dim = 0;
  std::vector<std::uint8_t> found;
  std::vector<float> values;  // row-major, found.size() x dim

  friend bool operator==(const FeatureResponseMsg&, const FeatureResponseMsg&) = default;
};

struct ErrorMsg {
  std::string message;

  friend bool operator==(const ErrorMsg&, const ErrorMsg&) = default;
};

using Payload = std::variant<SampleRequestMsg, SampleResponseMsg, FeatureRequestMsg,
                             FeatureResponseMsg, ErrorMsg>;

struct Message {
  std::uint64_t request_id = 0;
  Payload payload;

  friend bool operator==(const Message&, const Message&) = default;
};

struct Header {
  MsgType type;
  std::uint64_t request_id;
  std::uint32_t payload_len;
};

// Little-endian: magic, version u16, msg_type u16, request_id u64,
// payload_len u32, payload. Arrays are a u32 count followed by elements.
std::string encode(const Message& msg);
Message decode(std::string_view bytes);
Header decode_header(std::string_view bytes);

MsgType type_of(const Payload& payload);

}  // namespace tgraph::wire
