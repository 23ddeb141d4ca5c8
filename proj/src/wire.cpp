#include "tgraph/wire.hpp"

#include <limits>

#include "tgraph/binary_io.hpp"

namespace tgraph::wire {

namespace {

template <typename T>
void put_array(io::ByteWriter& w, const std::vector<T>& values) {
  if (values.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError("array too large for wire encoding");
  }
  w.put(static_cast<std::uint32_t>(values.size()));
  for (const T& v : values) {
    if constexpr (std::is_same_v<T, float>) {
      w.put_f32(v);
    } else {
      w.put(v);
    }
  }
}

template <typename T>
std::vector<T> get_array(io::ByteReader& r) {
  const auto n = r.get<std::uint32_t>();
  r.need(static_cast<std::size_t>(n) * sizeof(T));
  std::vector<T> out(n);
  for (T& v : out) {
    if constexpr (std::is_same_v<T, float>) {
      v = r.get_f32();
    } else {
      v = r.get<T>();
    }
  }
  return out;
}

void encode_payload(io::ByteWriter& w, const SampleRequestMsg& m) {
  put_array(w, m.targets);
  put_array(w, m.timestamps);
  put_array(w, m.t_starts);
  w.put(m.fanout);
  w.put(static_cast<std::uint8_t>(m.policy));
  w.put(m.delta);
  w.put(m.seed);
  w.put(m.origin_machine);
  w.put(m.origin_rank);
}

void encode_payload(io::ByteWriter& w, const SampleResponseMsg& m) {
  put_array(w, m.offsets);
  put_array(w, m.neighbors);
  put_array(w, m.edge_ids);
  put_array(w, m.timestamps);
}

void encode_payload(io::ByteWriter& w, const FeatureRequestMsg& m) {
  w.put(m.kind);
  put_array(w, m.ids);
  w.put(m.origin_machine);
  w.put(m.origin_rank);
}

void encode_payload(io::ByteWriter& w, const FeatureResponseMsg& m) {
  w.put(m.dim);
  put_array(w, m.found);
  put_array(w, m.values);
}

void encode_payload(io::ByteWriter& w, const ErrorMsg& m) {
  w.put(static_cast<std::uint32_t>(m.message.size()));
  w.magic(m.message);
}

Payload decode_payload(MsgType type, io::ByteReader& r) {
  switch (type) {
    case MsgType::kSampleRequest: {
      SampleRequestMsg m;
      m.targets = get_array<NodeId>(r);
      m.timestamps = get_array<Timestamp>(r);
      m.t_starts = get_array<Timestamp>(r);
      m.fanout = r.get<std::uint32_t>();
      const auto policy = r.get<std::uint8_t>();
      if (policy > 2) throw FormatError("unknown sampling policy on the wire");
      m.policy = static_cast<PolicyKind>(policy);
      m.delta = r.get<Timestamp>();
      m.seed = r.get<std::uint64_t>();
      m.origin_machine = r.get<std::uint32_t>();
      m.origin_rank = r.get<std::uint32_t>();
      if (m.timestamps.size() != m.targets.size() || m.t_starts.size() != m.targets.size()) {
        throw FormatError("sample request arrays differ in length");
      }
      return m;
    }
    case MsgType::kSampleResponse: {
      SampleResponseMsg m;
      m.offsets = get_array<std::uint32_t>(r);
      m.neighbors = get_array<NodeId>(r);
      m.edge_ids = get_array<EdgeId>(r);
      m.timestamps = get_array<Timestamp>(r);
      return m;
    }
    case MsgType::kFeatureRequest: {
      FeatureRequestMsg m;
      m.kind = r.get<std::uint8_t>();
      m.ids = get_array<std::uint64_t>(r);
      m.origin_machine = r.get<std::uint32_t>();
      m.origin_rank = r.get<std::uint32_t>();
      return m;
    }
    case MsgType::kFeatureResponse: {
      FeatureResponseMsg m;
      m.dim = r.get<std::uint32_t>();
      m.found = get_array<std::uint8_t>(r);
      m.values = get_array<float>(r);
      return m;
    }
    case MsgType::kError: {
      ErrorMsg m;
      const auto n = r.get<std::uint32_t>();
      r.need(n);
      m.message.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) m.message.push_back(static_cast<char>(r.get<std::uint8_t>()));
      return m;
    }
  }
  throw FormatError("unknown message type");
}

}  // namespace

MsgType type_of(const Payload& payload) {
  return static_cast<MsgType>(payload.index() + 1);
}

std::string encode(const Message& msg) {
  io::ByteWriter body;
  std::visit([&](const auto& p) { encode_payload(body, p); }, msg.payload);
  if (body.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError("message payload too large");
  }
  io::ByteWriter w;
  w.magic(kMagic);
  w.put(kVersion);
  w.put(static_cast<std::uint16_t>(type_of(msg.payload)));
  w.put(msg.request_id);
  w.put(static_cast<std::uint32_t>(body.size()));
  std::string out = w.take();
  out += body.bytes();
  return out;
}

Header decode_header(std::string_view bytes) {
  io::ByteReader r(bytes);
  r.expect_magic(kMagic);
  if (const auto v = r.get<std::uint16_t>(); v != kVersion) {
    throw FormatError("unsupported wire version " + std::to_string(v));
  }
  const auto type = r.get<std::uint16_t>();
  if (type < 1 || type > 5) throw FormatError("unknown message type " + std::to_string(type));
  Header h{static_cast<MsgType>(type), 0, 0};
  h.request_id = r.get<std::uint64_t>();
  h.payload_len = r.get<std::uint32_t>();
  return h;
}

Message decode(std::string_view bytes) {
  const Header h = decode_header(bytes);
  if (bytes.size() != kHeaderBytes + h.payload_len) throw FormatError("payload length mismatch");
  io::ByteReader r(bytes.substr(kHeaderBytes));
  Message msg{h.request_id, decode_payload(h.type, r)};
  if (!r.done()) throw FormatError("trailing bytes in message payload");
  return msg;
}

}  // namespace tgraph::wire
