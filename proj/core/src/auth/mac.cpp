#include "secnpu/auth/mac.hpp"

#include <stdexcept>

namespace secnpu::auth {
namespace {

void put_be64(std::uint64_t v, std::vector<std::uint8_t>& out) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

MacValue cbc_mac(const std::vector<std::uint8_t>& message, const crypto::RoundKeySet& keys) {
  crypto::Word128 state{};
  for (std::size_t off = 0; off < message.size(); off += crypto::kSubBlockBytes) {
    for (std::size_t i = 0; i < crypto::kSubBlockBytes; ++i) state[i] ^= message[off + i];
    state = crypto::aes_encrypt(state, keys);
  }
  std::uint64_t tag = 0;
  for (std::size_t i = 0; i < 8; ++i) tag = (tag << 8) | state[i];
  return MacValue{tag};
}

std::vector<std::uint8_t> encode(std::span<const std::uint8_t> data, const AuthContext* ctx) {
  if (data.empty()) throw std::invalid_argument("auth_mac: empty data");
  std::vector<std::uint8_t> msg;
  msg.reserve(16 + data.size() + 32 + 16);
  put_be64(data.size(), msg);
  put_be64(ctx != nullptr ? 1 : 0, msg);
  msg.insert(msg.end(), data.begin(), data.end());
  if (ctx != nullptr) {
    put_be64(ctx->pa, msg);
    put_be64(ctx->vn, msg);
    put_be64(ctx->layer_id, msg);
    put_be64(ctx->opt_blk_idx, msg);
  }
  msg.resize((msg.size() + 15) / 16 * 16, 0);
  return msg;
}

}  // namespace

std::string_view to_string(MacLevel level) {
  switch (level) {
    case MacLevel::OptBlk: return "opt_blk";
    case MacLevel::Tile: return "tile";
    case MacLevel::Layer: return "layer";
    case MacLevel::Model: return "model";
  }
  return "unknown";
}

MacKey::MacKey(std::span<const std::uint8_t> key)
    : schedule_(crypto::key_expansion(key, crypto::AesVariant::Aes128)) {}

MacValue auth_mac(std::span<const std::uint8_t> data, const AuthContext& ctx, const MacKey& key) {
  return cbc_mac(encode(data, &ctx), key.schedule());
}

MacValue auth_mac(std::span<const std::uint8_t> data, const AuthContext& ctx, std::span<const std::uint8_t> key) {
  return auth_mac(data, ctx, MacKey(key));
}

MacValue data_only_mac(std::span<const std::uint8_t> data, const MacKey& key) {
  return cbc_mac(encode(data, nullptr), key.schedule());
}

AggregatedMac aggregate_macs(std::span<const MacValue> children, MacLevel level) {
  if (children.empty()) throw std::invalid_argument("aggregate_macs: no children");
  AggregatedMac agg{level, MacValue{}, children.size()};
  for (const auto& m : children) agg.value ^= m;
  return agg;
}

}  // namespace secnpu::auth
