#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "secnpu/crypto/aes.hpp"

namespace secnpu::auth {

// 64-bit tag. XOR forms a commutative monoid with identity 0.
struct MacValue {
  std::uint64_t value = 0;

  MacValue& operator^=(MacValue other) {
    value ^= other.value;
    return *this;
  }
  friend MacValue operator^(MacValue a, MacValue b) { return MacValue{a.value ^ b.value}; }
  bool operator==(const MacValue&) const = default;
};

// Position binding for one authentication block.
struct AuthContext {
  std::uint64_t pa = 0;
  std::uint64_t vn = 0;
  std::uint64_t layer_id = 0;
  std::uint64_t opt_blk_idx = 0;
  bool operator==(const AuthContext&) const = default;
};

enum class MacLevel { OptBlk, Tile, Layer, Model };
std::string_view to_string(MacLevel level);

struct AggregatedMac {
  MacLevel level = MacLevel::OptBlk;
  MacValue value{};
  std::size_t contributing_count = 0;
};

// AES-128 key for the CBC-MAC, expanded once.
class MacKey {
 public:
  explicit MacKey(std::span<const std::uint8_t> key);
  const crypto::RoundKeySet& schedule() const { return schedule_; }

 private:
  crypto::RoundKeySet schedule_;
};

// CBC-MAC (AES-128, zero IV) over
//   header || data || pa || vn || layer_id || opt_blk_idx || zero pad
// truncated to the first 64 bits of the final chaining value. The header
// block is the 64-bit big-endian data length followed by a 64-bit flag word
// (1 when the context is bound), which keeps the message encoding prefix-free.
// Context fields are 64-bit big-endian. Empty data throws
// std::invalid_argument.
MacValue auth_mac(std::span<const std::uint8_t> data, const AuthContext& ctx, const MacKey& key);
MacValue auth_mac(std::span<const std::uint8_t> data, const AuthContext& ctx, std::span<const std::uint8_t> key);

// Same construction without any context: the order-blind tag a plain
// XOR-aggregated layer MAC uses.
MacValue data_only_mac(std::span<const std::uint8_t> data, const MacKey& key);

// XOR fold. Throws std::invalid_argument on an empty list.
AggregatedMac aggregate_macs(std::span<const MacValue> children, MacLevel level);

}  // namespace secnpu::auth
