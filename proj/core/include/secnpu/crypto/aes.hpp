#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "secnpu/crypto/block.hpp"

namespace secnpu::crypto {

enum class AesVariant { Aes128, Aes192, Aes256 };

constexpr std::size_t key_length(AesVariant v) {
  switch (v) {
    case AesVariant::Aes128: return 16;
    case AesVariant::Aes192: return 24;
    case AesVariant::Aes256: return 32;
  }
  return 0;
}

constexpr int round_count(AesVariant v) {
  switch (v) {
    case AesVariant::Aes128: return 10;
    case AesVariant::Aes192: return 12;
    case AesVariant::Aes256: return 14;
  }
  return 0;
}

std::string_view to_string(AesVariant v);
// Accepts "aes128", "AES-128", "128" and the 192/256 equivalents.
AesVariant parse_variant(std::string_view text);
AesVariant variant_for_key_length(std::size_t bytes);

// Expanded AES key schedule.
//
// round_keys() exposes the per-round keys for rounds 1..Nr, which is the
// set the OTP-combination scheme draws from. The whitening key (round 0)
// is kept separately and only used by the cipher itself.
class RoundKeySet {
 public:
  AesVariant variant() const { return variant_; }
  int rounds() const { return round_count(variant_); }

  std::span<const Word128> round_keys() const {
    return std::span<const Word128>(schedule_).subspan(1);
  }
  const Word128& whitening_key() const { return schedule_.front(); }
  // round in [0, rounds()]; 0 is the whitening key.
  const Word128& schedule_key(int round) const { return schedule_.at(static_cast<std::size_t>(round)); }

  bool operator==(const RoundKeySet&) const = default;

 private:
  friend RoundKeySet key_expansion(std::span<const std::uint8_t>, AesVariant);
  RoundKeySet(AesVariant v, std::vector<Word128> schedule) : variant_(v), schedule_(std::move(schedule)) {}

  AesVariant variant_;
  std::vector<Word128> schedule_;
};

// Standard FIPS-197 key expansion. Throws std::invalid_argument when the key
// length does not match the variant.
RoundKeySet key_expansion(std::span<const std::uint8_t> initial_key, AesVariant variant);

// Single-block AES encryption (ECB core).
Word128 aes_encrypt(const Word128& plain, const RoundKeySet& keys);

// S-box value derived from the GF(2^8) inverse and affine map.
std::uint8_t sbox(std::uint8_t x);

}  // namespace secnpu::crypto
