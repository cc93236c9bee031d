#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "secnpu/crypto/aes.hpp"
#include "secnpu/crypto/block.hpp"

namespace secnpu::crypto {

// Raised when no set of distinct combination keys can be drawn.
class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nonce material for one data block: PA || VN.
struct CounterTuple {
  std::uint64_t pa = 0;
  std::uint64_t vn = 0;
  unsigned vn_bits = 56;

  // Validates block alignment of pa and that vn fits in vn_bits.
  static CounterTuple make(std::uint64_t pa, std::uint64_t vn, std::uint64_t block_bytes = 64,
                           unsigned vn_bits = 56);

  // Same PA, VN + 1. Throws std::overflow_error when the VN space wraps.
  CounterTuple next_version() const;

  // High 64 bits: PA, low 64 bits: VN zero-extended. Both big-endian.
  Word128 counter_word() const;

  bool operator==(const CounterTuple&) const = default;
};

struct Otp {
  Word128 value{};
  bool operator==(const Otp&) const = default;
};

struct CombKey {
  std::uint32_t subset_mask = 0;
  Word128 value{};
  bool operator==(const CombKey&) const = default;
};

enum class SelectionPolicy {
  PerCounter,  // combination keys re-drawn for every (PA, VN)
  PerSession,  // one combination set per seed
};

Otp ctr_otp(const CounterTuple& counter, const RoundKeySet& keys);

// 2^rounds: every subset of the per-round keys, including the empty one.
std::uint64_t comb_key_set_size(AesVariant variant);

// XOR of the round keys selected by mask (bit i selects round key i + 1).
Word128 fold_round_keys(const RoundKeySet& keys, std::uint32_t mask);

// Draws n combination keys with distinct nonzero masks and distinct values.
// Deterministic in seed. Throws std::invalid_argument if n is outside
// [1, comb_key_set_size - 1] and DerivationError after 64 * n draws.
std::vector<CombKey> select_comb_keys(const RoundKeySet& keys, std::size_t n, std::uint64_t seed);

// Seed fed to select_comb_keys for a given counter under a policy.
std::uint64_t selection_seed(std::uint64_t seed, const CounterTuple& counter, SelectionPolicy policy);

// otp_i = shared_otp ^ comb_key_i.
std::vector<Otp> derive_block_otps(const CounterTuple& counter, const RoundKeySet& keys, std::size_t n,
                                   std::uint64_t seed,
                                   SelectionPolicy policy = SelectionPolicy::PerCounter);

DataBlock encrypt_block(const DataBlock& plain, const CounterTuple& counter, const RoundKeySet& keys,
                        std::uint64_t seed, SelectionPolicy policy = SelectionPolicy::PerCounter);
DataBlock decrypt_block(const DataBlock& cipher, const CounterTuple& counter, const RoundKeySet& keys,
                        std::uint64_t seed, SelectionPolicy policy = SelectionPolicy::PerCounter);

// Naive mode: every sub-block reuses ctr_otp(counter). This is the mode SECA
// breaks; it exists for the adversary oracle and the scheme comparison.
DataBlock encrypt_block_shared_otp(const DataBlock& plain, const CounterTuple& counter,
                                   const RoundKeySet& keys);

// Counter-based PRF used for combination-key selection.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace secnpu::crypto
