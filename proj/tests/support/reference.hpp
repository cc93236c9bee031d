#pragma once

// Independent oracles used only by the tests.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "secnpu/tiling/pattern.hpp"

namespace secnpu::testing {

using Block16 = std::array<std::uint8_t, 16>;

// AES-ECB through OpenSSL's EVP interface (key length selects the variant).
Block16 openssl_aes_ecb(std::span<const std::uint8_t> key, const Block16& plain);

// AES-128-CBC with zero IV through OpenSSL; returns the last ciphertext block.
Block16 openssl_cbc_last(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message);

// Key expansion straight from the standard's pseudo-code with a literal
// S-box table. Returns all Nr + 1 round keys, whitening key first.
std::vector<Block16> textbook_key_schedule(std::span<const std::uint8_t> key);

// Largest block length that divides every tile boundary of both tilings on
// one axis, found by trying every candidate length.
std::uint64_t brute_force_axis_block(const tiling::AxisTiling& a, const tiling::AxisTiling& b);

// Longest overlap among tile pairs that straddle each other, by enumeration.
std::uint64_t brute_force_straddle_overlap(const tiling::AxisTiling& a, const tiling::AxisTiling& b);

}  // namespace secnpu::testing
