#include "reference.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstring>
#include <set>
#include <stdexcept>
#include <string>

namespace secnpu::testing {

namespace {

constexpr std::uint8_t kSbox[256] = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76, 0xca, 0x82, 0xc9,
    0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f,
    0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15, 0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07,
    0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3,
    0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58,
    0xcf, 0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3,
    0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec, 0x5f,
    0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73, 0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88,
    0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac,
    0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a,
    0xae, 0x08, 0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a, 0x70,
    0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1, 0xf8, 0x98, 0x11,
    0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf, 0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42,
    0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16};

const EVP_CIPHER* ecb_for(std::size_t key_len) {
  switch (key_len) {
    case 16:
      return EVP_aes_128_ecb();
    case 24:
      return EVP_aes_192_ecb();
    case 32:
      return EVP_aes_256_ecb();
  }
  throw std::invalid_argument("bad AES key length");
}

std::vector<std::uint8_t> run_cipher(const EVP_CIPHER* cipher, std::span<const std::uint8_t> key,
                                     const std::uint8_t* iv, std::span<const std::uint8_t> in) {
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  std::vector<std::uint8_t> out(in.size() + 16);
  int len = 0, total = 0;
  if (EVP_EncryptInit_ex(ctx, cipher, nullptr, key.data(), iv) != 1 || EVP_CIPHER_CTX_set_padding(ctx, 0) != 1 ||
      EVP_EncryptUpdate(ctx, out.data(), &len, in.data(), static_cast<int>(in.size())) != 1) {
    EVP_CIPHER_CTX_free(ctx);
    throw std::runtime_error("OpenSSL encryption failed");
  }
  total = len;
  if (EVP_EncryptFinal_ex(ctx, out.data() + total, &len) != 1) {
    EVP_CIPHER_CTX_free(ctx);
    throw std::runtime_error("OpenSSL finalization failed");
  }
  total += len;
  EVP_CIPHER_CTX_free(ctx);
  out.resize(total);
  return out;
}

std::vector<std::uint64_t> boundaries(const tiling::AxisTiling& a) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 0; j < a.tile_count(); ++j) {
    const std::uint64_t begin = j * a.step;
    out.push_back(begin);
    out.push_back(std::min(begin + a.tile, a.extent));
  }
  return out;
}

}  // namespace

Block16 openssl_aes_ecb(std::span<const std::uint8_t> key, const Block16& plain) {
  const auto out = run_cipher(ecb_for(key.size()), key, nullptr, plain);
  Block16 r{};
  std::memcpy(r.data(), out.data(), 16);
  return r;
}

Block16 openssl_cbc_last(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message) {
  if (message.empty() || message.size() % 16 != 0) throw std::invalid_argument("CBC message must be whole blocks");
  const std::uint8_t iv[16] = {};
  const auto out = run_cipher(EVP_aes_128_cbc(), key, iv, message);
  Block16 r{};
  std::memcpy(r.data(), out.data() + out.size() - 16, 16);
  return r;
}

std::vector<Block16> textbook_key_schedule(std::span<const std::uint8_t> key) {
  const std::size_t nk = key.size() / 4;
  const std::size_t nr = nk + 6;
  std::vector<std::array<std::uint8_t, 4>> w(4 * (nr + 1));
  for (std::size_t i = 0; i < nk; ++i) {
    for (int j = 0; j < 4; ++j) w[i][j] = key[4 * i + j];
  }
  std::uint8_t rcon = 0x01;
  for (std::size_t i = nk; i < w.size(); ++i) {
    auto temp = w[i - 1];
    if (i % nk == 0) {
      std::rotate(temp.begin(), temp.begin() + 1, temp.end());
      for (auto& b : temp) b = kSbox[b];
      temp[0] ^= rcon;
      rcon = static_cast<std::uint8_t>((rcon << 1) ^ ((rcon & 0x80) ? 0x1B : 0));
    } else if (nk > 6 && i % nk == 4) {
      for (auto& b : temp) b = kSbox[b];
    }
    for (int j = 0; j < 4; ++j) w[i][j] = w[i - nk][j] ^ temp[j];
  }
  std::vector<Block16> keys(nr + 1);
  for (std::size_t r = 0; r <= nr; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      for (int j = 0; j < 4; ++j) keys[r][4 * c + j] = w[4 * r + c][j];
    }
  }
  return keys;
}

std::uint64_t brute_force_axis_block(const tiling::AxisTiling& a, const tiling::AxisTiling& b) {
  auto cuts = boundaries(a);
  const auto more = boundaries(b);
  cuts.insert(cuts.end(), more.begin(), more.end());
  for (std::uint64_t len = a.extent; len >= 1; --len) {
    if (std::all_of(cuts.begin(), cuts.end(), [len](std::uint64_t c) { return c % len == 0; })) return len;
  }
  return 1;
}

std::uint64_t brute_force_straddle_overlap(const tiling::AxisTiling& a, const tiling::AxisTiling& b) {
  std::uint64_t best = 0;
  for (std::uint64_t i = 0; i < a.tile_count(); ++i) {
    const std::uint64_t a0 = i * a.step, a1 = std::min(a0 + a.tile, a.extent);
    for (std::uint64_t j = 0; j < b.tile_count(); ++j) {
      const std::uint64_t b0 = j * b.step, b1 = std::min(b0 + b.tile, b.extent);
      const bool a_in_b = b0 <= a0 && a1 <= b1;
      const bool b_in_a = a0 <= b0 && b1 <= a1;
      if (a_in_b || b_in_a) continue;
      const std::uint64_t lo = std::max(a0, b0), hi = std::min(a1, b1);
      if (hi > lo) best = std::max(best, hi - lo);
    }
  }
  return best;
}

}  // namespace secnpu::testing
