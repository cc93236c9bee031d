#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace secnpu::crypto {

// A 128-bit word in big-endian byte order (byte 0 is the most significant).
using Word128 = std::array<std::uint8_t, 16>;

inline constexpr std::size_t kSubBlockBytes = 16;

Word128 xor128(const Word128& a, const Word128& b);
Word128 load_word(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);
Word128 word_from_hex(std::string_view hex);

// Plaintext or ciphertext payload made of whole 128-bit sub-blocks.
class DataBlock {
 public:
  // Throws std::invalid_argument unless bytes is nonempty and a multiple of 16.
  explicit DataBlock(std::vector<std::uint8_t> bytes);

  static DataBlock zeros(std::size_t size);
  static DataBlock from_sub_blocks(std::span<const Word128> subs);

  std::size_t size() const { return bytes_.size(); }
  std::size_t sub_block_count() const { return bytes_.size() / kSubBlockBytes; }
  Word128 sub_block(std::size_t i) const;
  void set_sub_block(std::size_t i, const Word128& value);
  std::vector<Word128> sub_blocks() const;

  std::span<const std::uint8_t> bytes() const { return bytes_; }
  std::span<std::uint8_t> mutable_bytes() { return bytes_; }

  bool operator==(const DataBlock&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

}  // namespace secnpu::crypto
