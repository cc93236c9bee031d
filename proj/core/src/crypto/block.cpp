#include "secnpu/crypto/block.hpp"

#include <stdexcept>

namespace secnpu::crypto {

Word128 xor128(const Word128& a, const Word128& b) {
  Word128 out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

Word128 load_word(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != 16) throw std::invalid_argument("load_word: expected 16 bytes");
  Word128 w{};
  std::copy(bytes.begin(), bytes.end(), w.begin());
  return w;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

namespace {
int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd number of digits");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("from_hex: non-hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

Word128 word_from_hex(std::string_view hex) { return load_word(from_hex(hex)); }

DataBlock::DataBlock(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty() || bytes_.size() % kSubBlockBytes != 0) {
    throw std::invalid_argument("DataBlock: size must be a nonzero multiple of 16 bytes, got " +
                                std::to_string(bytes_.size()));
  }
}

DataBlock DataBlock::zeros(std::size_t size) { return DataBlock(std::vector<std::uint8_t>(size, 0)); }

DataBlock DataBlock::from_sub_blocks(std::span<const Word128> subs) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(subs.size() * kSubBlockBytes);
  for (const auto& s : subs) bytes.insert(bytes.end(), s.begin(), s.end());
  return DataBlock(std::move(bytes));
}

Word128 DataBlock::sub_block(std::size_t i) const {
  if (i >= sub_block_count()) throw std::out_of_range("DataBlock::sub_block");
  Word128 w{};
  std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(i * kSubBlockBytes), kSubBlockBytes, w.begin());
  return w;
}

void DataBlock::set_sub_block(std::size_t i, const Word128& value) {
  if (i >= sub_block_count()) throw std::out_of_range("DataBlock::set_sub_block");
  std::copy(value.begin(), value.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(i * kSubBlockBytes));
}

std::vector<Word128> DataBlock::sub_blocks() const {
  std::vector<Word128> out(sub_block_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_block(i);
  return out;
}

}  // namespace secnpu::crypto
