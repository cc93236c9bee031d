#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "secnpu/crypto/block.hpp"

namespace secnpu::crypto {

struct SecaBlockResult {
  Word128 most_frequent_cipher{};
  Word128 recovered_otp{};
  std::vector<Word128> recovered_plain;
};

struct SecaResult {
  std::vector<SecaBlockResult> blocks;
};

// Most frequent sub-block; ties go to the numerically smallest value.
Word128 most_frequent_sub_block(const DataBlock& block);

// Single-element collision attack: guess the per-block OTP as
// assumed_plain ^ most frequent ciphertext sub-block and XOR-decrypt the
// whole block with it. Throws std::invalid_argument on empty input.
SecaResult seca_attack(std::span<const DataBlock> cipher_blocks, const Word128& assumed_plain = {});

struct SecaScore {
  std::vector<std::vector<bool>> correct;  // per block, per sub-block
  std::size_t recovered = 0;
  std::size_t total = 0;
  double recovery_rate = 0.0;   // recovered / total
  double max_block_rate = 0.0;  // worst single block
};

// Compares attack output to the ground-truth plaintext blocks.
SecaScore score_seca(const SecaResult& result, std::span<const DataBlock> truth);

}  // namespace secnpu::crypto
