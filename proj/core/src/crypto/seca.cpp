#include "secnpu/crypto/seca.hpp"

#include <map>
#include <stdexcept>

namespace secnpu::crypto {

Word128 most_frequent_sub_block(const DataBlock& block) {
  // std::map iterates in ascending value order, so the first maximum found
  // is the smallest value among ties.
  std::map<Word128, std::size_t> freq;
  for (std::size_t i = 0; i < block.sub_block_count(); ++i) ++freq[block.sub_block(i)];
  auto best = freq.begin();
  for (auto it = freq.begin(); it != freq.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

SecaResult seca_attack(std::span<const DataBlock> cipher_blocks, const Word128& assumed_plain) {
  if (cipher_blocks.empty()) throw std::invalid_argument("seca_attack: no ciphertext blocks");
  SecaResult result;
  result.blocks.reserve(cipher_blocks.size());
  for (const auto& block : cipher_blocks) {
    SecaBlockResult r;
    r.most_frequent_cipher = most_frequent_sub_block(block);
    r.recovered_otp = xor128(assumed_plain, r.most_frequent_cipher);
    r.recovered_plain.reserve(block.sub_block_count());
    for (std::size_t i = 0; i < block.sub_block_count(); ++i)
      r.recovered_plain.push_back(xor128(block.sub_block(i), r.recovered_otp));
    result.blocks.push_back(std::move(r));
  }
  return result;
}

SecaScore score_seca(const SecaResult& result, std::span<const DataBlock> truth) {
  if (result.blocks.size() != truth.size()) throw std::invalid_argument("score_seca: block count mismatch");
  SecaScore score;
  for (std::size_t b = 0; b < truth.size(); ++b) {
    const auto& rec = result.blocks[b].recovered_plain;
    if (rec.size() != truth[b].sub_block_count()) throw std::invalid_argument("score_seca: sub-block count mismatch");
    std::vector<bool> mask(rec.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      mask[i] = rec[i] == truth[b].sub_block(i);
      hits += mask[i] ? 1 : 0;
    }
    score.recovered += hits;
    score.total += rec.size();
    const double rate = static_cast<double>(hits) / static_cast<double>(rec.size());
    if (rate > score.max_block_rate) score.max_block_rate = rate;
    score.correct.push_back(std::move(mask));
  }
  score.recovery_rate = score.total == 0 ? 0.0 : static_cast<double>(score.recovered) / static_cast<double>(score.total);
  return score;
}

}  // namespace secnpu::crypto
