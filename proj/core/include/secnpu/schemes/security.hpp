#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "secnpu/crypto/block.hpp"
#include "secnpu/schemes/config.hpp"

namespace secnpu::schemes {

enum class Adversary { Tamper, Replay, Repa, Seca };
enum class Outcome { Defended, Vulnerable };

std::string_view to_string(Adversary adversary);
std::string_view to_string(Outcome outcome);
const std::vector<Adversary>& all_adversaries();

// Blocks of block_bytes where the first half of the sub-blocks (rounded up)
// are zero and the rest are distinct random nonzero values, shuffled within
// each block. Deterministic in seed.
std::vector<crypto::DataBlock> make_sparse_blocks(std::size_t count, std::size_t block_bytes, std::uint64_t seed);

// Runs the adversary oracles against the scheme's integrity and encryption
// mechanisms on a small fixture derived from cfg.seed:
//   Tamper  flip one bit of a stored block
//   Replay  restore a stale block (and its stale off-chip tag) after a VN bump
//   Repa    swap two blocks' payloads, contexts unchanged
//   Seca    single-element collision on sparse plaintext
std::map<Adversary, Outcome> verify_scheme_security(const SchemeConfig& cfg,
                                                    std::span<const Adversary> adversaries);
std::map<Adversary, Outcome> verify_scheme_security(const SchemeConfig& cfg);

}  // namespace secnpu::schemes
