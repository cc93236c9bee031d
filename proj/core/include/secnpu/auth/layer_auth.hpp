#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "secnpu/auth/mac.hpp"

namespace secnpu::auth {

struct AuthBlock {
  std::vector<std::uint8_t> data;
  AuthContext ctx;
};

enum class Verdict { Pass, Fail };

// Per-block tags folded into one layer MAC.
AggregatedMac compute_layer_mac(std::span<const AuthBlock> blocks, const MacKey& key);

// Throws std::invalid_argument when opt_blk_idx values within a layer are not
// a 0-based permutation or blocks mix layer ids.
void check_layer_contexts(std::span<const AuthBlock> blocks);

// Recomputes every tag with the block's current context and compares the fold
// to the stored layer MAC. stored.level must be Layer.
Verdict verify_layer(std::span<const AuthBlock> blocks, const AggregatedMac& stored, const MacKey& key);

// Model-level MAC over the layer MACs of weight tensors.
AggregatedMac compute_model_mac(std::span<const AggregatedMac> weight_layer_macs);

enum class RepaMode { NaiveXor, Defended };
enum class RepaVerdict { AttackSucceeds, AttackDetected };

struct RepaOutcome {
  RepaVerdict verdict = RepaVerdict::AttackSucceeds;
  MacValue reference{};  // aggregate stored before the swap
  MacValue observed{};   // aggregate recomputed after the swap
};

// Swaps the payloads at positions a and b (contexts stay in place) and checks
// whether integrity verification notices. NaiveXor uses data-only tags;
// Defended uses context-bound tags and verify_layer. Throws
// std::invalid_argument with fewer than two blocks or out-of-range positions.
RepaOutcome repa_attack(std::span<const AuthBlock> blocks, RepaMode mode, const MacKey& key, std::size_t a,
                        std::size_t b);

}  // namespace secnpu::auth
