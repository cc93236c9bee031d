#include "secnpu/auth/layer_auth.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace secnpu::auth {

void check_layer_contexts(std::span<const AuthBlock> blocks) {
  if (blocks.empty()) return;
  std::vector<bool> seen(blocks.size(), false);
  const auto layer = blocks.front().ctx.layer_id;
  for (const auto& b : blocks) {
    if (b.ctx.layer_id != layer) throw std::invalid_argument("layer auth: blocks from different layers");
    const auto idx = b.ctx.opt_blk_idx;
    if (idx >= blocks.size() || seen[idx]) {
      throw std::invalid_argument("layer auth: opt_blk_idx " + std::to_string(idx) +
                                  " is duplicated or outside the 0-based range");
    }
    seen[idx] = true;
  }
}

AggregatedMac compute_layer_mac(std::span<const AuthBlock> blocks, const MacKey& key) {
  check_layer_contexts(blocks);
  std::vector<MacValue> tags;
  tags.reserve(blocks.size());
  for (const auto& b : blocks) tags.push_back(auth_mac(b.data, b.ctx, key));
  return aggregate_macs(tags, MacLevel::Layer);
}

Verdict verify_layer(std::span<const AuthBlock> blocks, const AggregatedMac& stored, const MacKey& key) {
  if (stored.level != MacLevel::Layer) throw std::invalid_argument("verify_layer: stored MAC is not a layer MAC");
  if (blocks.empty()) return Verdict::Fail;
  return compute_layer_mac(blocks, key).value == stored.value ? Verdict::Pass : Verdict::Fail;
}

AggregatedMac compute_model_mac(std::span<const AggregatedMac> weight_layer_macs) {
  std::vector<MacValue> tags;
  tags.reserve(weight_layer_macs.size());
  for (const auto& m : weight_layer_macs) {
    if (m.level != MacLevel::Layer) throw std::invalid_argument("compute_model_mac: expects layer MACs");
    tags.push_back(m.value);
  }
  return aggregate_macs(tags, MacLevel::Model);
}

namespace {

MacValue naive_fold(std::span<const AuthBlock> blocks, const MacKey& key) {
  MacValue acc{};
  for (const auto& b : blocks) acc ^= data_only_mac(b.data, key);
  return acc;
}

}  // namespace

RepaOutcome repa_attack(std::span<const AuthBlock> blocks, RepaMode mode, const MacKey& key, std::size_t a,
                        std::size_t b) {
  if (blocks.size() < 2) throw std::invalid_argument("repa_attack: need at least two blocks");
  if (a >= blocks.size() || b >= blocks.size()) throw std::invalid_argument("repa_attack: swap position out of range");

  std::vector<AuthBlock> shuffled(blocks.begin(), blocks.end());
  std::swap(shuffled[a].data, shuffled[b].data);

  RepaOutcome out;
  if (mode == RepaMode::NaiveXor) {
    out.reference = naive_fold(blocks, key);
    out.observed = naive_fold(shuffled, key);
    out.verdict = out.observed == out.reference ? RepaVerdict::AttackSucceeds : RepaVerdict::AttackDetected;
    return out;
  }
  const AggregatedMac stored = compute_layer_mac(blocks, key);
  out.reference = stored.value;
  out.observed = compute_layer_mac(shuffled, key).value;
  out.verdict = verify_layer(shuffled, stored, key) == Verdict::Fail ? RepaVerdict::AttackDetected
                                                                       : RepaVerdict::AttackSucceeds;
  return out;
}

}  // namespace secnpu::auth
