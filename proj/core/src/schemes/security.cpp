#include "secnpu/schemes/security.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <stdexcept>

#include "secnpu/auth/layer_auth.hpp"
#include "secnpu/auth/mac.hpp"
#include "secnpu/crypto/aes.hpp"
#include "secnpu/crypto/otp.hpp"
#include "secnpu/crypto/seca.hpp"

namespace secnpu::schemes {

namespace {

using crypto::DataBlock;
using crypto::Word128;

constexpr std::size_t kFixtureBlocks = 8;
constexpr std::uint64_t kFixtureVn = 7;

struct Fixture {
  std::array<std::uint8_t, 16> key{};
  std::vector<std::vector<std::uint8_t>> current;
  std::vector<std::vector<std::uint8_t>> stale;  // same blocks one version earlier
  std::uint64_t base_pa = 0;
};

Fixture make_fixture(const SchemeConfig& cfg) {
  std::mt19937_64 rng(crypto::splitmix64(cfg.seed));
  Fixture f;
  for (auto& b : f.key) b = static_cast<std::uint8_t>(rng());
  f.base_pa = (rng() % 1024) * cfg.protection_granularity;
  for (std::size_t i = 0; i < kFixtureBlocks; ++i) {
    std::vector<std::uint8_t> cur(cfg.protection_granularity), old(cfg.protection_granularity);
    for (auto& b : cur) b = static_cast<std::uint8_t>(rng());
    for (auto& b : old) b = static_cast<std::uint8_t>(rng());
    f.current.push_back(std::move(cur));
    f.stale.push_back(std::move(old));
  }
  return f;
}

std::uint64_t pa_of(const Fixture& f, const SchemeConfig& cfg, std::size_t i) {
  return f.base_pa + i * cfg.protection_granularity;
}

// Per-block MACs bound to (PA, VN), stored off-chip next to the data.
struct PerBlockStore {
  std::vector<std::vector<std::uint8_t>> data;
  std::vector<auth::MacValue> tags;
};

PerBlockStore per_block_store(const Fixture& f, const SchemeConfig& cfg, const auth::MacKey& key,
                              const std::vector<std::vector<std::uint8_t>>& data, std::uint64_t vn) {
  PerBlockStore s{data, {}};
  for (std::size_t i = 0; i < data.size(); ++i) {
    s.tags.push_back(auth::auth_mac(data[i], auth::AuthContext{pa_of(f, cfg, i), vn, 0, 0}, key));
  }
  return s;
}

bool per_block_detects(const Fixture& f, const SchemeConfig& cfg, const auth::MacKey& key, const PerBlockStore& s,
                       std::uint64_t trusted_vn) {
  for (std::size_t i = 0; i < s.data.size(); ++i) {
    if (auth::auth_mac(s.data[i], auth::AuthContext{pa_of(f, cfg, i), trusted_vn, 0, 0}, key) != s.tags[i]) {
      return true;
    }
  }
  return false;
}

std::vector<auth::AuthBlock> layer_blocks(const Fixture& f, const SchemeConfig& cfg,
                                          const std::vector<std::vector<std::uint8_t>>& data, std::uint64_t vn) {
  std::vector<auth::AuthBlock> blocks;
  for (std::size_t i = 0; i < data.size(); ++i) {
    blocks.push_back(auth::AuthBlock{data[i], auth::AuthContext{pa_of(f, cfg, i), vn, 0, i}});
  }
  return blocks;
}

auth::AggregatedMac layer_tag(const SchemeConfig& cfg, std::span<const auth::AuthBlock> blocks,
                              const auth::MacKey& key) {
  if (cfg.bind_position) return auth::compute_layer_mac(blocks, key);
  auth::AggregatedMac out{auth::MacLevel::Layer, {}, 0};
  for (const auto& b : blocks) {
    out.value ^= auth::data_only_mac(b.data, key);
    ++out.contributing_count;
  }
  return out;
}

bool layer_detects(const SchemeConfig& cfg, std::span<const auth::AuthBlock> observed,
                   const auth::AggregatedMac& stored, const auth::MacKey& key) {
  if (cfg.bind_position) return auth::verify_layer(observed, stored, key) == auth::Verdict::Fail;
  return layer_tag(cfg, observed, key).value != stored.value;
}

Outcome integrity_outcome(const SchemeConfig& cfg, Adversary adv) {
  if (cfg.kind == SchemeKind::Baseline) return Outcome::Vulnerable;
  const Fixture f = make_fixture(cfg);
  const auth::MacKey key(f.key);
  const std::size_t victim = 3, other = 6;
  bool detected = false;

  if (cfg.kind == SchemeKind::SgxLike || cfg.kind == SchemeKind::MgxLike) {
    // VNs come from the integrity tree (SGX) or are recomputed on chip (MGX);
    // either way the verifier's VN is trusted.
    PerBlockStore s = per_block_store(f, cfg, key, f.current, kFixtureVn);
    switch (adv) {
      case Adversary::Tamper:
        s.data[victim][5] ^= 0x10;
        break;
      case Adversary::Replay: {
        const PerBlockStore old = per_block_store(f, cfg, key, f.stale, kFixtureVn - 1);
        s.data[victim] = old.data[victim];
        s.tags[victim] = old.tags[victim];
        break;
      }
      case Adversary::Repa:
        std::swap(s.data[victim], s.data[other]);
        std::swap(s.tags[victim], s.tags[other]);
        break;
      case Adversary::Seca:
        throw std::logic_error("not an integrity adversary");
    }
    detected = per_block_detects(f, cfg, key, s, kFixtureVn);
  } else {
    const auto blocks = layer_blocks(f, cfg, f.current, kFixtureVn);
    const auth::AggregatedMac stored = layer_tag(cfg, blocks, key);
    switch (adv) {
      case Adversary::Tamper: {
        auto observed = blocks;
        observed[victim].data[5] ^= 0x10;
        detected = layer_detects(cfg, observed, stored, key);
        break;
      }
      case Adversary::Replay: {
        // Whole-layer rollback. An off-chip layer tag rolls back with it; an
        // on-chip one cannot be touched.
        const auto old_blocks = layer_blocks(f, cfg, f.stale, kFixtureVn - 1);
        const auth::AggregatedMac presented =
            cfg.layer_mac_storage == MacStorage::OffChip ? layer_tag(cfg, old_blocks, key) : stored;
        auto observed = layer_blocks(f, cfg, f.stale, kFixtureVn);
        detected = layer_detects(cfg, observed, presented, key);
        break;
      }
      case Adversary::Repa: {
        const auto outcome = auth::repa_attack(blocks, cfg.bind_position ? auth::RepaMode::Defended
                                                                         : auth::RepaMode::NaiveXor,
                                               key, victim, other);
        detected = outcome.verdict == auth::RepaVerdict::AttackDetected;
        break;
      }
      case Adversary::Seca:
        throw std::logic_error("not an integrity adversary");
    }
  }
  return detected ? Outcome::Defended : Outcome::Vulnerable;
}

DataBlock encrypt_per_sub_block_counter(const DataBlock& plain, std::uint64_t pa, std::uint64_t vn,
                                        const crypto::RoundKeySet& keys, unsigned vn_bits) {
  DataBlock out = plain;
  for (std::size_t i = 0; i < plain.sub_block_count(); ++i) {
    const auto ctr = crypto::CounterTuple::make(pa + 16 * i, vn, 16, vn_bits);
    out.set_sub_block(i, crypto::xor128(plain.sub_block(i), crypto::ctr_otp(ctr, keys).value));
  }
  return out;
}

Outcome seca_outcome(const SchemeConfig& cfg) {
  if (cfg.kind == SchemeKind::Baseline) return Outcome::Vulnerable;
  const Fixture f = make_fixture(cfg);
  const auto keys = crypto::key_expansion(f.key, crypto::AesVariant::Aes128);
  const auto plain = make_sparse_blocks(kFixtureBlocks, cfg.protection_granularity, cfg.seed);
  std::vector<DataBlock> cipher;
  for (std::size_t i = 0; i < plain.size(); ++i) {
    const std::uint64_t pa = pa_of(f, cfg, i);
    const auto ctr = crypto::CounterTuple::make(pa, kFixtureVn, cfg.protection_granularity, cfg.vn_bits);
    if (cfg.otp_mode == OtpMode::SharedPerBlock) {
      cipher.push_back(crypto::encrypt_block_shared_otp(plain[i], ctr, keys));
    } else if (cfg.kind == SchemeKind::Proposed) {
      cipher.push_back(crypto::encrypt_block(plain[i], ctr, keys, cfg.seed));
    } else {
      cipher.push_back(encrypt_per_sub_block_counter(plain[i], pa, kFixtureVn, keys, cfg.vn_bits));
    }
  }
  const auto score = crypto::score_seca(crypto::seca_attack(cipher), plain);
  const double limit = 1.0 / static_cast<double>(plain.front().sub_block_count());
  return score.max_block_rate > limit ? Outcome::Vulnerable : Outcome::Defended;
}

}  // namespace

std::string_view to_string(Adversary adversary) {
  switch (adversary) {
    case Adversary::Tamper:
      return "tamper";
    case Adversary::Replay:
      return "replay";
    case Adversary::Repa:
      return "repa";
    case Adversary::Seca:
      return "seca";
  }
  return "?";
}

std::string_view to_string(Outcome outcome) { return outcome == Outcome::Defended ? "defended" : "vulnerable"; }

const std::vector<Adversary>& all_adversaries() {
  static const std::vector<Adversary> all{Adversary::Tamper, Adversary::Replay, Adversary::Repa, Adversary::Seca};
  return all;
}

std::vector<DataBlock> make_sparse_blocks(std::size_t count, std::size_t block_bytes, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("need at least one block");
  std::mt19937_64 rng(crypto::splitmix64(seed ^ 0xA5A5A5A5ULL));
  std::vector<DataBlock> out;
  const std::size_t n = DataBlock::zeros(block_bytes).sub_block_count();
  const std::size_t zeros = (n + 1) / 2;
  for (std::size_t b = 0; b < count; ++b) {
    std::vector<Word128> subs(n, Word128{});
    std::set<Word128> used{Word128{}};
    for (std::size_t i = zeros; i < n; ++i) {
      Word128 w;
      do {
        for (auto& byte : w) byte = static_cast<std::uint8_t>(rng());
      } while (used.contains(w));
      used.insert(w);
      subs[i] = w;
    }
    std::shuffle(subs.begin(), subs.end(), rng);
    out.push_back(DataBlock::from_sub_blocks(subs));
  }
  return out;
}

std::map<Adversary, Outcome> verify_scheme_security(const SchemeConfig& cfg, std::span<const Adversary> adversaries) {
  cfg.validate();
  std::map<Adversary, Outcome> out;
  for (Adversary a : adversaries) {
    out[a] = a == Adversary::Seca ? seca_outcome(cfg) : integrity_outcome(cfg, a);
  }
  return out;
}

std::map<Adversary, Outcome> verify_scheme_security(const SchemeConfig& cfg) {
  return verify_scheme_security(cfg, all_adversaries());
}

}  // namespace secnpu::schemes
