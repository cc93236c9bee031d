#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "secnpu/schemes/config.hpp"
#include "secnpu/schemes/integrity_tree.hpp"
#include "secnpu/schemes/metadata_cache.hpp"
#include "secnpu/schemes/metadata_engine.hpp"
#include "secnpu/schemes/security.hpp"

namespace {

using namespace secnpu;
using namespace secnpu::schemes;

std::vector<DramAccess> stream(std::uint64_t base, std::uint64_t bytes, std::uint32_t chunk, AccessKind kind) {
  std::vector<DramAccess> out;
  for (std::uint64_t off = 0; off < bytes; off += chunk) out.push_back({0, base + off, chunk, kind, Stream::Ifmap});
  return out;
}

TEST(SchemeConfig, PresetsAndOverrides) {
  EXPECT_EQ(preset_names().size(), 6u);
  const auto sgx = scheme_preset("sgx512");
  EXPECT_EQ(sgx.kind, SchemeKind::SgxLike);
  EXPECT_EQ(sgx.protection_granularity, 512u);
  EXPECT_EQ(sgx.vn_cache_bytes, 16384u);
  EXPECT_EQ(sgx.mac_cache_bytes, 8192u);
  EXPECT_EQ(scheme_preset("ours").crypto.style, CryptoStyle::BAes);
  try {
    scheme_preset("sgx128");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("mgx512"), std::string::npos);
  }
  const auto o = apply_overrides(scheme_preset("ours"), nlohmann::json::parse(
                                                            R"({"layer_mac_storage":"onchip","bind_position":false,
                                                                "crypto":{"units":3},"vn_cache_bytes":1024})"));
  EXPECT_EQ(o.layer_mac_storage, MacStorage::OnChip);
  EXPECT_FALSE(o.bind_position);
  EXPECT_EQ(o.crypto.units, 3u);
  EXPECT_EQ(o.vn_cache_bytes, 1024u);
  EXPECT_EQ(apply_overrides(SchemeConfig{}, to_json(o)), o);
  EXPECT_THROW(apply_overrides(SchemeConfig{}, nlohmann::json::parse(R"({"bogus":1})")), std::invalid_argument);
  EXPECT_THROW(apply_overrides(scheme_preset("sgx64"), nlohmann::json::parse(R"({"protection_granularity":24})")),
               std::invalid_argument);
  EXPECT_THROW(apply_overrides(scheme_preset("sgx64"), nlohmann::json::parse(R"({"vn_cache_bytes":100})")),
               std::invalid_argument);
}

TEST(MetadataCache, LruWriteBackConservation) {
  MetadataCache c(4 * 64, 64);
  EXPECT_EQ(c.capacity_lines(), 4u);
  for (std::uint64_t t = 0; t < 4; ++t) EXPECT_FALSE(c.access(t, t == 1).hit);
  EXPECT_TRUE(c.access(0, false).hit);  // 0 becomes most recent, 1 is LRU
  auto r = c.access(9, false);
  ASSERT_TRUE(r.victim.has_value());
  EXPECT_EQ(r.victim->tag, 1u);
  EXPECT_TRUE(r.victim->dirty);
  EXPECT_FALSE(c.contains(1));
  EXPECT_LE(c.occupancy_lines(), c.capacity_lines());

  std::mt19937_64 rng(51);
  for (int i = 0; i < 5000; ++i) c.access(rng() % 16, rng() % 3 == 0);
  const auto& s = c.stats();
  EXPECT_EQ(s.hits + s.misses, s.accesses);
  for (auto t : c.dirty_tags()) c.clean(t);
  EXPECT_LE(s.writebacks, s.misses + s.flush_writebacks);
  EXPECT_TRUE(c.dirty_tags().empty());
  EXPECT_THROW(MetadataCache(100, 64), std::invalid_argument);
}

TEST(IntegrityTree, LevelCountClosedForm) {
  const std::uint64_t gib16 = 16ULL << 30;
  for (std::uint64_t g : {64u, 512u}) {
    const std::uint64_t blocks = gib16 / g;
    const IntegrityTree t(blocks, 8, 8, 64, 0);
    const auto expect = static_cast<std::uint32_t>(std::ceil(std::log(static_cast<double>(blocks)) / std::log(8.0)));
    EXPECT_EQ(t.levels(), expect);
    EXPECT_EQ(t.nodes_at(t.levels()), 1u);
  }
  EXPECT_EQ(IntegrityTree((16ULL << 30) / 64, 8, 8, 64, 0).levels(), 10u);
}

TEST(MetadataEngine, MgxSingleRead) {
  MetadataEngine e(scheme_preset("mgx64"));
  const auto extra = e.metadata_accesses({0, 4096, 64, AccessKind::Read, Stream::Ifmap});
  ASSERT_EQ(extra.size(), 1u);
  EXPECT_EQ(extra[0].type, MetaType::Mac);
  EXPECT_EQ(extra[0].bytes, 8u);
  EXPECT_EQ(extra[0].kind, AccessKind::Read);
  EXPECT_DOUBLE_EQ(e.totals().normalized_factor(), 72.0 / 64.0);
}

TEST(MetadataEngine, SgxColdReadWalksWholeTree) {
  MetadataEngine e(scheme_preset("sgx64"));
  const auto extra = e.metadata_accesses({0, 1 << 20, 64, AccessKind::Read, Stream::Ifmap});
  EXPECT_EQ(extra.size(), e.tree()->levels());
  EXPECT_EQ(extra.size(), 10u);
  EXPECT_EQ(extra[0].type, MetaType::Mac);
  EXPECT_EQ(extra[1].type, MetaType::Vn);
  for (std::size_t i = 2; i < extra.size(); ++i) EXPECT_EQ(extra[i].type, MetaType::Tree);
  // Same VN line again: everything cached except the MAC.
  EXPECT_EQ(e.metadata_accesses({0, (1 << 20) + 64, 64, AccessKind::Read, Stream::Ifmap}).size(), 1u);
  // Metadata never lands inside the protected region.
  for (const auto& m : extra) EXPECT_GE(m.address, 16ULL << 30);
}

TEST(MetadataEngine, ProposedTraffic) {
  auto cfg = scheme_preset("ours");
  cfg.layer_mac_storage = MacStorage::OnChip;
  MetadataEngine on(cfg);
  for (const auto& a : stream(0, 1 << 16, 4096, AccessKind::Write)) EXPECT_TRUE(on.metadata_accesses(a).empty());
  EXPECT_TRUE(on.end_layer().empty());
  EXPECT_TRUE(on.flush().empty());

  MetadataEngine off(scheme_preset("ours"));
  for (const auto& a : stream(0, 1 << 16, 4096, AccessKind::Read)) EXPECT_TRUE(off.metadata_accesses(a).empty());
  const auto tail = off.end_layer();
  ASSERT_EQ(tail.size(), 1u);
  EXPECT_EQ(tail[0].bytes, 8u);
  EXPECT_EQ(tail[0].type, MetaType::LayerMac);
}

TEST(MetadataEngine, RejectsOutOfRegionAndMetadataInput) {
  MetadataEngine e(scheme_preset("mgx64"));
  EXPECT_THROW(e.metadata_accesses({0, (16ULL << 30) - 32, 64, AccessKind::Read, Stream::Ifmap}), std::out_of_range);
  EXPECT_THROW(e.metadata_accesses({0, 0, 64, AccessKind::Read, Stream::Metadata}), std::invalid_argument);
}

TEST(SchemeTraffic, AlignedStreamingFactors) {
  for (auto kind : {AccessKind::Read, AccessKind::Write}) {
    const auto trace = stream(1 << 20, 1 << 22, 4096, kind);
    EXPECT_EQ(scheme_traffic(trace, scheme_preset("baseline")).normalized_factor(), 1.0);
    EXPECT_EQ(scheme_traffic(trace, scheme_preset("mgx64")).normalized_factor(), 1.125);
    EXPECT_EQ(scheme_traffic(trace, scheme_preset("mgx512")).normalized_factor(), 1.015625);
    const double s64 = scheme_traffic(trace, scheme_preset("sgx64")).normalized_factor();
    const double s512 = scheme_traffic(trace, scheme_preset("sgx512")).normalized_factor();
    EXPECT_GE(s64, 1.125);
    EXPECT_GE(s64, s512);
    EXPECT_GE(s512, 1.015625);
  }
  EXPECT_EQ(scheme_traffic({}, scheme_preset("sgx64")), TrafficTotals{});
}

TEST(SchemeTraffic, UnalignedAccessCoversEveryBlock) {
  const std::vector<DramAccess> t{{0, 100, 100, AccessKind::Read, Stream::Ifmap}};  // blocks 1..3
  EXPECT_EQ(scheme_traffic(t, scheme_preset("mgx64")).mac_bytes, 24u);
}

TEST(SchemeTraffic, InfiniteCachesLeaveCompulsoryMisses) {
  auto cfg = scheme_preset("sgx64");
  cfg.vn_cache_bytes = 1ULL << 30;
  cfg.mac_cache_bytes = 1ULL << 30;
  std::vector<DramAccess> trace;
  for (int pass = 0; pass < 3; ++pass) {
    for (const auto& a : stream(0, 1 << 20, 4096, AccessKind::Read)) trace.push_back(a);
  }
  MetadataEngine e(cfg);
  for (const auto& a : trace) e.metadata_accesses(a);
  // 1 MiB of 64 B blocks: 2048 VN lines, 256 level-2 nodes, 32, 4, then one
  // node per level up to the root.
  std::uint64_t nodes = 0;
  for (std::uint32_t l = 2; l < e.tree()->levels(); ++l) nodes += std::max<std::uint64_t>(1, 256 >> (3 * (l - 2)));
  EXPECT_EQ(e.totals().vn_bytes, 2048u * 64);
  EXPECT_EQ(e.totals().tree_bytes, nodes * 64);
  EXPECT_EQ(e.vn_cache()->stats().misses, 2048u);
}

TEST(SchemeTraffic, RandomTracesKeepCacheInvariants) {
  std::mt19937_64 rng(52);
  for (const auto* name : {"sgx64", "sgx512"}) {
    auto cfg = scheme_preset(name);
    cfg.vn_cache_bytes = 1024;
    cfg.mac_cache_bytes = 512;
    MetadataEngine e(cfg);
    for (int i = 0; i < 20000; ++i) {
      const std::uint64_t addr = (rng() % (1ULL << 26)) & ~63ULL;
      e.metadata_accesses({0, addr, 64, rng() % 2 ? AccessKind::Read : AccessKind::Write, Stream::Ofmap});
    }
    e.flush();
    for (const auto* c : {e.vn_cache(), e.tree_cache()}) {
      const auto& s = c->stats();
      EXPECT_EQ(s.hits + s.misses, s.accesses);
      EXPECT_LE(s.writebacks, s.misses + s.flush_writebacks);
      EXPECT_LE(c->occupancy_lines(), c->capacity_lines());
      EXPECT_TRUE(c->dirty_tags().empty());
    }
  }
}

TEST(Security, ExpectedPostures) {
  const auto all = verify_scheme_security(scheme_preset("ours"));
  for (auto a : all_adversaries()) EXPECT_EQ(all.at(a), Outcome::Defended) << to_string(a);

  auto onchip = scheme_preset("ours");
  onchip.layer_mac_storage = MacStorage::OnChip;
  for (const auto& [a, o] : verify_scheme_security(onchip)) EXPECT_EQ(o, Outcome::Defended) << to_string(a);

  for (auto a : all_adversaries()) {
    EXPECT_EQ(verify_scheme_security(scheme_preset("baseline")).at(a), Outcome::Vulnerable);
  }
  for (const auto* n : {"sgx64", "sgx512", "mgx64", "mgx512"}) {
    for (const auto& [a, o] : verify_scheme_security(scheme_preset(n))) EXPECT_EQ(o, Outcome::Defended) << n;
  }

  auto naive = scheme_preset("ours");
  naive.bind_position = false;
  const auto nv = verify_scheme_security(naive);
  EXPECT_EQ(nv.at(Adversary::Repa), Outcome::Vulnerable);
  EXPECT_EQ(nv.at(Adversary::Tamper), Outcome::Defended);
  EXPECT_EQ(nv.at(Adversary::Replay), Outcome::Vulnerable);  // stale layer tag travels with the data

  auto shared = scheme_preset("ours");
  shared.otp_mode = OtpMode::SharedPerBlock;
  EXPECT_EQ(verify_scheme_security(shared).at(Adversary::Seca), Outcome::Vulnerable);
}

}  // namespace
