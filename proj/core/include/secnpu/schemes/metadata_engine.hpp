#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "secnpu/common/dram_access.hpp"
#include "secnpu/schemes/config.hpp"
#include "secnpu/schemes/integrity_tree.hpp"
#include "secnpu/schemes/metadata_cache.hpp"

namespace secnpu::schemes {

enum class MetaType { Mac, Vn, Tree, LayerMac };
std::string_view to_string(MetaType type);

struct MetaAccess {
  MetaType type = MetaType::Mac;
  AccessKind kind = AccessKind::Read;
  std::uint64_t address = 0;
  std::uint32_t bytes = 0;
  bool operator==(const MetaAccess&) const = default;
};

struct TrafficTotals {
  std::uint64_t data_read_bytes = 0;
  std::uint64_t data_write_bytes = 0;
  std::uint64_t mac_bytes = 0;
  std::uint64_t vn_bytes = 0;
  std::uint64_t tree_bytes = 0;
  std::uint64_t layer_mac_bytes = 0;
  std::uint64_t data_accesses = 0;
  std::uint64_t metadata_accesses = 0;

  std::uint64_t data_bytes() const { return data_read_bytes + data_write_bytes; }
  std::uint64_t metadata_bytes() const { return mac_bytes + vn_bytes + tree_bytes + layer_mac_bytes; }
  std::uint64_t total_bytes() const { return data_bytes() + metadata_bytes(); }
  // (data + metadata) / data; 1.0 for an empty trace.
  double normalized_factor() const;
  TrafficTotals& operator+=(const TrafficTotals& other);
  bool operator==(const TrafficTotals&) const = default;
};

// Per-simulation metadata state: VN cache, tree-node cache and integrity
// tree. Metadata lives above the protected region: per-block MACs, then the
// tree levels (level 1 = VN lines), then the per-layer MAC slots.
class MetadataEngine {
 public:
  explicit MetadataEngine(const SchemeConfig& cfg);

  // Extra DRAM accesses caused by one data access. Accesses spanning several
  // protected blocks are split per block. Throws std::out_of_range outside
  // the protected region and std::invalid_argument for metadata-stream input.
  std::vector<MetaAccess> metadata_accesses(const DramAccess& access);
  // Marks the end of a layer (per-layer MAC store for off-chip layer MACs).
  std::vector<MetaAccess> end_layer();
  // Writes back every dirty cached line up to the root.
  std::vector<MetaAccess> flush();

  const TrafficTotals& totals() const { return totals_; }
  const SchemeConfig& config() const { return cfg_; }
  const IntegrityTree* tree() const { return tree_.get(); }
  const MetadataCache* vn_cache() const { return vn_cache_.get(); }
  const MetadataCache* tree_cache() const { return tree_cache_.get(); }

  std::uint64_t mac_address(std::uint64_t block) const;
  std::uint64_t layer_mac_address(std::uint64_t layer) const;

 private:
  void emit(std::vector<MetaAccess>& out, MetaType type, AccessKind kind, std::uint64_t address,
            std::uint64_t bytes);
  void touch_vn_line(std::uint64_t line, bool write, std::vector<MetaAccess>& out);
  void verify_from(std::uint32_t level, std::uint64_t index, std::vector<MetaAccess>& out);
  void update_node(std::uint32_t level, std::uint64_t index, std::vector<MetaAccess>& out);
  void handle_vn_victim(const CacheResult& r, std::vector<MetaAccess>& out);
  void handle_tree_victim(const CacheResult& r, std::vector<MetaAccess>& out);

  SchemeConfig cfg_;
  std::unique_ptr<IntegrityTree> tree_;
  std::unique_ptr<MetadataCache> vn_cache_;
  std::unique_ptr<MetadataCache> tree_cache_;
  std::uint64_t mac_base_ = 0;
  std::uint64_t layer_mac_base_ = 0;
  std::uint64_t layers_done_ = 0;
  TrafficTotals totals_;
};

// Folds metadata_accesses over the trace with persistent cache state, closes
// the trace as one layer and flushes the caches.
TrafficTotals scheme_traffic(std::span<const DramAccess> trace, const SchemeConfig& cfg);

}  // namespace secnpu::schemes
