#include "secnpu/schemes/metadata_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace secnpu::schemes {

namespace {

constexpr std::uint64_t kRegionAlign = 4096;
constexpr unsigned kLevelShift = 48;

std::uint64_t align_up(std::uint64_t x, std::uint64_t a) { return (x + a - 1) / a * a; }

std::uint64_t tree_tag(std::uint32_t level, std::uint64_t index) {
  return (static_cast<std::uint64_t>(level) << kLevelShift) | index;
}
std::uint32_t tag_level(std::uint64_t tag) { return static_cast<std::uint32_t>(tag >> kLevelShift); }
std::uint64_t tag_index(std::uint64_t tag) { return tag & ((1ULL << kLevelShift) - 1); }

}  // namespace

std::string_view to_string(MetaType type) {
  switch (type) {
    case MetaType::Mac:
      return "mac";
    case MetaType::Vn:
      return "vn";
    case MetaType::Tree:
      return "tree";
    case MetaType::LayerMac:
      return "layer_mac";
  }
  return "?";
}

double TrafficTotals::normalized_factor() const {
  if (data_bytes() == 0) return 1.0;
  return static_cast<double>(total_bytes()) / static_cast<double>(data_bytes());
}

TrafficTotals& TrafficTotals::operator+=(const TrafficTotals& o) {
  data_read_bytes += o.data_read_bytes;
  data_write_bytes += o.data_write_bytes;
  mac_bytes += o.mac_bytes;
  vn_bytes += o.vn_bytes;
  tree_bytes += o.tree_bytes;
  layer_mac_bytes += o.layer_mac_bytes;
  data_accesses += o.data_accesses;
  metadata_accesses += o.metadata_accesses;
  return *this;
}

MetadataEngine::MetadataEngine(const SchemeConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  mac_base_ = align_up(cfg_.protected_bytes, kRegionAlign);
  std::uint64_t next = align_up(mac_base_ + cfg_.protected_blocks() * cfg_.mac_bytes, kRegionAlign);
  if (cfg_.kind == SchemeKind::SgxLike) {
    tree_ = std::make_unique<IntegrityTree>(cfg_.protected_blocks(), cfg_.vns_per_line(), cfg_.tree_arity,
                                            cfg_.node_bytes, next);
    vn_cache_ = std::make_unique<MetadataCache>(cfg_.vn_cache_bytes, cfg_.cache_line);
    tree_cache_ = std::make_unique<MetadataCache>(cfg_.mac_cache_bytes, cfg_.cache_line);
    next = align_up(tree_->end_address(), kRegionAlign);
  }
  layer_mac_base_ = next;
}

std::uint64_t MetadataEngine::mac_address(std::uint64_t block) const { return mac_base_ + block * cfg_.mac_bytes; }

std::uint64_t MetadataEngine::layer_mac_address(std::uint64_t layer) const {
  return layer_mac_base_ + layer * cfg_.mac_bytes;
}

void MetadataEngine::emit(std::vector<MetaAccess>& out, MetaType type, AccessKind kind, std::uint64_t address,
                          std::uint64_t bytes) {
  out.push_back(MetaAccess{type, kind, address, static_cast<std::uint32_t>(bytes)});
  ++totals_.metadata_accesses;
  switch (type) {
    case MetaType::Mac:
      totals_.mac_bytes += bytes;
      break;
    case MetaType::Vn:
      totals_.vn_bytes += bytes;
      break;
    case MetaType::Tree:
      totals_.tree_bytes += bytes;
      break;
    case MetaType::LayerMac:
      totals_.layer_mac_bytes += bytes;
      break;
  }
}

std::vector<MetaAccess> MetadataEngine::metadata_accesses(const DramAccess& access) {
  if (access.stream == Stream::Metadata) throw std::invalid_argument("metadata accesses are not protected data");
  if (access.bytes == 0) return {};
  if (access.end() > cfg_.protected_bytes) throw std::out_of_range("access outside the protected region");

  ++totals_.data_accesses;
  (access.kind == AccessKind::Read ? totals_.data_read_bytes : totals_.data_write_bytes) += access.bytes;

  std::vector<MetaAccess> out;
  if (cfg_.kind == SchemeKind::Baseline || cfg_.kind == SchemeKind::Proposed) return out;

  const std::uint64_t g = cfg_.protection_granularity;
  const std::uint64_t first = access.address / g;
  const std::uint64_t last = (access.end() - 1) / g;
  if (first * g > access.address || (last + 1) * g < access.end()) {
    throw std::logic_error("protected-block split left bytes uncovered");
  }

  // Per-block MACs are contiguous, so one transfer covers the whole span.
  emit(out, MetaType::Mac, access.kind, mac_address(first), (last - first + 1) * cfg_.mac_bytes);

  if (cfg_.kind == SchemeKind::SgxLike && tree_->levels() > 1) {
    const bool write = access.kind == AccessKind::Write;
    for (std::uint64_t line = tree_->vn_line_of(first); line <= tree_->vn_line_of(last); ++line) {
      touch_vn_line(line, write, out);
    }
  }
  return out;
}

void MetadataEngine::touch_vn_line(std::uint64_t line, bool write, std::vector<MetaAccess>& out) {
  CacheResult r = vn_cache_->access(line, write);
  if (!r.hit) {
    emit(out, MetaType::Vn, AccessKind::Read, tree_->node_address(1, line), tree_->node_bytes());
    verify_from(2, tree_->parent_index(line), out);
  }
  handle_vn_victim(r, out);
}

void MetadataEngine::handle_vn_victim(const CacheResult& r, std::vector<MetaAccess>& out) {
  if (!r.victim || !r.victim->dirty) return;
  const std::uint64_t line = r.victim->tag;
  emit(out, MetaType::Vn, AccessKind::Write, tree_->node_address(1, line), tree_->node_bytes());
  update_node(2, tree_->parent_index(line), out);
}

// Fetches ancestors until one is already cached (trusted) or the root.
void MetadataEngine::verify_from(std::uint32_t level, std::uint64_t index, std::vector<MetaAccess>& out) {
  for (; !tree_->is_root(level); ++level, index = tree_->parent_index(index)) {
    CacheResult r = tree_cache_->access(tree_tag(level, index), false);
    if (r.hit) return;
    emit(out, MetaType::Tree, AccessKind::Read, tree_->node_address(level, index), tree_->node_bytes());
    handle_tree_victim(r, out);
  }
}

// A child changed: its parent counter is bumped (lazy, write-back).
void MetadataEngine::update_node(std::uint32_t level, std::uint64_t index, std::vector<MetaAccess>& out) {
  if (tree_->is_root(level)) return;
  CacheResult r = tree_cache_->access(tree_tag(level, index), true);
  if (!r.hit) {
    emit(out, MetaType::Tree, AccessKind::Read, tree_->node_address(level, index), tree_->node_bytes());
    verify_from(level + 1, tree_->parent_index(index), out);
  }
  handle_tree_victim(r, out);
}

void MetadataEngine::handle_tree_victim(const CacheResult& r, std::vector<MetaAccess>& out) {
  if (!r.victim || !r.victim->dirty) return;
  const std::uint32_t level = tag_level(r.victim->tag);
  const std::uint64_t index = tag_index(r.victim->tag);
  emit(out, MetaType::Tree, AccessKind::Write, tree_->node_address(level, index), tree_->node_bytes());
  update_node(level + 1, tree_->parent_index(index), out);
}

std::vector<MetaAccess> MetadataEngine::end_layer() {
  std::vector<MetaAccess> out;
  if (cfg_.kind == SchemeKind::Proposed && cfg_.layer_mac_storage == MacStorage::OffChip) {
    emit(out, MetaType::LayerMac, AccessKind::Write, layer_mac_address(layers_done_), cfg_.mac_bytes);
  }
  ++layers_done_;
  return out;
}

std::vector<MetaAccess> MetadataEngine::flush() {
  std::vector<MetaAccess> out;
  if (!tree_ || tree_->levels() <= 1) return out;
  for (std::uint64_t line : vn_cache_->dirty_tags()) {
    vn_cache_->clean(line);
    emit(out, MetaType::Vn, AccessKind::Write, tree_->node_address(1, line), tree_->node_bytes());
    update_node(2, tree_->parent_index(line), out);
  }
  // Lowest level first so each parent absorbs all child updates before it
  // is itself written back.
  for (;;) {
    std::vector<std::uint64_t> dirty = tree_cache_->dirty_tags();
    if (dirty.empty()) break;
    const std::uint64_t tag = *std::min_element(dirty.begin(), dirty.end(), [](std::uint64_t a, std::uint64_t b) {
      return tag_level(a) < tag_level(b);
    });
    tree_cache_->clean(tag);
    emit(out, MetaType::Tree, AccessKind::Write, tree_->node_address(tag_level(tag), tag_index(tag)),
         tree_->node_bytes());
    update_node(tag_level(tag) + 1, tree_->parent_index(tag_index(tag)), out);
  }
  return out;
}

TrafficTotals scheme_traffic(std::span<const DramAccess> trace, const SchemeConfig& cfg) {
  if (trace.empty()) return {};
  MetadataEngine engine(cfg);
  for (const DramAccess& a : trace) engine.metadata_accesses(a);
  engine.end_layer();
  engine.flush();
  return engine.totals();
}

}  // namespace secnpu::schemes
