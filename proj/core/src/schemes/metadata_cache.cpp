#include "secnpu/schemes/metadata_cache.hpp"

#include <stdexcept>

namespace secnpu::schemes {

MetadataCache::MetadataCache(std::uint64_t capacity_bytes, std::uint32_t line_bytes)
    : capacity_lines_(0), line_bytes_(line_bytes) {
  if (line_bytes == 0) throw std::invalid_argument("cache line must be positive");
  if (capacity_bytes % line_bytes != 0) throw std::invalid_argument("cache capacity must be whole lines");
  capacity_lines_ = capacity_bytes / line_bytes;
}

CacheResult MetadataCache::access(std::uint64_t tag, bool write) {
  ++stats_.accesses;
  CacheResult result;
  if (auto it = index_.find(tag); it != index_.end()) {
    ++stats_.hits;
    result.hit = true;
    lines_.splice(lines_.begin(), lines_, it->second);
    if (write) it->second->dirty = true;
    return result;
  }
  ++stats_.misses;
  if (capacity_lines_ == 0) {
    // Nothing is retained, so a write goes straight back out.
    if (write) {
      ++stats_.writebacks;
      result.victim = Eviction{tag, true};
    }
    return result;
  }
  if (lines_.size() == capacity_lines_) {
    const Line& lru = lines_.back();
    result.victim = Eviction{lru.tag, lru.dirty};
    if (lru.dirty) ++stats_.writebacks;
    index_.erase(lru.tag);
    lines_.pop_back();
  }
  lines_.push_front(Line{tag, write});
  index_[tag] = lines_.begin();
  return result;
}

bool MetadataCache::contains(std::uint64_t tag) const { return index_.contains(tag); }

bool MetadataCache::is_dirty(std::uint64_t tag) const {
  auto it = index_.find(tag);
  return it != index_.end() && it->second->dirty;
}

bool MetadataCache::clean(std::uint64_t tag) {
  auto it = index_.find(tag);
  if (it == index_.end() || !it->second->dirty) return false;
  it->second->dirty = false;
  ++stats_.flush_writebacks;
  return true;
}

std::vector<std::uint64_t> MetadataCache::dirty_tags() const {
  std::vector<std::uint64_t> out;
  for (auto it = lines_.rbegin(); it != lines_.rend(); ++it) {
    if (it->dirty) out.push_back(it->tag);
  }
  return out;
}

}  // namespace secnpu::schemes
