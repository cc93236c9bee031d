#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

namespace secnpu::schemes {

struct CacheStats {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t writebacks = 0;        // dirty evictions
  std::uint64_t flush_writebacks = 0;  // dirty lines cleaned by flush()/clean()
};

struct Eviction {
  std::uint64_t tag = 0;
  bool dirty = false;
};

struct CacheResult {
  bool hit = false;
  std::optional<Eviction> victim;
};

// Fully associative LRU, write-back, write-allocate. Lines are identified by
// an opaque tag chosen by the caller.
class MetadataCache {
 public:
  // capacity_bytes must be a whole number of lines; 0 lines means every
  // access misses and nothing is retained.
  MetadataCache(std::uint64_t capacity_bytes, std::uint32_t line_bytes);

  CacheResult access(std::uint64_t tag, bool write);
  bool contains(std::uint64_t tag) const;
  bool is_dirty(std::uint64_t tag) const;

  // Marks a resident line clean; returns whether it was dirty.
  bool clean(std::uint64_t tag);
  // Resident dirty tags, least recently used first.
  std::vector<std::uint64_t> dirty_tags() const;

  std::uint64_t capacity_lines() const { return capacity_lines_; }
  std::uint64_t occupancy_lines() const { return lines_.size(); }
  std::uint32_t line_bytes() const { return line_bytes_; }
  const CacheStats& stats() const { return stats_; }

 private:
  struct Line {
    std::uint64_t tag;
    bool dirty;
  };
  std::uint64_t capacity_lines_;
  std::uint32_t line_bytes_;
  std::list<Line> lines_;  // front = most recently used
  std::unordered_map<std::uint64_t, std::list<Line>::iterator> index_;
  CacheStats stats_;
};

}  // namespace secnpu::schemes
