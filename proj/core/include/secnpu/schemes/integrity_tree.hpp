#pragma once

#include <cstdint>
#include <vector>

namespace secnpu::schemes {

// Counter tree over the version numbers. Level 1 holds the VN lines
// (counters_per_line VNs each); every higher level packs `arity` children
// per node. The single node of the top level is the on-chip root.
class IntegrityTree {
 public:
  IntegrityTree(std::uint64_t protected_blocks, std::uint32_t counters_per_line, std::uint32_t arity,
                std::uint32_t node_bytes, std::uint64_t base_address);

  // Number of levels including the root; ceil(log_arity(blocks)) when
  // counters_per_line == arity.
  std::uint32_t levels() const { return static_cast<std::uint32_t>(counts_.size()); }
  std::uint64_t nodes_at(std::uint32_t level) const;
  bool is_root(std::uint32_t level) const { return level == levels(); }

  std::uint64_t vn_line_of(std::uint64_t block) const { return block / counters_per_line_; }
  std::uint64_t parent_index(std::uint64_t index) const { return index / arity_; }
  std::uint64_t node_address(std::uint32_t level, std::uint64_t index) const;
  std::uint64_t end_address() const { return end_; }
  std::uint32_t node_bytes() const { return node_bytes_; }
  std::uint32_t arity() const { return arity_; }

 private:
  std::uint32_t counters_per_line_;
  std::uint32_t arity_;
  std::uint32_t node_bytes_;
  std::vector<std::uint64_t> counts_;  // counts_[l - 1] = nodes at level l
  std::vector<std::uint64_t> bases_;
  std::uint64_t end_ = 0;
};

}  // namespace secnpu::schemes
