#include "secnpu/schemes/integrity_tree.hpp"

#include <stdexcept>

namespace secnpu::schemes {

namespace {
std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }
}  // namespace

IntegrityTree::IntegrityTree(std::uint64_t protected_blocks, std::uint32_t counters_per_line, std::uint32_t arity,
                             std::uint32_t node_bytes, std::uint64_t base_address)
    : counters_per_line_(counters_per_line), arity_(arity), node_bytes_(node_bytes) {
  if (protected_blocks == 0 || counters_per_line == 0 || arity < 2 || node_bytes == 0) {
    throw std::invalid_argument("degenerate integrity tree geometry");
  }
  std::uint64_t count = ceil_div(protected_blocks, counters_per_line);
  counts_.push_back(count);
  while (count > 1) {
    count = ceil_div(count, arity);
    counts_.push_back(count);
  }
  std::uint64_t addr = base_address;
  for (std::uint64_t c : counts_) {
    bases_.push_back(addr);
    addr += c * node_bytes;
  }
  end_ = addr;
}

std::uint64_t IntegrityTree::nodes_at(std::uint32_t level) const {
  if (level == 0 || level > levels()) throw std::out_of_range("tree level out of range");
  return counts_[level - 1];
}

std::uint64_t IntegrityTree::node_address(std::uint32_t level, std::uint64_t index) const {
  if (level == 0 || level > levels() || index >= counts_[level - 1]) {
    throw std::out_of_range("tree node out of range");
  }
  return bases_[level - 1] + index * node_bytes_;
}

}  // namespace secnpu::schemes
