#pragma once

#include <cstdint>
#include <vector>

#include "secnpu/tiling/pattern.hpp"

namespace secnpu::tiling {

// Overlap length between two tilings of the same axis.
//
// Identical tilings give the sliding-window overlap tile - step (0 when a
// single tile spans the extent).
// Different tilings give the longest segment shared by a pair of tiles,
// one from each grid, that straddle each other (neither contains the
// other); 0 if no such pair exists. Throws std::invalid_argument for
// invalid tilings or mismatched extents.
std::uint64_t calc_overlap_size(const AxisTiling& a, const AxisTiling& b);

// gcd(l1 - l12, l2 - l12, l12), with gcd(x, 0) = x.
// Throws std::invalid_argument if l12 > min(l1, l2) or the result would be gcd(0, 0, 0).
std::uint64_t calc_gcd_block(std::uint64_t l1, std::uint64_t l2, std::uint64_t l12);

struct OptBlock {
  std::vector<std::uint64_t> lengths;  // per dimension
  std::uint64_t element_count() const;
  bool operator==(const OptBlock&) const = default;
};

// Optimal authentication block for a pair of tilings (equal patterns give
// the intra-layer case). Per dimension the three-length GCD is refined with
// the grid steps and the extent so that clipped edge tiles and multi-tile
// phase also land on block boundaries. Throws std::invalid_argument on rank
// mismatch and std::logic_error if a tile boundary is left unaligned.
OptBlock solve_opt_block(const TilingPattern& a, const TilingPattern& b);

}  // namespace secnpu::tiling
