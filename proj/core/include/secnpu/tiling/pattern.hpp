#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "secnpu/tiling/layer.hpp"

namespace secnpu::tiling {

struct Interval {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;  // exclusive
  std::uint64_t length() const { return end - begin; }
  bool operator==(const Interval&) const = default;
};

// Tiling of one dimension of length `extent`: tiles start at 0, step,
// 2*step, ... and the last tile is clipped at the extent. step < tile means
// neighbouring tiles overlap.
struct AxisTiling {
  std::uint64_t extent = 1;
  std::uint64_t tile = 1;
  std::uint64_t step = 1;

  // Throws std::invalid_argument unless 1 <= step <= tile <= extent.
  void validate() const;
  std::uint64_t tile_count() const;
  Interval tile_interval(std::uint64_t j) const;
  std::vector<Interval> tiles() const;
  // Sorted, deduplicated tile boundaries including 0 and extent.
  std::vector<std::uint64_t> cut_points() const;
  // Sum of tile lengths (elements fetched along this axis).
  std::uint64_t fetched_length() const;

  bool operator==(const AxisTiling&) const = default;
};

// Per-dimension tilings in tensor-layout order.
struct TilingPattern {
  std::vector<AxisTiling> axes;
  std::size_t rank() const { return axes.size(); }
  bool operator==(const TilingPattern&) const = default;
};

// Sliding-window pattern over the ifmap (H, W) of a normalized layer:
// window R x S moving by stride. Throws when stride exceeds the window.
TilingPattern sliding_window_pattern(const LayerShape& shape);

struct Tile {
  std::size_t index = 0;
  std::vector<Interval> ranges;  // one per pattern axis
  std::uint64_t element_count() const;
};

// Tiles in row-major order (last axis fastest). A rank-2 pattern maps to the
// ifmap (H, W) and a rank-4 pattern to (N, C, H, W); axis extents must equal
// the shape's.
std::vector<Tile> enumerate_tiles(const LayerShape& shape, const TilingPattern& pattern);

// (sum of tile element counts) / (distinct elements).
double overlap_traffic_factor(const LayerShape& shape, const TilingPattern& pattern);

}  // namespace secnpu::tiling
