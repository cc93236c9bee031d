#include "secnpu/tiling/pattern.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace secnpu::tiling {

void AxisTiling::validate() const {
  if (step == 0 || tile == 0 || extent == 0) throw std::invalid_argument("AxisTiling: zero length");
  if (step > tile) throw std::invalid_argument("AxisTiling: step " + std::to_string(step) + " exceeds tile " + std::to_string(tile));
  if (tile > extent) {
    throw std::invalid_argument("AxisTiling: tile " + std::to_string(tile) + " exceeds extent " + std::to_string(extent));
  }
}

std::uint64_t AxisTiling::tile_count() const {
  validate();
  return 1 + (extent - tile + step - 1) / step;
}

Interval AxisTiling::tile_interval(std::uint64_t j) const {
  const std::uint64_t begin = j * step;
  return Interval{begin, std::min(begin + tile, extent)};
}

std::vector<Interval> AxisTiling::tiles() const {
  const auto count = tile_count();
  std::vector<Interval> out;
  out.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) out.push_back(tile_interval(j));
  return out;
}

std::vector<std::uint64_t> AxisTiling::cut_points() const {
  std::vector<std::uint64_t> cuts;
  for (const auto& t : tiles()) {
    cuts.push_back(t.begin);
    cuts.push_back(t.end);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

std::uint64_t AxisTiling::fetched_length() const {
  const auto count = tile_count();
  // every tile is full length except possibly the clipped last one
  return (count - 1) * tile + tile_interval(count - 1).length();
}

TilingPattern sliding_window_pattern(const LayerShape& shape) {
  const LayerShape norm = shape.normalized();
  TilingPattern pat{{AxisTiling{norm.h, norm.r, norm.stride}, AxisTiling{norm.w, norm.s, norm.stride}}};
  for (const auto& a : pat.axes) a.validate();
  return pat;
}

std::uint64_t Tile::element_count() const {
  std::uint64_t n = 1;
  for (const auto& r : ranges) n *= r.length();
  return n;
}

namespace {

std::vector<std::uint64_t> shape_extents(const LayerShape& shape, std::size_t rank) {
  if (rank == 2) return {shape.h, shape.w};
  if (rank == 4) return {shape.n, shape.c, shape.h, shape.w};
  throw std::invalid_argument("tiling pattern must have rank 2 (H, W) or 4 (N, C, H, W), got " + std::to_string(rank));
}

void check_covers(const LayerShape& shape, const TilingPattern& pattern) {
  shape.validate();
  const auto extents = shape_extents(shape, pattern.rank());
  for (std::size_t i = 0; i < extents.size(); ++i) {
    const auto& axis = pattern.axes[i];
    if (axis.tile > extents[i]) {
      throw std::invalid_argument("tile extent " + std::to_string(axis.tile) + " exceeds layer extent " +
                                  std::to_string(extents[i]) + " on axis " + std::to_string(i));
    }
    if (axis.extent != extents[i]) {
      throw std::invalid_argument("pattern extent " + std::to_string(axis.extent) + " does not match layer extent " +
                                  std::to_string(extents[i]) + " on axis " + std::to_string(i));
    }
    axis.validate();
  }
}

}  // namespace

std::vector<Tile> enumerate_tiles(const LayerShape& shape, const TilingPattern& pattern) {
  check_covers(shape, pattern);
  std::vector<std::vector<Interval>> per_axis;
  std::size_t total = 1;
  for (const auto& axis : pattern.axes) {
    per_axis.push_back(axis.tiles());
    total *= per_axis.back().size();
  }
  std::vector<Tile> out;
  out.reserve(total);
  std::vector<std::size_t> idx(per_axis.size(), 0);
  for (std::size_t t = 0; t < total; ++t) {
    Tile tile;
    tile.index = t;
    for (std::size_t a = 0; a < per_axis.size(); ++a) tile.ranges.push_back(per_axis[a][idx[a]]);
    out.push_back(std::move(tile));
    for (std::size_t a = per_axis.size(); a-- > 0;) {
      if (++idx[a] < per_axis[a].size()) break;
      idx[a] = 0;
    }
  }
  return out;
}

double overlap_traffic_factor(const LayerShape& shape, const TilingPattern& pattern) {
  check_covers(shape, pattern);
  double fetched = 1.0;
  double distinct = 1.0;
  for (const auto& axis : pattern.axes) {
    fetched *= static_cast<double>(axis.fetched_length());
    distinct *= static_cast<double>(axis.extent);
  }
  return fetched / distinct;
}

}  // namespace secnpu::tiling
