#include "secnpu/tiling/opt_block.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace secnpu::tiling {

std::uint64_t calc_overlap_size(const AxisTiling& a, const AxisTiling& b) {
  a.validate();
  b.validate();
  if (a.extent != b.extent) throw std::invalid_argument("calc_overlap_size: tilings cover different extents");
  if (a == b) return a.tile_count() > 1 ? a.tile - a.step : 0;

  std::uint64_t best = 0;
  const auto ta = a.tiles();
  const auto tb = b.tiles();
  // Both tile lists are sorted by begin and end, so a sliding lower bound
  // skips pairs that cannot intersect.
  std::size_t first_b = 0;
  for (const auto& x : ta) {
    while (first_b < tb.size() && tb[first_b].end <= x.begin) ++first_b;
    for (std::size_t j = first_b; j < tb.size() && tb[j].begin < x.end; ++j) {
      const auto& y = tb[j];
      const Interval shared{std::max(x.begin, y.begin), std::min(x.end, y.end)};
      if (shared == x || shared == y) continue;  // containment, not a straddle
      best = std::max(best, shared.length());
    }
  }
  return best;
}

std::uint64_t calc_gcd_block(std::uint64_t l1, std::uint64_t l2, std::uint64_t l12) {
  if (l12 > std::min(l1, l2)) {
    throw std::invalid_argument("calc_gcd_block: overlap " + std::to_string(l12) + " exceeds a tile length");
  }
  const std::uint64_t g = std::gcd(std::gcd(l1 - l12, l2 - l12), l12);
  if (g == 0) throw std::invalid_argument("calc_gcd_block: all lengths are zero");
  return g;
}

std::uint64_t OptBlock::element_count() const {
  std::uint64_t n = 1;
  for (auto l : lengths) n *= l;
  return n;
}

OptBlock solve_opt_block(const TilingPattern& a, const TilingPattern& b) {
  if (a.rank() != b.rank() || a.rank() == 0) throw std::invalid_argument("solve_opt_block: rank mismatch");
  OptBlock out;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    const auto& pa = a.axes[i];
    const auto& pb = b.axes[i];
    const std::uint64_t overlap = calc_overlap_size(pa, pb);
    std::uint64_t g = calc_gcd_block(pa.tile, pb.tile, overlap);
    if (pa.tile_count() > 1) g = std::gcd(g, pa.step);
    if (pb.tile_count() > 1) g = std::gcd(g, pb.step);
    g = std::gcd(g, pa.extent);

    for (const auto* axis : {&pa, &pb}) {
      for (auto cut : axis->cut_points()) {
        if (cut % g != 0) {
          throw std::logic_error("solve_opt_block: boundary " + std::to_string(cut) + " on axis " +
                                 std::to_string(i) + " is not a multiple of " + std::to_string(g));
        }
      }
    }
    out.lengths.push_back(g);
  }
  return out;
}

}  // namespace secnpu::tiling
