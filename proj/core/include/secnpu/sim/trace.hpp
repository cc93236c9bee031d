#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "secnpu/common/dram_access.hpp"
#include "secnpu/sim/accelerator.hpp"
#include "secnpu/tiling/layer.hpp"
#include "secnpu/tiling/pattern.hpp"

namespace secnpu::sim {

// Largest transfer emitted by the trace synthesizer; ranges are split at
// these boundaries.
inline constexpr std::uint64_t kBurstBytes = 4096;

// Output-stationary tiling of one layer: the ofmap is cut into tile_p x tile_q
// output tiles, each computed from a (tile_p-1)*stride+R by
// (tile_q-1)*stride+S ifmap window over all channels.
struct TileSchedule {
  std::uint64_t tile_p = 1;
  std::uint64_t tile_q = 1;
  bool weights_resident = true;  // weights read once instead of once per tile

  std::uint64_t tiles_p(const tiling::LayerShape& shape) const;
  std::uint64_t tiles_q(const tiling::LayerShape& shape) const;
  std::uint64_t tile_count(const tiling::LayerShape& shape) const;
  // (H, W) tiling of the ifmap, valid while stride <= filter size.
  tiling::TilingPattern ifmap_pattern(const tiling::LayerShape& shape) const;
  // (P, Q) tiling of the ofmap.
  tiling::TilingPattern ofmap_pattern(const tiling::LayerShape& shape) const;
  bool operator==(const TileSchedule&) const = default;
};

// Largest output tile whose ifmap window and ofmap tile each fit a third of
// the SRAM: full output rows first, then narrower row segments, never below
// 1 x 1. The shape is normalized first.
TileSchedule plan_tiles(const tiling::LayerShape& shape, const AcceleratorConfig& acc);

// Channels-last tensors, each region starting on a kBurstBytes boundary:
// ifmap (N, H, W, C), weights (K, R, S, C), ofmap (N, P, Q, K).
struct TensorLayout {
  std::uint64_t ifmap_base = 0;
  std::uint64_t weight_base = 0;
  std::uint64_t ofmap_base = 0;
  std::uint64_t end = 0;
};
TensorLayout layout_layer(const tiling::LayerShape& shape, std::uint64_t base);

// Layer trace at base address 0 starting at cycle 0. Issue cycles assume the
// DRAM streams at the configured bytes per cycle. Throws
// std::invalid_argument when the layer does not fit in DRAM.
std::vector<DramAccess> synthesize_trace(const tiling::LayerShape& shape, const AcceleratorConfig& acc);

struct LayerTrace {
  tiling::LayerShape shape;
  TileSchedule schedule;
  TensorLayout layout;
  std::vector<DramAccess> accesses;
};

struct WorkloadTrace {
  std::string name;
  std::vector<LayerTrace> layers;
  std::vector<DramAccess> flatten() const;
};

// Layers are placed one after another and run back to back.
WorkloadTrace synthesize_workload(std::string name, std::span<const tiling::LayerShape> layers,
                                  const AcceleratorConfig& acc);

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, const std::string& what)
      : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// CSV with header `cycle,address,bytes,kind,stream`; address in hex (0x...).
void export_trace(std::ostream& out, std::span<const DramAccess> trace);
// Adds `relocate` to every address and checks it stays within dram_bytes.
std::vector<DramAccess> parse_trace(std::istream& in, std::uint64_t relocate = 0,
                                    std::uint64_t dram_bytes = 16ULL << 30);
std::vector<DramAccess> ingest_trace(const std::filesystem::path& path, std::uint64_t relocate = 0,
                                     std::uint64_t dram_bytes = 16ULL << 30);

}  // namespace secnpu::sim
