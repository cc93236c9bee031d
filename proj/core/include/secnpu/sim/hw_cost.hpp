#pragma once

#include <cstdint>
#include <string>

#include "secnpu/schemes/config.hpp"

namespace secnpu::sim {

struct AesEngineSpec {
  std::string name;
  double latency_cycles = 0;  // cycles per 16-byte block
  double area_gates = 0;
  double energy_pj = 0;  // per 16-byte block
};

// Defaults are the three AES implementations the design space starts from;
// lanes are built from the parallel engine.
struct HwCostModel {
  AesEngineSpec pipelined{"pipelined", 1, 78.8e3, 165.1};
  AesEngineSpec parallel{"parallel", 11, 9.2e3, 194.6};
  AesEngineSpec serial{"serial", 336, 3.0e3, 768.0};
  double xor_lane_area_gates = 50;  // one 128-bit XOR lane
  double xor_lane_energy_pj = 1.0;  // per 16 bytes through a lane

  const AesEngineSpec& lane_engine() const { return parallel; }
  // Bytes per cycle a single lane sustains.
  double lane_throughput() const { return 16.0 / lane_engine().latency_cycles; }
};

struct CryptoCost {
  schemes::CryptoStyle style = schemes::CryptoStyle::None;
  std::uint32_t lanes = 0;
  double area_gates = 0;
  double energy_pj_per_16b = 0;
  double throughput_bytes_per_cycle = 0;
};

// T-AES replicates the full engine per lane. B-AES runs one engine and
// expands its round keys into per-lane pads with XOR lanes, so each 16 bytes
// costs one lane's XOR plus a 1/n share of the engine.
CryptoCost crypto_cost_for_lanes(std::uint32_t lanes, schemes::CryptoStyle style, const HwCostModel& hw);

// Lanes n = ceil(required_bw / lane_throughput). Throws std::invalid_argument
// unless required_bw > 0.
CryptoCost crypto_hw_cost(double required_bytes_per_cycle, schemes::CryptoStyle style, const HwCostModel& hw);

}  // namespace secnpu::sim
