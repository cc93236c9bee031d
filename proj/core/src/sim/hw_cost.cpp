#include "secnpu/sim/hw_cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace secnpu::sim {

CryptoCost crypto_cost_for_lanes(std::uint32_t lanes, schemes::CryptoStyle style, const HwCostModel& hw) {
  CryptoCost c;
  c.style = style;
  if (style == schemes::CryptoStyle::None) return c;
  if (lanes == 0) throw std::invalid_argument("crypto needs at least one lane");
  const AesEngineSpec& e = hw.lane_engine();
  const double n = lanes;
  c.lanes = lanes;
  c.throughput_bytes_per_cycle = n * hw.lane_throughput();
  if (style == schemes::CryptoStyle::TAes) {
    c.area_gates = n * e.area_gates;
    c.energy_pj_per_16b = e.energy_pj;
  } else {
    c.area_gates = e.area_gates + n * hw.xor_lane_area_gates;
    c.energy_pj_per_16b = e.energy_pj / n + hw.xor_lane_energy_pj;
  }
  return c;
}

CryptoCost crypto_hw_cost(double required_bytes_per_cycle, schemes::CryptoStyle style, const HwCostModel& hw) {
  if (!(required_bytes_per_cycle > 0)) throw std::invalid_argument("required bandwidth must be positive");
  // The tolerance keeps exact multiples of the lane rate from rounding up.
  const double lanes = std::ceil(required_bytes_per_cycle / hw.lane_throughput() - 1e-9);
  return crypto_cost_for_lanes(static_cast<std::uint32_t>(std::max(1.0, lanes)), style, hw);
}

}  // namespace secnpu::sim
