#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace secnpu::sim {

enum class Dataflow { OutputStationary };

struct AcceleratorConfig {
  std::string name = "server";
  std::uint32_t pe_rows = 256;
  std::uint32_t pe_cols = 256;
  double bandwidth_bytes_per_sec = 20e9;
  double frequency_hz = 1e9;
  std::uint64_t sram_bytes = 24ULL << 20;
  Dataflow dataflow = Dataflow::OutputStationary;
  std::uint32_t element_bytes = 1;
  std::uint64_t dram_bytes = 16ULL << 30;

  double bytes_per_cycle() const { return bandwidth_bytes_per_sec / frequency_hz; }
  // SRAM is split evenly between ifmap, weight and ofmap buffers.
  std::uint64_t buffer_bytes() const { return sram_bytes / 3; }
  void validate() const;
  bool operator==(const AcceleratorConfig&) const = default;
};

AcceleratorConfig server_preset();
AcceleratorConfig edge_preset();
const std::vector<std::string>& accelerator_preset_names();
// Throws std::invalid_argument on unknown names.
AcceleratorConfig accelerator_preset(std::string_view name);

// "preset" selects the starting point; every other field overrides it.
AcceleratorConfig accelerator_from_json(const nlohmann::json& j, AcceleratorConfig base);
nlohmann::json to_json(const AcceleratorConfig& acc);

}  // namespace secnpu::sim
