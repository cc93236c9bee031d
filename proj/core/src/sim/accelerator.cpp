#include "secnpu/sim/accelerator.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace secnpu::sim {

void AcceleratorConfig::validate() const {
  if (pe_rows == 0 || pe_cols == 0) throw std::invalid_argument("PE grid must be non-empty");
  if (!(bandwidth_bytes_per_sec > 0) || !(frequency_hz > 0)) {
    throw std::invalid_argument("bandwidth and frequency must be positive");
  }
  if (sram_bytes < 3) throw std::invalid_argument("SRAM too small to split into three buffers");
  if (element_bytes != 1) throw std::invalid_argument("only 1-byte elements are modeled");
  if (dram_bytes == 0) throw std::invalid_argument("DRAM size must be positive");
}

AcceleratorConfig server_preset() { return AcceleratorConfig{}; }

AcceleratorConfig edge_preset() {
  AcceleratorConfig a;
  a.name = "edge";
  a.pe_rows = 32;
  a.pe_cols = 32;
  a.bandwidth_bytes_per_sec = 10e9;
  a.frequency_hz = 2.75e9;
  a.sram_bytes = 480ULL << 10;
  return a;
}

const std::vector<std::string>& accelerator_preset_names() {
  static const std::vector<std::string> names{"server", "edge"};
  return names;
}

AcceleratorConfig accelerator_preset(std::string_view name) {
  if (name == "server") return server_preset();
  if (name == "edge") return edge_preset();
  throw std::invalid_argument("unknown accelerator preset '" + std::string(name) + "'; valid presets: server edge");
}

AcceleratorConfig accelerator_from_json(const nlohmann::json& j, AcceleratorConfig a) {
  if (!j.is_object()) throw std::invalid_argument("accelerator config must be a JSON object");
  if (j.contains("preset")) a = accelerator_preset(j.at("preset").get<std::string>());
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "preset") {
      } else if (key == "name") {
        a.name = v.get<std::string>();
      } else if (key == "pe_rows") {
        a.pe_rows = v.get<std::uint32_t>();
      } else if (key == "pe_cols") {
        a.pe_cols = v.get<std::uint32_t>();
      } else if (key == "bandwidth_bytes_per_sec") {
        a.bandwidth_bytes_per_sec = v.get<double>();
      } else if (key == "frequency_hz") {
        a.frequency_hz = v.get<double>();
      } else if (key == "sram_bytes") {
        a.sram_bytes = v.get<std::uint64_t>();
      } else if (key == "element_bytes") {
        a.element_bytes = v.get<std::uint32_t>();
      } else if (key == "dram_bytes") {
        a.dram_bytes = v.get<std::uint64_t>();
      } else if (key == "dataflow") {
        if (v.get<std::string>() != "output_stationary") {
          throw std::invalid_argument("only output_stationary dataflow is modeled");
        }
      } else {
        throw std::invalid_argument("unknown accelerator field '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("accelerator field '" + key + "': " + e.what());
    }
  }
  a.validate();
  return a;
}

nlohmann::json to_json(const AcceleratorConfig& a) {
  return nlohmann::json{{"name", a.name},
                        {"pe_rows", a.pe_rows},
                        {"pe_cols", a.pe_cols},
                        {"bandwidth_bytes_per_sec", a.bandwidth_bytes_per_sec},
                        {"frequency_hz", a.frequency_hz},
                        {"sram_bytes", a.sram_bytes},
                        {"dataflow", "output_stationary"},
                        {"element_bytes", a.element_bytes},
                        {"dram_bytes", a.dram_bytes}};
}

}  // namespace secnpu::sim
