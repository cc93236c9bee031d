#include "secnpu/sim/report_io.hpp"

#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "secnpu/schemes/config.hpp"

namespace secnpu::sim {

namespace {

nlohmann::json traffic_json(const schemes::TrafficTotals& t) {
  return nlohmann::json{{"data_read_bytes", t.data_read_bytes},
                        {"data_write_bytes", t.data_write_bytes},
                        {"mac_bytes", t.mac_bytes},
                        {"vn_bytes", t.vn_bytes},
                        {"tree_bytes", t.tree_bytes},
                        {"layer_mac_bytes", t.layer_mac_bytes},
                        {"data_accesses", t.data_accesses},
                        {"metadata_accesses", t.metadata_accesses},
                        {"metadata_bytes", t.metadata_bytes()},
                        {"total_bytes", t.total_bytes()}};
}

}  // namespace

nlohmann::json to_json(const SchemeReport& r) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : r.layers) {
    layers.push_back({{"name", l.name},
                      {"compute_cycles", l.compute_cycles},
                      {"mem_cycles", l.mem_cycles},
                      {"crypto_cycles", l.crypto_cycles},
                      {"crypto_stall_cycles", l.crypto_stall_cycles},
                      {"exec_cycles", l.exec_cycles},
                      {"traffic", traffic_json(l.traffic)}});
  }
  return nlohmann::json{
      {"workload", r.workload},
      {"scheme", r.scheme},
      {"accelerator", r.accelerator},
      {"exec_cycles", r.exec_cycles},
      {"compute_cycles", r.compute_cycles},
      {"mem_cycles", r.mem_cycles},
      {"crypto_stall_cycles", r.crypto_stall_cycles},
      {"traffic", traffic_json(r.traffic)},
      {"encrypted_bytes", r.encrypted_bytes},
      {"energy_pj", {{"dram", r.dram_energy_pj}, {"crypto", r.crypto_energy_pj}, {"total", r.energy_pj()}}},
      {"crypto_hw",
       {{"style", schemes::to_string(r.crypto.style)},
        {"lanes", r.crypto.lanes},
        {"area_gates", r.crypto.area_gates},
        {"energy_pj_per_16b", r.crypto.energy_pj_per_16b},
        {"throughput_bytes_per_cycle", r.crypto.throughput_bytes_per_cycle}}},
      {"baseline",
       {{"exec_cycles", r.baseline_exec_cycles}, {"bytes", r.baseline_bytes}, {"energy_pj", r.baseline_energy_pj}}},
      {"normalized",
       {{"traffic", r.normalized.traffic},
        {"time", r.normalized.time},
        {"energy", r.normalized.energy},
        {"energy_total", r.normalized.energy_total}}},
      {"layers", layers},
  };
}

void write_summary_text(std::ostream& out, std::span<const SchemeReport> reports) {
  out << fmt::format("{:<14} {:<10} {:<8} {:>9} {:>9} {:>9} {:>9} {:>12} {:>12} {:>12}\n", "workload", "scheme",
                     "accel", "traffic", "time", "energy", "energy+c", "mac_bytes", "vn_bytes", "tree_bytes");
  for (const auto& r : reports) {
    out << fmt::format("{:<14} {:<10} {:<8} {:>9.4f} {:>9.4f} {:>9.4f} {:>9.4f} {:>12} {:>12} {:>12}\n", r.workload,
                       r.scheme, r.accelerator, r.normalized.traffic, r.normalized.time, r.normalized.energy,
                       r.normalized.energy_total, r.traffic.mac_bytes, r.traffic.vn_bytes, r.traffic.tree_bytes);
  }
}

void write_plot_csv(std::ostream& out, std::span<const SchemeReport> reports, const std::string& metric) {
  if (metric == "traffic") {
    out << "workload,accelerator,scheme,normalized_traffic,data_bytes,metadata_bytes\n";
    for (const auto& r : reports) {
      out << fmt::format("{},{},{},{:.6f},{},{}\n", r.workload, r.accelerator, r.scheme, r.normalized.traffic,
                         r.traffic.data_bytes(), r.traffic.metadata_bytes());
    }
  } else if (metric == "time") {
    out << "workload,accelerator,scheme,normalized_time,exec_cycles,baseline_exec_cycles\n";
    for (const auto& r : reports) {
      out << fmt::format("{},{},{},{:.6f},{:.1f},{:.1f}\n", r.workload, r.accelerator, r.scheme, r.normalized.time,
                         r.exec_cycles, r.baseline_exec_cycles);
    }
  } else if (metric == "energy") {
    out << "workload,accelerator,scheme,normalized_energy,normalized_energy_with_crypto,dram_pj,crypto_pj\n";
    for (const auto& r : reports) {
      out << fmt::format("{},{},{},{:.6f},{:.6f},{:.1f},{:.1f}\n", r.workload, r.accelerator, r.scheme,
                         r.normalized.energy, r.normalized.energy_total, r.dram_energy_pj, r.crypto_energy_pj);
    }
  } else {
    throw std::invalid_argument("unknown plot metric '" + metric + "'");
  }
}

}  // namespace secnpu::sim
