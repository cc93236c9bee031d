#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "secnpu/schemes/config.hpp"
#include "secnpu/schemes/metadata_engine.hpp"
#include "secnpu/sim/accelerator.hpp"
#include "secnpu/sim/hw_cost.hpp"
#include "secnpu/sim/trace.hpp"
#include "secnpu/tiling/layer.hpp"

namespace secnpu::sim {

struct SimOptions {
  double dram_pj_per_byte = 13.0;
};

// Output-stationary systolic estimate:
// N * ceil(P*Q / rows) * ceil(K / cols) * (R*S*C + rows + cols - 1).
std::uint64_t compute_cycles(const tiling::LayerShape& shape, const AcceleratorConfig& acc);

struct LayerReport {
  std::string name;
  std::uint64_t compute_cycles = 0;
  double mem_cycles = 0;
  double crypto_cycles = 0;
  double crypto_stall_cycles = 0;
  double exec_cycles = 0;
  schemes::TrafficTotals traffic;
};

struct Normalized {
  double traffic = 1.0;
  double time = 1.0;
  double energy = 1.0;        // DRAM access energy only
  double energy_total = 1.0;  // DRAM plus crypto energy
};

struct SchemeReport {
  std::string workload;
  std::string scheme;
  std::string accelerator;
  std::vector<LayerReport> layers;
  schemes::TrafficTotals traffic;  // includes the end-of-run cache flush
  std::uint64_t compute_cycles = 0;
  double mem_cycles = 0;
  double crypto_stall_cycles = 0;
  double exec_cycles = 0;
  std::uint64_t encrypted_bytes = 0;
  double dram_energy_pj = 0;
  double crypto_energy_pj = 0;
  CryptoCost crypto;
  // Unprotected run of the same workload and accelerator.
  double baseline_exec_cycles = 0;
  std::uint64_t baseline_bytes = 0;
  double baseline_energy_pj = 0;
  Normalized normalized;

  double energy_pj() const { return dram_energy_pj + crypto_energy_pj; }
};

// Runs the workload under `scheme` and under the baseline for normalization.
SchemeReport simulate(const WorkloadTrace& workload, const AcceleratorConfig& acc,
                      const schemes::SchemeConfig& scheme, const HwCostModel& hw = {},
                      const SimOptions& options = {});
SchemeReport simulate(const std::string& name, std::span<const tiling::LayerShape> layers,
                      const AcceleratorConfig& acc, const schemes::SchemeConfig& scheme,
                      const HwCostModel& hw = {}, const SimOptions& options = {});

struct EnergyFactors {
  double memory = 1.0;        // (data + metadata) bytes x pJ/byte over baseline
  double total = 1.0;         // memory plus crypto energy over baseline
  double crypto_share = 0.0;  // crypto energy / baseline energy
};

// Recomputes the energy factors at a different DRAM energy per byte.
EnergyFactors energy_report(const SchemeReport& report, double dram_pj_per_byte);

}  // namespace secnpu::sim
