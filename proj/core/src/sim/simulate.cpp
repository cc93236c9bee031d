#include "secnpu/sim/simulate.hpp"

#include <algorithm>
#include <stdexcept>

namespace secnpu::sim {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

schemes::TrafficTotals delta(const schemes::TrafficTotals& after, const schemes::TrafficTotals& before) {
  schemes::TrafficTotals d;
  d.data_read_bytes = after.data_read_bytes - before.data_read_bytes;
  d.data_write_bytes = after.data_write_bytes - before.data_write_bytes;
  d.mac_bytes = after.mac_bytes - before.mac_bytes;
  d.vn_bytes = after.vn_bytes - before.vn_bytes;
  d.tree_bytes = after.tree_bytes - before.tree_bytes;
  d.layer_mac_bytes = after.layer_mac_bytes - before.layer_mac_bytes;
  d.data_accesses = after.data_accesses - before.data_accesses;
  d.metadata_accesses = after.metadata_accesses - before.metadata_accesses;
  return d;
}

double ratio(double num, double den) { return den == 0 ? 1.0 : num / den; }

}  // namespace

std::uint64_t compute_cycles(const tiling::LayerShape& shape, const AcceleratorConfig& acc) {
  const tiling::LayerShape s = shape.normalized();
  const std::uint64_t rows = acc.pe_rows, cols = acc.pe_cols;
  return s.n * ceil_div(s.p() * s.q(), rows) * ceil_div(s.k, cols) * (s.r * s.s * s.c + rows + cols - 1);
}

SchemeReport simulate(const WorkloadTrace& workload, const AcceleratorConfig& acc,
                      const schemes::SchemeConfig& scheme, const HwCostModel& hw, const SimOptions& options) {
  acc.validate();
  scheme.validate();
  if (!(options.dram_pj_per_byte >= 0)) throw std::invalid_argument("DRAM energy must be non-negative");

  SchemeReport rep;
  rep.workload = workload.name;
  rep.scheme = scheme.name;
  rep.accelerator = acc.name;

  const double bpc = acc.bytes_per_cycle();
  if (scheme.encrypts()) {
    const std::uint32_t lanes =
        scheme.crypto.units != 0 ? scheme.crypto.units : crypto_hw_cost(bpc, scheme.crypto.style, hw).lanes;
    rep.crypto = crypto_cost_for_lanes(lanes, scheme.crypto.style, hw);
  }

  schemes::MetadataEngine engine(scheme);
  for (std::size_t i = 0; i < workload.layers.size(); ++i) {
    const LayerTrace& lt = workload.layers[i];
    const schemes::TrafficTotals before = engine.totals();
    for (const DramAccess& a : lt.accesses) engine.metadata_accesses(a);
    engine.end_layer();
    // Dirty metadata left at the end of the run is charged to the last layer.
    if (i + 1 == workload.layers.size()) engine.flush();

    LayerReport lr;
    lr.name = lt.shape.name;
    lr.traffic = delta(engine.totals(), before);
    lr.compute_cycles = compute_cycles(lt.shape, acc);
    lr.mem_cycles = static_cast<double>(lr.traffic.total_bytes()) / bpc;
    const std::uint64_t encrypted = scheme.encrypts() ? lr.traffic.data_bytes() : 0;
    lr.crypto_cycles = encrypted == 0 ? 0.0 : static_cast<double>(encrypted) / rep.crypto.throughput_bytes_per_cycle;
    const double bound = std::max(static_cast<double>(lr.compute_cycles), lr.mem_cycles);
    lr.crypto_stall_cycles = std::max(0.0, lr.crypto_cycles - bound);
    lr.exec_cycles = bound + lr.crypto_stall_cycles;

    const double base_mem = static_cast<double>(lr.traffic.data_bytes()) / bpc;
    rep.baseline_exec_cycles += std::max(static_cast<double>(lr.compute_cycles), base_mem);
    rep.baseline_bytes += lr.traffic.data_bytes();

    rep.compute_cycles += lr.compute_cycles;
    rep.mem_cycles += lr.mem_cycles;
    rep.crypto_stall_cycles += lr.crypto_stall_cycles;
    rep.exec_cycles += lr.exec_cycles;
    rep.encrypted_bytes += encrypted;
    rep.layers.push_back(std::move(lr));
  }
  rep.traffic = engine.totals();

  rep.dram_energy_pj = static_cast<double>(rep.traffic.total_bytes()) * options.dram_pj_per_byte;
  rep.crypto_energy_pj = static_cast<double>(rep.encrypted_bytes) / 16.0 * rep.crypto.energy_pj_per_16b;
  rep.baseline_energy_pj = static_cast<double>(rep.baseline_bytes) * options.dram_pj_per_byte;

  rep.normalized.traffic = ratio(static_cast<double>(rep.traffic.total_bytes()), static_cast<double>(rep.baseline_bytes));
  rep.normalized.time = ratio(rep.exec_cycles, rep.baseline_exec_cycles);
  const EnergyFactors e = energy_report(rep, options.dram_pj_per_byte);
  rep.normalized.energy = e.memory;
  rep.normalized.energy_total = e.total;
  return rep;
}

SchemeReport simulate(const std::string& name, std::span<const tiling::LayerShape> layers,
                      const AcceleratorConfig& acc, const schemes::SchemeConfig& scheme, const HwCostModel& hw,
                      const SimOptions& options) {
  return simulate(synthesize_workload(name, layers, acc), acc, scheme, hw, options);
}

EnergyFactors energy_report(const SchemeReport& report, double dram_pj_per_byte) {
  EnergyFactors f;
  const double base = static_cast<double>(report.baseline_bytes) * dram_pj_per_byte;
  if (base == 0) return f;
  const double mem = static_cast<double>(report.traffic.total_bytes()) * dram_pj_per_byte;
  f.memory = mem / base;
  f.crypto_share = report.crypto_energy_pj / base;
  f.total = (mem + report.crypto_energy_pj) / base;
  return f;
}

}  // namespace secnpu::sim
