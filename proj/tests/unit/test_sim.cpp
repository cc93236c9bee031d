#include <gtest/gtest.h>

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "secnpu/sim/accelerator.hpp"
#include "secnpu/sim/hw_cost.hpp"
#include "secnpu/sim/report_io.hpp"
#include "secnpu/sim/simulate.hpp"
#include "secnpu/sim/trace.hpp"

namespace {

using namespace secnpu;
using namespace secnpu::sim;
using tiling::LayerShape;

std::uint64_t bytes_of(const std::vector<DramAccess>& t, Stream s) {
  std::uint64_t n = 0;
  for (const auto& a : t)
    if (a.stream == s) n += a.bytes;
  return n;
}

std::set<std::uint64_t> distinct_bytes(const std::vector<DramAccess>& t) {
  std::set<std::uint64_t> seen;
  for (const auto& a : t)
    for (std::uint64_t b = a.address; b < a.end(); ++b) seen.insert(b);
  return seen;
}

AcceleratorConfig tiny(std::uint64_t sram) {
  auto a = server_preset();
  a.name = "tiny";
  a.sram_bytes = sram;
  return a;
}

TEST(Accelerator, PresetsMatchTable) {
  const auto s = server_preset();
  EXPECT_EQ(s.pe_rows, 256u);
  EXPECT_EQ(s.pe_cols, 256u);
  EXPECT_EQ(s.bandwidth_bytes_per_sec, 20e9);
  EXPECT_EQ(s.frequency_hz, 1e9);
  EXPECT_EQ(s.sram_bytes, 24ULL << 20);
  const auto e = edge_preset();
  EXPECT_EQ(e.pe_rows, 32u);
  EXPECT_EQ(e.bandwidth_bytes_per_sec, 10e9);
  EXPECT_EQ(e.frequency_hz, 2.75e9);
  EXPECT_EQ(e.sram_bytes, 480ULL << 10);
  EXPECT_THROW(accelerator_preset("mobile"), std::invalid_argument);
  const auto j = accelerator_from_json(nlohmann::json::parse(R"({"preset":"edge","pe_rows":16})"), server_preset());
  EXPECT_EQ(j.pe_rows, 16u);
  EXPECT_EQ(j.frequency_hz, 2.75e9);
  EXPECT_THROW(accelerator_from_json(nlohmann::json::parse(R"({"lanes":1})"), s), std::invalid_argument);
}

TEST(Trace, DegenerateOneByOne) {
  const auto t = synthesize_trace(LayerShape::make("c", 1, 1, 4, 4, 1, 1, 1, 1), server_preset());
  EXPECT_EQ(bytes_of(t, Stream::Ifmap), 16u);
  EXPECT_EQ(bytes_of(t, Stream::Weight), 1u);
  EXPECT_EQ(bytes_of(t, Stream::Ofmap), 16u);
  for (const auto& a : t) EXPECT_EQ(a.kind == AccessKind::Write, a.stream == Stream::Ofmap);
}

TEST(Trace, SlidingWindowRereads) {
  const auto shape = LayerShape::make("c", 1, 1, 5, 5, 1, 3, 3, 1);
  const auto acc = tiny(27);  // 9-byte buffers: one output per tile
  const auto sched = plan_tiles(shape, acc);
  EXPECT_EQ(sched.tile_p, 1u);
  EXPECT_EQ(sched.tile_q, 1u);
  const auto t = synthesize_trace(shape, acc);
  EXPECT_EQ(bytes_of(t, Stream::Ifmap), 81u);
  EXPECT_EQ(bytes_of(t, Stream::Weight), 9u);
  EXPECT_EQ(bytes_of(t, Stream::Ofmap), 9u);
}

TEST(Trace, ConservationAndDeterminism) {
  const LayerShape shapes[] = {
      LayerShape::make("a", 1, 3, 23, 19, 8, 3, 3, 2),
      LayerShape::make("b", 2, 16, 14, 14, 32, 3, 3, 1),
      LayerShape::make("c", 1, 64, 7, 7, 100, 1, 1, 1),
  };
  for (std::uint64_t sram : {300ULL, 3000ULL, 1ULL << 20}) {
    for (const auto& s : shapes) {
      const auto acc = tiny(sram);
      const auto t = synthesize_trace(s, acc);
      const auto n = s.normalized();
      EXPECT_EQ(distinct_bytes(t).size(), n.ifmap_elements() + n.weight_elements() + n.ofmap_elements());
      EXPECT_EQ(t, synthesize_trace(s, acc));
      EXPECT_EQ(bytes_of(t, Stream::Ofmap), n.ofmap_elements());  // written once
      std::uint64_t prev = 0;
      for (const auto& a : t) {
        EXPECT_LE(a.bytes, kBurstBytes);
        EXPECT_EQ(a.address / kBurstBytes, (a.end() - 1) / kBurstBytes);
        EXPECT_GE(a.cycle, prev);
        prev = a.cycle;
      }
    }
  }
}

TEST(Trace, IfmapRereadsMatchTilePattern) {
  const auto s = LayerShape::make("a", 1, 4, 30, 30, 8, 3, 3, 1);
  const auto acc = tiny(3 * 600);
  const auto sched = plan_tiles(s, acc);
  ASSERT_GT(sched.tiles_p(s), 1u);
  const auto t = synthesize_trace(s, acc);
  const double factor = tiling::overlap_traffic_factor(s, sched.ifmap_pattern(s));
  EXPECT_DOUBLE_EQ(static_cast<double>(bytes_of(t, Stream::Ifmap)), factor * s.normalized().ifmap_elements());
}

TEST(Trace, OversizeLayerRejected) {
  auto acc = server_preset();
  acc.dram_bytes = 1 << 20;
  EXPECT_THROW(synthesize_trace(LayerShape::make("big", 1, 64, 200, 200, 64, 3, 3, 1), acc), std::invalid_argument);
}

TEST(Trace, CsvRoundTrip) {
  const auto t = synthesize_trace(LayerShape::make("a", 1, 8, 20, 20, 16, 3, 3, 1), tiny(4000));
  std::stringstream ss;
  export_trace(ss, t);
  EXPECT_EQ(parse_trace(ss), t);
  std::istringstream empty("");
  EXPECT_TRUE(parse_trace(empty).empty());
  std::istringstream reloc("cycle,address,bytes,kind,stream\n5,0x100,64,read,weight\n");
  const auto r = parse_trace(reloc, 0x1000);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].address, 0x1100u);
  std::istringstream bad("cycle,address,bytes,kind,stream\n1,0x0,4,read,ifmap\n2,zz,4,read,ifmap\n");
  try {
    parse_trace(bad);
    FAIL();
  } catch (const TraceParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream outside("0,0x3ffffffff,64,read,ifmap\n");
  EXPECT_THROW(parse_trace(outside), TraceParseError);
}

TEST(HwCost, TableDefaultsAndScaling) {
  const HwCostModel hw;
  EXPECT_EQ(hw.parallel.area_gates, 9200.0);
  EXPECT_EQ(hw.parallel.latency_cycles, 11.0);
  EXPECT_EQ(hw.parallel.energy_pj, 194.6);
  EXPECT_EQ(hw.pipelined.area_gates, 78800.0);
  EXPECT_EQ(hw.serial.latency_cycles, 336.0);
  using schemes::CryptoStyle;
  const auto t8 = crypto_cost_for_lanes(8, CryptoStyle::TAes, hw);
  EXPECT_EQ(t8.area_gates, 73600.0);
  const auto b8 = crypto_cost_for_lanes(8, CryptoStyle::BAes, hw);
  EXPECT_EQ(b8.area_gates, 9200.0 + 8 * hw.xor_lane_area_gates);
  EXPECT_NEAR(crypto_cost_for_lanes(1, CryptoStyle::BAes, hw).area_gates, 9200.0, 100.0);
  double prev_ratio = 0;
  for (std::uint32_t n = 1; n <= 64; ++n) {
    const auto t = crypto_cost_for_lanes(n, CryptoStyle::TAes, hw);
    const auto b = crypto_cost_for_lanes(n, CryptoStyle::BAes, hw);
    EXPECT_EQ(t.area_gates, n * 9200.0);
    if (n > 1) {
      EXPECT_DOUBLE_EQ(b.area_gates - crypto_cost_for_lanes(n - 1, CryptoStyle::BAes, hw).area_gates,
                       hw.xor_lane_area_gates);
    }
    EXPECT_GT(t.area_gates / b.area_gates, prev_ratio);
    prev_ratio = t.area_gates / b.area_gates;
  }
  EXPECT_EQ(crypto_hw_cost(16.0 / 11.0, CryptoStyle::TAes, hw).lanes, 1u);
  EXPECT_EQ(crypto_hw_cost(20.0, CryptoStyle::TAes, hw).lanes, 14u);
  EXPECT_THROW(crypto_hw_cost(0.0, CryptoStyle::TAes, hw), std::invalid_argument);
}

std::vector<LayerShape> small_net() {
  return {LayerShape::make("c1", 1, 3, 34, 34, 16, 3, 3, 1), LayerShape::make("c2", 1, 16, 32, 32, 32, 3, 3, 2),
          LayerShape::make("fc", 1, 32 * 15 * 15, 1, 1, 10, 1, 1, 1)};
}

TEST(Simulate, BaselineIsExactlyOne) {
  const auto layers = small_net();
  const auto r = simulate("net", layers, edge_preset(), schemes::scheme_preset("baseline"));
  EXPECT_EQ(r.normalized.traffic, 1.0);
  EXPECT_EQ(r.normalized.time, 1.0);
  EXPECT_EQ(r.normalized.energy, 1.0);
  EXPECT_EQ(r.normalized.energy_total, 1.0);
  EXPECT_EQ(r.crypto_energy_pj, 0.0);
}

TEST(Simulate, RooflineAndOrdering) {
  const auto layers = small_net();
  for (const auto& acc : {server_preset(), edge_preset()}) {
    const auto wt = synthesize_workload("net", layers, acc);
    double prev_traffic = 1e9;
    for (const auto* name : {"sgx64", "mgx64", "mgx512", "ours", "baseline"}) {
      const auto r = simulate(wt, acc, schemes::scheme_preset(name));
      for (const auto& l : r.layers) {
        EXPECT_GE(l.exec_cycles, std::max<double>(l.compute_cycles, l.mem_cycles));
        if (l.crypto_stall_cycles == 0) EXPECT_EQ(l.exec_cycles, std::max<double>(l.compute_cycles, l.mem_cycles));
      }
      EXPECT_LE(r.normalized.traffic, prev_traffic) << name;
      prev_traffic = r.normalized.traffic;
      EXPECT_NEAR(r.normalized.energy_total - r.normalized.energy, energy_report(r, 13.0).crypto_share, 1e-12);
      EXPECT_DOUBLE_EQ(r.normalized.energy, r.normalized.traffic);
    }
  }
}

TEST(Simulate, MemoryBoundLayerTimeEqualsMemCycles) {
  const std::vector<LayerShape> layers{LayerShape::make("fc", 1, 4096, 1, 1, 4096, 1, 1, 1)};
  const auto acc = server_preset();
  const auto r = simulate("fc", layers, acc, schemes::scheme_preset("baseline"));
  ASSERT_EQ(r.layers.size(), 1u);
  EXPECT_GT(r.layers[0].mem_cycles, static_cast<double>(r.layers[0].compute_cycles));
  EXPECT_EQ(r.layers[0].exec_cycles, r.layers[0].mem_cycles);
}

TEST(Simulate, UndersizedTAesStalls) {
  auto cfg = schemes::scheme_preset("mgx64");
  cfg.crypto.units = 1;
  const auto layers = small_net();
  const auto r = simulate("net", layers, server_preset(), cfg);
  EXPECT_GT(r.crypto_stall_cycles, 0.0);
  EXPECT_GT(r.normalized.time, simulate("net", layers, server_preset(), schemes::scheme_preset("mgx64")).normalized.time);
}

TEST(Simulate, ComputeCyclesClosedForm) {
  const auto s = LayerShape::make("c", 2, 3, 10, 10, 300, 3, 3, 1);
  auto acc = server_preset();
  acc.pe_rows = 16;
  acc.pe_cols = 128;
  // P*Q = 64 -> 4 row groups, K = 300 -> 3 column groups.
  EXPECT_EQ(compute_cycles(s, acc), 2u * 4 * 3 * (27 + 16 + 128 - 1));
}

TEST(Simulate, ReportsAreDeterministic) {
  const auto layers = small_net();
  const auto a = simulate("net", layers, edge_preset(), schemes::scheme_preset("sgx64"));
  const auto b = simulate("net", layers, edge_preset(), schemes::scheme_preset("sgx64"));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  std::ostringstream text, csv;
  const std::vector<SchemeReport> both{a, b};
  write_summary_text(text, both);
  write_plot_csv(csv, both, "traffic");
  EXPECT_NE(text.str().find("sgx64"), std::string::npos);
  const std::string rows = csv.str();
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 3);
  EXPECT_THROW(write_plot_csv(csv, both, "latency"), std::invalid_argument);
}

}  // namespace
