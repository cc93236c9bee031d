#include "cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "secnpu/sim/trace.hpp"
#include "secnpu/tiling/topology.hpp"

namespace secnpu::cli {

namespace {

void add_accel_options(CLI::App* cmd, AccelOptions& a) {
  cmd->add_option("--preset", a.preset, "accelerator preset")->check(CLI::IsMember({"server", "edge"}));
  cmd->add_option("--accel-config", a.config_path, "accelerator JSON (fields override the preset)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Memory-protection simulator for NPU accelerators", "secnpu"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "run scheme sweeps over workload topologies");
  simulate->add_option("-t,--topology", sim.topologies, "topology CSV path or shipped workload name")->required();
  add_accel_options(simulate, sim.accel);
  simulate->add_option("--schemes", sim.schemes, "comma-separated scheme names");
  simulate->add_option("--scheme-config", sim.scheme_config_path, "JSON scheme overrides keyed by scheme name");
  simulate->add_option("--seed", sim.seed, "seed for every randomized path");
  simulate->add_option("-o,--out", sim.out_dir, "output directory (default $SECNPU_OUT_DIR or ./secnpu-out)");
  simulate->add_option("--format", sim.formats, "comma-separated subset of json,text,csv");
  simulate->add_option("--dram-pj", sim.dram_pj_per_byte, "DRAM energy per byte in pJ")->check(CLI::NonNegativeNumber);
  simulate->add_option("-j,--jobs", sim.jobs, "parallel (workload, scheme) simulations")->check(CLI::Range(1u, 256u));

  AttackOptions atk;
  auto* attack = app.add_subcommand("attack", "run an adversary oracle");
  attack->add_option("kind", atk.kind, "seca or repa")->required()->check(CLI::IsMember({"seca", "repa"}));
  attack->add_option("--mode", atk.mode, "naive or defended")->check(CLI::IsMember({"naive", "defended"}));
  attack->add_option("--seed", atk.seed, "fixture seed");

  OptblockOptions ob;
  auto* optblock = app.add_subcommand("optblock", "optimal authentication blocks per layer and layer pair");
  optblock->add_option("topology", ob.topology, "topology CSV path or shipped workload name")->required();
  add_accel_options(optblock, ob.accel);

  HwcostOptions hw;
  auto* hwcost = app.add_subcommand("hwcost", "T-AES vs B-AES area and energy over lane counts");
  hwcost->add_option("--max-lanes", hw.max_lanes, "largest lane count in the table")->check(CLI::Range(1u, 4096u));
  hwcost->add_option("--xor-area", hw.xor_lane_area, "gates per XOR lane")->check(CLI::NonNegativeNumber);
  hwcost->add_option("--xor-energy", hw.xor_lane_energy, "pJ per 16 B through an XOR lane")
      ->check(CLI::NonNegativeNumber);
  hwcost->add_option("--bandwidth", hw.bandwidth, "required bytes per cycle")->check(CLI::PositiveNumber);

  ExportOptions ex;
  auto* export_trace = app.add_subcommand("export-trace", "write the synthesized DRAM trace as CSV");
  export_trace->add_option("topology", ex.topology, "topology CSV path or shipped workload name")->required();
  add_accel_options(export_trace, ex.accel);
  export_trace->add_option("--scheme", ex.scheme, "interleave this scheme's metadata accesses");
  export_trace->add_option("-o,--out", ex.out, "output file, '-' for stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (simulate->parsed()) {
      sim.accel.preset_given = simulate->count("--preset") > 0;
      return cmd_simulate(sim, out, err);
    }
    if (attack->parsed()) return cmd_attack(atk, out, err);
    if (optblock->parsed()) {
      ob.accel.preset_given = optblock->count("--preset") > 0;
      return cmd_optblock(ob, out, err);
    }
    if (hwcost->parsed()) return cmd_hwcost(hw, out, err);
    if (export_trace->parsed()) {
      ex.accel.preset_given = export_trace->count("--preset") > 0;
      return cmd_export_trace(ex, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const tiling::TopologyError& e) {
    err << "error: topology " << e.what() << "\n";
    return kInputError;
  } catch (const sim::TraceParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad JSON: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  err << app.help();
  return kUsage;
}

}  // namespace secnpu::cli
