#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "secnpu/auth/layer_auth.hpp"
#include "secnpu/crypto/otp.hpp"
#include "secnpu/crypto/seca.hpp"
#include "secnpu/schemes/config.hpp"
#include "secnpu/schemes/metadata_engine.hpp"
#include "secnpu/schemes/security.hpp"
#include "secnpu/sim/accelerator.hpp"
#include "secnpu/sim/hw_cost.hpp"
#include "secnpu/sim/report_io.hpp"
#include "secnpu/sim/simulate.hpp"
#include "secnpu/sim/trace.hpp"
#include "secnpu/tiling/opt_block.hpp"
#include "secnpu/tiling/topology.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace secnpu::cli {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

fs::path resolve_topology(const std::string& arg) {
  if (fs::is_regular_file(arg)) return arg;
  const fs::path dir = SECNPU_WORKLOAD_DIR;
  for (const auto& candidate : {dir / arg, dir / (arg + ".csv")}) {
    if (fs::is_regular_file(candidate)) return candidate;
  }
  throw InputError("topology '" + arg + "' is neither a file nor a shipped workload in " + dir.string());
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

sim::AcceleratorConfig load_accelerator(const AccelOptions& a) {
  auto acc = sim::accelerator_preset(a.preset);
  if (!a.config_path.empty()) {
    json j = read_json_file(a.config_path);
    if (!j.is_object()) throw InputError(a.config_path + ": expected a JSON object");
    // an explicit --preset outranks the file's own base preset
    if (a.preset_given) j.erase("preset");
    acc = sim::accelerator_from_json(j, acc);
  }
  acc.validate();
  return acc;
}

std::string valid_schemes_hint() {
  std::string s;
  for (const auto& n : schemes::preset_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

// Scheme list with overrides from the config file. A "*" entry applies to all.
std::vector<schemes::SchemeConfig> load_schemes(const SimulateOptions& opt) {
  json file = json::object();
  if (!opt.scheme_config_path.empty()) {
    file = read_json_file(opt.scheme_config_path);
    if (!file.is_object()) throw InputError(opt.scheme_config_path + ": expected an object keyed by scheme name");
  }
  const auto& presets = schemes::preset_names();
  std::vector<schemes::SchemeConfig> out;
  const auto names = split_list(opt.schemes);
  if (names.empty()) throw InputError("--schemes is empty");
  for (const auto& name : names) {
    const bool known = std::find(presets.begin(), presets.end(), name) != presets.end();
    const json* entry = file.contains(name) ? &file.at(name) : nullptr;
    std::string base = name;
    if (!known) {
      if (entry == nullptr || !entry->contains("preset")) {
        throw InputError("unknown scheme '" + name + "'; valid: " + valid_schemes_hint() +
                         " (custom names need a \"preset\" in --scheme-config)");
      }
      base = entry->at("preset").get<std::string>();
    } else if (entry != nullptr && entry->contains("preset")) {
      base = entry->at("preset").get<std::string>();
    }
    auto cfg = schemes::scheme_preset(base);
    if (file.contains("*")) cfg = schemes::apply_overrides(cfg, file.at("*"));
    if (entry != nullptr) cfg = schemes::apply_overrides(cfg, *entry);
    cfg.name = name;
    if (opt.seed) cfg.seed = *opt.seed;
    cfg.validate();
    out.push_back(cfg);
  }
  return out;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw InputError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string pattern_str(const tiling::TilingPattern& p) {
  std::string s;
  for (const auto& a : p.axes) s += fmt::format("{}{}/{}", s.empty() ? "" : " x ", a.tile, a.step);
  return s;
}

std::string block_str(const tiling::OptBlock& b) {
  std::string s;
  for (auto l : b.lengths) s += fmt::format("{}{}", s.empty() ? "" : "x", l);
  return s;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const auto acc = load_accelerator(opt.accel);
  const auto scheme_list = load_schemes(opt);
  const auto formats = split_list(opt.formats);
  for (const auto& f : formats) {
    if (f != "json" && f != "text" && f != "csv") throw InputError("unknown format '" + f + "'");
  }
  auto wants = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };

  fs::path out_dir = opt.out_dir;
  if (out_dir.empty()) {
    const char* env = std::getenv("SECNPU_OUT_DIR");
    out_dir = env != nullptr && *env != '\0' ? env : "secnpu-out";
  }
  fs::create_directories(out_dir);

  struct Workload {
    std::string name;
    std::vector<tiling::LayerShape> layers;
  };
  std::vector<Workload> workloads;
  for (const auto& t : opt.topologies) {
    const auto path = resolve_topology(t);
    workloads.push_back({path.stem().string(), tiling::load_topology(path)});
    if (workloads.back().layers.empty()) throw InputError(path.string() + ": no layers");
  }

  sim::SimOptions sopt;
  sopt.dram_pj_per_byte = opt.dram_pj_per_byte;
  const sim::HwCostModel hw;

  // Reports are stored by (workload, scheme) index, so output order does not
  // depend on --jobs.
  std::vector<sim::SchemeReport> reports(workloads.size() * scheme_list.size());
  std::vector<sim::WorkloadTrace> traces;
  for (const auto& w : workloads) traces.push_back(sim::synthesize_workload(w.name, w.layers, acc));

  auto run_one = [&](std::size_t i) {
    reports[i] = sim::simulate(traces[i / scheme_list.size()], acc, scheme_list[i % scheme_list.size()], hw, sopt);
  };
  if (opt.jobs <= 1) {
    for (std::size_t i = 0; i < reports.size(); ++i) run_one(i);
  } else {
    std::size_t next = 0;
    while (next < reports.size()) {
      std::vector<std::future<void>> batch;
      for (unsigned j = 0; j < opt.jobs && next < reports.size(); ++j, ++next) {
        batch.push_back(std::async(std::launch::async, run_one, next));
      }
      for (auto& f : batch) f.get();
    }
  }

  const std::uint64_t seed = opt.seed.value_or(kDefaultSeed);
  if (wants("json")) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      json j = sim::to_json(reports[i]);
      j["seed"] = seed;
      j["accelerator_config"] = sim::to_json(acc);
      j["scheme_config"] = schemes::to_json(scheme_list[i % scheme_list.size()]);
      j["dram_pj_per_byte"] = opt.dram_pj_per_byte;
      const auto file = fmt::format("{}__{}__{}.json", reports[i].workload, acc.name, reports[i].scheme);
      write_atomic(out_dir / file, j.dump(2) + "\n");
    }
  }
  std::ostringstream summary;
  sim::write_summary_text(summary, reports);
  if (wants("text")) {
    write_atomic(out_dir / "summary.txt", summary.str());
    out << summary.str();
  }
  if (wants("csv")) {
    for (const char* metric : {"traffic", "time", "energy"}) {
      std::ostringstream csv;
      sim::write_plot_csv(csv, reports, metric);
      write_atomic(out_dir / (std::string(metric) + ".csv"), csv.str());
    }
  }
  err << fmt::format("wrote {} report(s) to {}\n", reports.size(), out_dir.string());
  return kOk;
}

int cmd_attack(const AttackOptions& opt, std::ostream& out, std::ostream& err) {
  const bool naive = opt.mode == "naive";
  std::vector<std::uint8_t> key(16);
  std::mt19937_64 rng(opt.seed);
  for (auto& b : key) b = static_cast<std::uint8_t>(rng());

  if (opt.kind == "seca") {
    const auto keys = crypto::key_expansion(key, crypto::AesVariant::Aes128);
    const auto plain = schemes::make_sparse_blocks(16, 64, opt.seed);
    std::vector<crypto::DataBlock> cipher;
    for (std::size_t i = 0; i < plain.size(); ++i) {
      const auto ctr = crypto::CounterTuple::make(0x10000 + 64 * i, 7);
      cipher.push_back(naive ? crypto::encrypt_block_shared_otp(plain[i], ctr, keys)
                             : crypto::encrypt_block(plain[i], ctr, keys, opt.seed));
    }
    const auto score = crypto::score_seca(crypto::seca_attack(cipher), plain);
    const double limit = 1.0 / static_cast<double>(plain.front().sub_block_count());
    out << fmt::format("seca mode={} blocks={} recovered={}/{} recovery_rate={:.4f} max_block_rate={:.4f}\n",
                       opt.mode, plain.size(), score.recovered, score.total, score.recovery_rate,
                       score.max_block_rate);
    const bool as_expected = naive ? score.recovery_rate == 1.0 : score.max_block_rate <= limit;
    if (naive && as_expected) err << "warning: shared per-block OTP lets the attacker recover every sub-block\n";
    if (!as_expected) err << "unexpected outcome for mode " << opt.mode << "\n";
    return as_expected ? kOk : kInternal;
  }

  const auth::MacKey mac_key(key);
  std::vector<auth::AuthBlock> blocks;
  for (std::uint64_t i = 0; i < 8; ++i) {
    auth::AuthBlock b;
    b.data.resize(64);
    for (auto& x : b.data) x = static_cast<std::uint8_t>(rng());
    b.ctx = auth::AuthContext{0x10000 + 64 * i, 7, 1, i};
    blocks.push_back(std::move(b));
  }
  const auto r = auth::repa_attack(blocks, naive ? auth::RepaMode::NaiveXor : auth::RepaMode::Defended, mac_key, 2, 5);
  const bool detected = r.verdict == auth::RepaVerdict::AttackDetected;
  out << fmt::format("repa mode={} swap=2<->5 reference={:016x} observed={:016x} {}\n", opt.mode, r.reference.value,
                     r.observed.value, detected ? "detected" : "undetected");
  if (!detected) err << "warning: false negative, the swapped layer verifies\n";
  const bool as_expected = naive ? !detected : detected;
  if (!as_expected) err << "unexpected outcome for mode " << opt.mode << "\n";
  return as_expected ? kOk : kInternal;
}

int cmd_optblock(const OptblockOptions& opt, std::ostream& out, std::ostream&) {
  const auto acc = load_accelerator(opt.accel);
  const auto layers = tiling::load_topology(resolve_topology(opt.topology));
  out << fmt::format("{:<28} {:<6} {:<24} {:<24} {:>10} {:>8}\n", "layer", "kind", "pattern_a", "pattern_b",
                     "opt_blk", "overlap");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.stride > l.r || l.stride > l.s) {
      out << fmt::format("{:<28} {:<6} {:<24} {:<24} {:>10} {:>8}\n", l.name, "intra", "-", "-", "-", "-");
    } else {
      const auto pat = tiling::sliding_window_pattern(l);
      const auto blk = tiling::solve_opt_block(pat, pat);
      out << fmt::format("{:<28} {:<6} {:<24} {:<24} {:>10} {:>8.4f}\n", l.name, "intra", pattern_str(pat),
                         pattern_str(pat), block_str(blk), tiling::overlap_traffic_factor(l.normalized(), pat));
    }
    if (i + 1 == layers.size()) continue;
    const auto& next = layers[i + 1];
    const auto pair = l.name + "->" + next.name;
    const auto prod = sim::plan_tiles(l, acc).ofmap_pattern(l.normalized());
    const auto nn = next.normalized();
    if (next.stride > next.r || next.stride > next.s || prod.axes[0].extent != nn.h || prod.axes[1].extent != nn.w) {
      out << fmt::format("{:<28} {:<6} {:<24} {:<24} {:>10} {:>8}\n", pair, "inter", pattern_str(prod), "-", "-",
                         "-");
      continue;
    }
    const auto cons = sim::plan_tiles(next, acc).ifmap_pattern(nn);
    const auto blk = tiling::solve_opt_block(prod, cons);
    out << fmt::format("{:<28} {:<6} {:<24} {:<24} {:>10} {:>8.4f}\n", pair, "inter", pattern_str(prod),
                       pattern_str(cons), block_str(blk), tiling::overlap_traffic_factor(nn, cons));
  }
  return kOk;
}

int cmd_hwcost(const HwcostOptions& opt, std::ostream& out, std::ostream&) {
  sim::HwCostModel hw;
  hw.xor_lane_area_gates = opt.xor_lane_area;
  hw.xor_lane_energy_pj = opt.xor_lane_energy;
  using schemes::CryptoStyle;
  if (opt.bandwidth) {
    const auto t = sim::crypto_hw_cost(*opt.bandwidth, CryptoStyle::TAes, hw);
    const auto b = sim::crypto_hw_cost(*opt.bandwidth, CryptoStyle::BAes, hw);
    out << fmt::format("required {:.3f} B/cycle -> {} lanes\n", *opt.bandwidth, t.lanes);
    out << fmt::format("taes area={:.0f} gates energy={:.2f} pJ/16B\n", t.area_gates, t.energy_pj_per_16b);
    out << fmt::format("baes area={:.0f} gates energy={:.2f} pJ/16B\n", b.area_gates, b.energy_pj_per_16b);
    out << fmt::format("area ratio taes/baes={:.3f}\n", t.area_gates / b.area_gates);
    return kOk;
  }
  out << fmt::format("{:>5} {:>12} {:>12} {:>8} {:>10} {:>10} {:>10}\n", "lanes", "taes_gates", "baes_gates", "ratio",
                     "taes_pJ", "baes_pJ", "B/cycle");
  for (std::uint32_t n = 1; n <= opt.max_lanes; n *= 2) {
    const auto t = sim::crypto_cost_for_lanes(n, CryptoStyle::TAes, hw);
    const auto b = sim::crypto_cost_for_lanes(n, CryptoStyle::BAes, hw);
    out << fmt::format("{:>5} {:>12.0f} {:>12.0f} {:>8.3f} {:>10.2f} {:>10.2f} {:>10.3f}\n", n, t.area_gates,
                       b.area_gates, t.area_gates / b.area_gates, t.energy_pj_per_16b, b.energy_pj_per_16b,
                       t.throughput_bytes_per_cycle);
  }
  return kOk;
}

int cmd_export_trace(const ExportOptions& opt, std::ostream& out, std::ostream& err) {
  const auto acc = load_accelerator(opt.accel);
  const auto path = resolve_topology(opt.topology);
  const auto layers = tiling::load_topology(path);
  const auto workload = sim::synthesize_workload(path.stem().string(), layers, acc);

  std::vector<DramAccess> trace;
  if (opt.scheme.empty()) {
    trace = workload.flatten();
  } else {
    const auto& names = schemes::preset_names();
    if (std::find(names.begin(), names.end(), opt.scheme) == names.end()) {
      throw InputError("unknown scheme '" + opt.scheme + "'; valid: " + valid_schemes_hint());
    }
    schemes::MetadataEngine engine(schemes::scheme_preset(opt.scheme));
    std::uint64_t cycle = 0;
    auto append_meta = [&](const std::vector<schemes::MetaAccess>& meta) {
      for (const auto& m : meta) {
        trace.push_back(DramAccess{cycle, m.address, m.bytes, m.kind, Stream::Metadata});
      }
    };
    for (const auto& layer : workload.layers) {
      for (const auto& a : layer.accesses) {
        trace.push_back(a);
        cycle = a.cycle;
        append_meta(engine.metadata_accesses(a));
      }
      append_meta(engine.end_layer());
    }
    append_meta(engine.flush());
  }

  if (opt.out == "-") {
    sim::export_trace(out, trace);
  } else {
    std::ostringstream buf;
    sim::export_trace(buf, trace);
    write_atomic(opt.out, buf.str());
    err << fmt::format("wrote {} accesses to {}\n", trace.size(), opt.out);
  }
  return kOk;
}

}  // namespace secnpu::cli
