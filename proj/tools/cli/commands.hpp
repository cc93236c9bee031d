#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace secnpu::cli {

// Bad or missing user input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EC0;

struct AccelOptions {
  std::string preset = "server";
  bool preset_given = false;
  std::string config_path;
};

struct SimulateOptions {
  std::vector<std::string> topologies;
  AccelOptions accel;
  std::string schemes = "baseline,sgx64,sgx512,mgx64,mgx512,ours";
  std::string scheme_config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string formats = "json,text,csv";
  double dram_pj_per_byte = 13.0;
  unsigned jobs = 1;
};

struct AttackOptions {
  std::string kind;  // seca | repa
  std::string mode = "defended";
  std::uint64_t seed = kDefaultSeed;
};

struct OptblockOptions {
  std::string topology;
  AccelOptions accel;
};

struct HwcostOptions {
  unsigned max_lanes = 32;
  double xor_lane_area = 50;
  double xor_lane_energy = 1.0;
  std::optional<double> bandwidth;
};

struct ExportOptions {
  std::string topology;
  AccelOptions accel;
  std::string scheme;
  std::string out = "-";
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_attack(const AttackOptions& opt, std::ostream& out, std::ostream& err);
int cmd_optblock(const OptblockOptions& opt, std::ostream& out, std::ostream& err);
int cmd_hwcost(const HwcostOptions& opt, std::ostream& out, std::ostream& err);
int cmd_export_trace(const ExportOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace secnpu::cli
