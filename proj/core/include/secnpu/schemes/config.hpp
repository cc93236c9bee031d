#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace secnpu::schemes {

enum class SchemeKind { Baseline, SgxLike, MgxLike, Proposed };
enum class MacStorage { OnChip, OffChip };
enum class CryptoStyle { None, TAes, BAes };

// How sub-blocks of one protected block get their pads. PerSubBlock covers
// both per-16B counters (SGX/MGX) and combination-key OTPs; SharedPerBlock
// reuses one pad for the whole block.
enum class OtpMode { PerSubBlock, SharedPerBlock };

struct CryptoConfig {
  CryptoStyle style = CryptoStyle::None;
  std::uint32_t units = 0;  // engines (TAes) or XOR lanes (BAes); 0 = sized to the DRAM bandwidth
  bool operator==(const CryptoConfig&) const = default;
};

struct SchemeConfig {
  std::string name = "baseline";
  SchemeKind kind = SchemeKind::Baseline;
  std::uint64_t protection_granularity = 64;
  std::uint32_t mac_bytes = 8;
  std::uint32_t vn_bits = 56;
  std::uint64_t vn_cache_bytes = 16384;
  std::uint64_t mac_cache_bytes = 8192;  // holds integrity-tree nodes
  std::uint32_t cache_line = 64;
  std::uint32_t tree_arity = 8;
  std::uint32_t node_bytes = 64;
  std::uint64_t protected_bytes = 16ULL << 30;
  MacStorage layer_mac_storage = MacStorage::OnChip;
  bool bind_position = true;  // false: layer MAC folds data-only tags
  OtpMode otp_mode = OtpMode::PerSubBlock;
  CryptoConfig crypto{};
  std::uint64_t seed = 0x5EC0;

  // Throws std::invalid_argument on inconsistent fields.
  void validate() const;
  bool encrypts() const { return kind != SchemeKind::Baseline; }
  std::uint64_t protected_blocks() const { return protected_bytes / protection_granularity; }
  std::uint32_t vns_per_line() const { return cache_line / 8; }

  bool operator==(const SchemeConfig&) const = default;
};

std::string_view to_string(SchemeKind kind);
std::string_view to_string(MacStorage storage);
std::string_view to_string(CryptoStyle style);
std::string_view to_string(OtpMode mode);

// baseline, sgx64, sgx512, mgx64, mgx512, ours.
const std::vector<std::string>& preset_names();
// Throws std::invalid_argument listing valid names on an unknown preset.
SchemeConfig scheme_preset(std::string_view name);

// Applies every field present in `overrides` on top of `base`. Unknown keys
// and bad enum names throw std::invalid_argument.
SchemeConfig apply_overrides(SchemeConfig base, const nlohmann::json& overrides);
nlohmann::json to_json(const SchemeConfig& cfg);

}  // namespace secnpu::schemes
