#include "secnpu/schemes/config.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace secnpu::schemes {

namespace {

template <typename E, std::size_t N>
E parse_enum(const std::array<E, N>& values, std::string_view text, const char* what) {
  for (E v : values) {
    if (to_string(v) == text) return v;
  }
  std::string msg = std::string("unknown ") + what + " '" + std::string(text) + "' (expected";
  for (E v : values) msg += " " + std::string(to_string(v));
  throw std::invalid_argument(msg + ")");
}

constexpr std::array kKinds{SchemeKind::Baseline, SchemeKind::SgxLike, SchemeKind::MgxLike, SchemeKind::Proposed};
constexpr std::array kStorages{MacStorage::OnChip, MacStorage::OffChip};
constexpr std::array kStyles{CryptoStyle::None, CryptoStyle::TAes, CryptoStyle::BAes};
constexpr std::array kOtpModes{OtpMode::PerSubBlock, OtpMode::SharedPerBlock};

bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Baseline:
      return "baseline";
    case SchemeKind::SgxLike:
      return "sgx";
    case SchemeKind::MgxLike:
      return "mgx";
    case SchemeKind::Proposed:
      return "proposed";
  }
  return "?";
}

std::string_view to_string(MacStorage storage) { return storage == MacStorage::OnChip ? "onchip" : "offchip"; }

std::string_view to_string(CryptoStyle style) {
  switch (style) {
    case CryptoStyle::None:
      return "none";
    case CryptoStyle::TAes:
      return "taes";
    case CryptoStyle::BAes:
      return "baes";
  }
  return "?";
}

std::string_view to_string(OtpMode mode) { return mode == OtpMode::PerSubBlock ? "per_sub_block" : "shared"; }

void SchemeConfig::validate() const {
  auto fail = [this](const std::string& m) { throw std::invalid_argument("scheme '" + name + "': " + m); };
  if (protection_granularity == 0 || protection_granularity % 16 != 0) {
    fail("protection_granularity must be a positive multiple of 16");
  }
  if (mac_bytes == 0 || mac_bytes > 64) fail("mac_bytes must be in [1, 64]");
  if (vn_bits == 0 || vn_bits > 64) fail("vn_bits must be in [1, 64]");
  if (cache_line < 8 || cache_line % 8 != 0) fail("cache_line must be a multiple of 8");
  if (vn_cache_bytes % cache_line != 0) fail("vn_cache_bytes must be whole cache lines");
  if (mac_cache_bytes % cache_line != 0) fail("mac_cache_bytes must be whole cache lines");
  if (tree_arity < 2) fail("tree_arity must be at least 2");
  if (node_bytes == 0) fail("node_bytes must be positive");
  if (protected_bytes == 0 || protected_bytes % protection_granularity != 0) {
    fail("protected_bytes must be a positive multiple of protection_granularity");
  }
  if (kind == SchemeKind::SgxLike && !is_pow2(protection_granularity)) {
    fail("SGX-style schemes need a power-of-two granularity");
  }
  if (kind == SchemeKind::Baseline && crypto.style != CryptoStyle::None) fail("baseline has no crypto engine");
  if (kind != SchemeKind::Baseline && crypto.style == CryptoStyle::None) fail("protected schemes need a crypto style");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"baseline", "sgx64", "sgx512", "mgx64", "mgx512", "ours"};
  return names;
}

SchemeConfig scheme_preset(std::string_view name) {
  SchemeConfig cfg;
  cfg.name = std::string(name);
  if (name == "baseline") {
    return cfg;
  }
  if (name == "sgx64" || name == "sgx512" || name == "mgx64" || name == "mgx512") {
    cfg.kind = name.starts_with("sgx") ? SchemeKind::SgxLike : SchemeKind::MgxLike;
    cfg.protection_granularity = name.ends_with("512") ? 512 : 64;
    cfg.crypto = {CryptoStyle::TAes, 0};
    return cfg;
  }
  if (name == "ours") {
    cfg.kind = SchemeKind::Proposed;
    cfg.layer_mac_storage = MacStorage::OffChip;
    cfg.crypto = {CryptoStyle::BAes, 0};
    return cfg;
  }
  std::string msg = "unknown scheme '" + std::string(name) + "'; valid presets:";
  for (const auto& n : preset_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

SchemeConfig apply_overrides(SchemeConfig cfg, const nlohmann::json& o) {
  if (!o.is_object()) throw std::invalid_argument("scheme overrides must be a JSON object");
  for (const auto& [key, value] : o.items()) {
    try {
      if (key == "name") {
        cfg.name = value.get<std::string>();
      } else if (key == "preset") {
        // Handled by callers that build from a preset first.
      } else if (key == "kind") {
        cfg.kind = parse_enum(kKinds, value.get<std::string>(), "kind");
      } else if (key == "protection_granularity") {
        cfg.protection_granularity = value.get<std::uint64_t>();
      } else if (key == "mac_bytes") {
        cfg.mac_bytes = value.get<std::uint32_t>();
      } else if (key == "vn_bits") {
        cfg.vn_bits = value.get<std::uint32_t>();
      } else if (key == "vn_cache_bytes") {
        cfg.vn_cache_bytes = value.get<std::uint64_t>();
      } else if (key == "mac_cache_bytes") {
        cfg.mac_cache_bytes = value.get<std::uint64_t>();
      } else if (key == "cache_line") {
        cfg.cache_line = value.get<std::uint32_t>();
      } else if (key == "tree_arity") {
        cfg.tree_arity = value.get<std::uint32_t>();
      } else if (key == "node_bytes") {
        cfg.node_bytes = value.get<std::uint32_t>();
      } else if (key == "protected_bytes") {
        cfg.protected_bytes = value.get<std::uint64_t>();
      } else if (key == "layer_mac_storage") {
        cfg.layer_mac_storage = parse_enum(kStorages, value.get<std::string>(), "layer_mac_storage");
      } else if (key == "bind_position") {
        cfg.bind_position = value.get<bool>();
      } else if (key == "otp_mode") {
        cfg.otp_mode = parse_enum(kOtpModes, value.get<std::string>(), "otp_mode");
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "crypto") {
        if (!value.is_object()) throw std::invalid_argument("crypto must be an object");
        for (const auto& [ck, cv] : value.items()) {
          if (ck == "style") {
            cfg.crypto.style = parse_enum(kStyles, cv.get<std::string>(), "crypto style");
          } else if (ck == "units") {
            cfg.crypto.units = cv.get<std::uint32_t>();
          } else {
            throw std::invalid_argument("unknown crypto field '" + ck + "'");
          }
        }
      } else {
        throw std::invalid_argument("unknown scheme field '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("scheme field '" + key + "': " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const SchemeConfig& cfg) {
  return nlohmann::json{
      {"name", cfg.name},
      {"kind", to_string(cfg.kind)},
      {"protection_granularity", cfg.protection_granularity},
      {"mac_bytes", cfg.mac_bytes},
      {"vn_bits", cfg.vn_bits},
      {"vn_cache_bytes", cfg.vn_cache_bytes},
      {"mac_cache_bytes", cfg.mac_cache_bytes},
      {"cache_line", cfg.cache_line},
      {"tree_arity", cfg.tree_arity},
      {"node_bytes", cfg.node_bytes},
      {"protected_bytes", cfg.protected_bytes},
      {"layer_mac_storage", to_string(cfg.layer_mac_storage)},
      {"bind_position", cfg.bind_position},
      {"otp_mode", to_string(cfg.otp_mode)},
      {"crypto", {{"style", to_string(cfg.crypto.style)}, {"units", cfg.crypto.units}}},
      {"seed", cfg.seed},
  };
}

}  // namespace secnpu::schemes
