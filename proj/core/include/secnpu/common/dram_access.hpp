#pragma once

#include <cstdint>
#include <string_view>

namespace secnpu {

enum class AccessKind : std::uint8_t { Read, Write };
enum class Stream : std::uint8_t { Ifmap, Weight, Ofmap, Metadata };

// One off-chip transfer. cycle is the issue time in accelerator cycles.
struct DramAccess {
  std::uint64_t cycle = 0;
  std::uint64_t address = 0;
  std::uint32_t bytes = 0;
  AccessKind kind = AccessKind::Read;
  Stream stream = Stream::Ifmap;

  std::uint64_t end() const { return address + bytes; }
  bool operator==(const DramAccess&) const = default;
};

std::string_view to_string(AccessKind kind);
std::string_view to_string(Stream stream);
// Throw std::invalid_argument on unknown names.
AccessKind parse_access_kind(std::string_view text);
Stream parse_stream(std::string_view text);

}  // namespace secnpu
