#include "secnpu/common/dram_access.hpp"

#include <stdexcept>
#include <string>

namespace secnpu {

std::string_view to_string(AccessKind kind) { return kind == AccessKind::Read ? "read" : "write"; }

std::string_view to_string(Stream stream) {
  switch (stream) {
    case Stream::Ifmap:
      return "ifmap";
    case Stream::Weight:
      return "weight";
    case Stream::Ofmap:
      return "ofmap";
    case Stream::Metadata:
      return "metadata";
  }
  return "?";
}

AccessKind parse_access_kind(std::string_view text) {
  if (text == "read") return AccessKind::Read;
  if (text == "write") return AccessKind::Write;
  throw std::invalid_argument("unknown access kind '" + std::string(text) + "'");
}

Stream parse_stream(std::string_view text) {
  for (auto s : {Stream::Ifmap, Stream::Weight, Stream::Ofmap, Stream::Metadata}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown stream '" + std::string(text) + "'");
}

}  // namespace secnpu
