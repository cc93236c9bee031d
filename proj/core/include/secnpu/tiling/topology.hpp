#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "secnpu/tiling/layer.hpp"

namespace secnpu::tiling {

class TopologyError : public std::runtime_error {
 public:
  TopologyError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Layer topology CSV, one layer per row:
//   name, ifmap_h, ifmap_w, filter_h, filter_w, channels, num_filters, stride
// A header row, blank lines, '#' comments and a trailing comma are accepted.
// Shapes are normalized on load.
std::vector<LayerShape> parse_topology(std::istream& in);
std::vector<LayerShape> load_topology(const std::filesystem::path& path);

}  // namespace secnpu::tiling
