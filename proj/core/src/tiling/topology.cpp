#include "secnpu/tiling/topology.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace secnpu::tiling {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) fields.push_back(trim(cur));
  while (!fields.empty() && fields.back().empty()) fields.pop_back();
  return fields;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<LayerShape> parse_topology(std::istream& in) {
  std::vector<LayerShape> layers;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split_csv(t);
    const bool is_first = first_content;
    first_content = false;
    std::uint64_t probe = 0;
    if (is_first && fields.size() >= 2 && !parse_u64(fields[1], probe)) continue;  // header row
    if (fields.size() != 8) {
      throw TopologyError(line_no, "expected 8 fields (name, ifmap_h, ifmap_w, filter_h, filter_w, channels, "
                                   "num_filters, stride), got " + std::to_string(fields.size()));
    }
    std::uint64_t v[7];
    static constexpr const char* kNames[] = {"ifmap_h", "ifmap_w", "filter_h", "filter_w", "channels", "num_filters", "stride"};
    for (int i = 0; i < 7; ++i) {
      if (!parse_u64(fields[static_cast<std::size_t>(i + 1)], v[i])) {
        throw TopologyError(line_no, std::string("field ") + kNames[i] + " is not a non-negative integer: '" +
                                         fields[static_cast<std::size_t>(i + 1)] + "'");
      }
    }
    try {
      layers.push_back(LayerShape::make(fields[0], 1, v[4], v[0], v[1], v[5], v[2], v[3], v[6]).normalized());
    } catch (const std::invalid_argument& e) {
      throw TopologyError(line_no, e.what());
    }
  }
  return layers;
}

std::vector<LayerShape> load_topology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topology file " + path.string());
  return parse_topology(in);
}

}  // namespace secnpu::tiling
