#include "secnpu/sim/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

namespace secnpu::sim {

namespace {

using tiling::LayerShape;

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }
std::uint64_t align_up(std::uint64_t x, std::uint64_t a) { return ceil_div(x, a) * a; }

std::uint64_t window(std::uint64_t outputs, std::uint64_t stride, std::uint64_t filter) {
  return (outputs - 1) * stride + filter;
}

class TraceBuilder {
 public:
  TraceBuilder(double bytes_per_cycle, std::uint64_t bytes_before, std::vector<DramAccess>& out)
      : bpc_(bytes_per_cycle), bytes_(bytes_before), out_(out) {}

  void range(std::uint64_t address, std::uint64_t length, AccessKind kind, Stream stream) {
    while (length > 0) {
      const std::uint64_t chunk = std::min(length, kBurstBytes - address % kBurstBytes);
      const auto cycle = static_cast<std::uint64_t>(static_cast<double>(bytes_) / bpc_);
      out_.push_back(DramAccess{cycle, address, static_cast<std::uint32_t>(chunk), kind, stream});
      bytes_ += chunk;
      address += chunk;
      length -= chunk;
    }
  }

  // rows [r0, r1) x cols [c0, c1) of a (rows, width, depth) channels-last plane.
  void rect(std::uint64_t base, std::uint64_t width, std::uint64_t depth, std::uint64_t r0, std::uint64_t r1,
            std::uint64_t c0, std::uint64_t c1, AccessKind kind, Stream stream) {
    if (c0 == 0 && c1 == width) {
      range(base + r0 * width * depth, (r1 - r0) * width * depth, kind, stream);
      return;
    }
    for (std::uint64_t r = r0; r < r1; ++r) {
      range(base + (r * width + c0) * depth, (c1 - c0) * depth, kind, stream);
    }
  }

  std::uint64_t bytes() const { return bytes_; }

 private:
  double bpc_;
  std::uint64_t bytes_;
  std::vector<DramAccess>& out_;
};

void append_layer(const LayerShape& raw, const TensorLayout& lay,
                  const TileSchedule& sched, TraceBuilder& tb) {
  const LayerShape s = raw.normalized();
  const std::uint64_t P = s.p(), Q = s.q();
  const std::uint64_t image_in = s.h * s.w * s.c;
  const std::uint64_t image_out = P * Q * s.k;

  if (sched.weights_resident) tb.range(lay.weight_base, s.weight_elements(), AccessKind::Read, Stream::Weight);
  for (std::uint64_t n = 0; n < s.n; ++n) {
    for (std::uint64_t p0 = 0; p0 < P; p0 += sched.tile_p) {
      const std::uint64_t p1 = std::min(P, p0 + sched.tile_p);
      for (std::uint64_t q0 = 0; q0 < Q; q0 += sched.tile_q) {
        const std::uint64_t q1 = std::min(Q, q0 + sched.tile_q);
        tb.rect(lay.ifmap_base + n * image_in, s.w, s.c, p0 * s.stride, window(p1 - p0, s.stride, s.r) + p0 * s.stride,
                q0 * s.stride, window(q1 - q0, s.stride, s.s) + q0 * s.stride, AccessKind::Read, Stream::Ifmap);
        if (!sched.weights_resident) {
          tb.range(lay.weight_base, s.weight_elements(), AccessKind::Read, Stream::Weight);
        }
        tb.rect(lay.ofmap_base + n * image_out, Q, s.k, p0, p1, q0, q1, AccessKind::Write, Stream::Ofmap);
      }
    }
  }
}

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t' || v.front() == '\r')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

std::uint64_t parse_u64(std::string_view field, int base, std::size_t line, const char* what) {
  field = trim(field);
  if (base == 16 && (field.starts_with("0x") || field.starts_with("0X"))) field.remove_prefix(2);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, base);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw TraceParseError(line, fmt::format("bad {} '{}'", what, field));
  }
  return value;
}

}  // namespace

std::uint64_t TileSchedule::tiles_p(const LayerShape& shape) const { return ceil_div(shape.normalized().p(), tile_p); }
std::uint64_t TileSchedule::tiles_q(const LayerShape& shape) const { return ceil_div(shape.normalized().q(), tile_q); }
std::uint64_t TileSchedule::tile_count(const LayerShape& shape) const {
  return shape.n * tiles_p(shape) * tiles_q(shape);
}

tiling::TilingPattern TileSchedule::ifmap_pattern(const LayerShape& shape) const {
  const LayerShape s = shape.normalized();
  const std::uint64_t th = window(tile_p, s.stride, s.r);
  const std::uint64_t tw = window(tile_q, s.stride, s.s);
  tiling::TilingPattern pat{{{s.h, th, tiles_p(s) == 1 ? th : tile_p * s.stride},
                             {s.w, tw, tiles_q(s) == 1 ? tw : tile_q * s.stride}}};
  for (const auto& a : pat.axes) a.validate();
  return pat;
}

tiling::TilingPattern TileSchedule::ofmap_pattern(const LayerShape& shape) const {
  const LayerShape s = shape.normalized();
  return tiling::TilingPattern{{{s.p(), tile_p, tile_p}, {s.q(), tile_q, tile_q}}};
}

TileSchedule plan_tiles(const LayerShape& shape, const AcceleratorConfig& acc) {
  acc.validate();
  const LayerShape s = shape.normalized();
  const std::uint64_t buf = acc.buffer_bytes();
  const std::uint64_t P = s.p(), Q = s.q();
  TileSchedule t;
  t.weights_resident = s.weight_elements() <= buf;

  auto rows_fit = [&](std::uint64_t tp) {
    return window(tp, s.stride, s.r) * s.w * s.c <= buf && tp * Q * s.k <= buf;
  };
  auto cols_fit = [&](std::uint64_t tq) {
    return s.r * window(tq, s.stride, s.s) * s.c <= buf && tq * s.k <= buf;
  };
  if (rows_fit(1)) {
    std::uint64_t tp = 1;
    while (tp < P && rows_fit(tp + 1)) ++tp;
    t.tile_p = tp;
    t.tile_q = Q;
  } else {
    std::uint64_t tq = 1;
    while (tq < Q && cols_fit(tq + 1)) ++tq;
    t.tile_p = 1;
    t.tile_q = tq;
  }
  return t;
}

TensorLayout layout_layer(const LayerShape& shape, std::uint64_t base) {
  const LayerShape s = shape.normalized();
  TensorLayout l;
  l.ifmap_base = align_up(base, kBurstBytes);
  l.weight_base = align_up(l.ifmap_base + s.ifmap_elements(), kBurstBytes);
  l.ofmap_base = align_up(l.weight_base + s.weight_elements(), kBurstBytes);
  l.end = l.ofmap_base + s.ofmap_elements();
  return l;
}

std::vector<DramAccess> synthesize_trace(const LayerShape& shape, const AcceleratorConfig& acc) {
  shape.validate();
  const TensorLayout lay = layout_layer(shape, 0);
  if (lay.end > acc.dram_bytes) throw std::invalid_argument("layer '" + shape.name + "' does not fit in DRAM");
  std::vector<DramAccess> out;
  TraceBuilder tb(acc.bytes_per_cycle(), 0, out);
  append_layer(shape, lay, plan_tiles(shape, acc), tb);
  return out;
}

std::vector<DramAccess> WorkloadTrace::flatten() const {
  std::vector<DramAccess> all;
  for (const auto& l : layers) all.insert(all.end(), l.accesses.begin(), l.accesses.end());
  return all;
}

WorkloadTrace synthesize_workload(std::string name, std::span<const LayerShape> layers,
                                  const AcceleratorConfig& acc) {
  acc.validate();
  WorkloadTrace w{std::move(name), {}};
  std::uint64_t base = 0;
  std::uint64_t bytes = 0;
  for (const LayerShape& shape : layers) {
    shape.validate();
    LayerTrace lt{shape.normalized(), plan_tiles(shape, acc), layout_layer(shape, base), {}};
    if (lt.layout.end > acc.dram_bytes) {
      throw std::invalid_argument("workload '" + w.name + "' does not fit in DRAM at layer '" + shape.name + "'");
    }
    TraceBuilder tb(acc.bytes_per_cycle(), bytes, lt.accesses);
    append_layer(shape, lt.layout, lt.schedule, tb);
    bytes = tb.bytes();
    base = lt.layout.end;
    w.layers.push_back(std::move(lt));
  }
  return w;
}

void export_trace(std::ostream& out, std::span<const DramAccess> trace) {
  out << "cycle,address,bytes,kind,stream\n";
  for (const DramAccess& a : trace) {
    out << fmt::format("{},0x{:x},{},{},{}\n", a.cycle, a.address, a.bytes, to_string(a.kind), to_string(a.stream));
  }
}

std::vector<DramAccess> parse_trace(std::istream& in, std::uint64_t relocate, std::uint64_t dram_bytes) {
  std::vector<DramAccess> out;
  std::string raw;
  std::size_t line = 0;
  bool seen_row = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (!seen_row && text.starts_with("cycle")) {
      seen_row = true;
      continue;
    }
    seen_row = true;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = text.find(',', pos);
      fields.push_back(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 5) throw TraceParseError(line, fmt::format("expected 5 fields, got {}", fields.size()));
    DramAccess a;
    a.cycle = parse_u64(fields[0], 10, line, "cycle");
    a.address = parse_u64(fields[1], 16, line, "address") + relocate;
    const std::uint64_t bytes = parse_u64(fields[2], 10, line, "bytes");
    if (bytes == 0 || bytes > 0xFFFFFFFFULL) throw TraceParseError(line, "byte count out of range");
    a.bytes = static_cast<std::uint32_t>(bytes);
    try {
      a.kind = parse_access_kind(trim(fields[3]));
      a.stream = parse_stream(trim(fields[4]));
    } catch (const std::invalid_argument& e) {
      throw TraceParseError(line, e.what());
    }
    if (a.address < relocate || a.end() > dram_bytes) throw TraceParseError(line, "address outside DRAM");
    out.push_back(a);
  }
  return out;
}

std::vector<DramAccess> ingest_trace(const std::filesystem::path& path, std::uint64_t relocate,
                                     std::uint64_t dram_bytes) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace '" + path.string() + "'");
  return parse_trace(in, relocate, dram_bytes);
}

}  // namespace secnpu::sim
