#pragma once

#include <cstdint>
#include <string>

namespace secnpu::tiling {

// Unpadded convolution layer: ifmap (N, C, H, W), filters (K, C, R, S),
// ofmap (N, K, P, Q). Fully connected layers are lowered to 1x1 convs.
struct LayerShape {
  std::string name;
  std::uint64_t n = 1;
  std::uint64_t c = 1;
  std::uint64_t h = 1;
  std::uint64_t w = 1;
  std::uint64_t k = 1;
  std::uint64_t r = 1;
  std::uint64_t s = 1;
  std::uint64_t stride = 1;

  // Throws std::invalid_argument for zero extents or filters larger than the ifmap.
  static LayerShape make(std::string name, std::uint64_t n, std::uint64_t c, std::uint64_t h, std::uint64_t w,
                         std::uint64_t k, std::uint64_t r, std::uint64_t s, std::uint64_t stride);

  std::uint64_t p() const { return (h - r) / stride + 1; }
  std::uint64_t q() const { return (w - s) / stride + 1; }

  // Trims trailing ifmap rows/columns no window reaches, so H = (P-1)*stride + R.
  LayerShape normalized() const;

  std::uint64_t ifmap_elements() const { return n * c * h * w; }
  std::uint64_t weight_elements() const { return k * c * r * s; }
  std::uint64_t ofmap_elements() const { return n * k * p() * q(); }
  std::uint64_t mac_operations() const { return n * k * p() * q() * c * r * s; }

  void validate() const;
  bool operator==(const LayerShape&) const = default;
};

}  // namespace secnpu::tiling
