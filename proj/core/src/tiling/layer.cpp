#include "secnpu/tiling/layer.hpp"

#include <stdexcept>

namespace secnpu::tiling {

LayerShape LayerShape::make(std::string name, std::uint64_t n, std::uint64_t c, std::uint64_t h, std::uint64_t w,
                            std::uint64_t k, std::uint64_t r, std::uint64_t s, std::uint64_t stride) {
  LayerShape shape{std::move(name), n, c, h, w, k, r, s, stride};
  shape.validate();
  return shape;
}

void LayerShape::validate() const {
  if (n == 0 || c == 0 || h == 0 || w == 0 || k == 0 || r == 0 || s == 0 || stride == 0) {
    throw std::invalid_argument("layer '" + name + "': all extents and the stride must be >= 1");
  }
  if (r > h || s > w) throw std::invalid_argument("layer '" + name + "': filter larger than ifmap");
}

LayerShape LayerShape::normalized() const {
  validate();
  LayerShape out = *this;
  out.h = (p() - 1) * stride + r;
  out.w = (q() - 1) * stride + s;
  return out;
}

}  // namespace secnpu::tiling
