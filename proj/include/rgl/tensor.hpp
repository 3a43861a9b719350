#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rgl/error.hpp"

namespace rgl {

enum class ValueRange : std::uint8_t { Unit, Raw };

// Channel-major (C,H,W) row-major float tensor. Images use C in {1,3} with
// unit range; flat vectors (synthetic samples, DCT coefficients) ride along
// as Raw with whatever shape is natural.
struct ImageTensor {
  std::size_t C = 0, H = 0, W = 0;
  std::vector<float> data;
  ValueRange range = ValueRange::Raw;

  ImageTensor() = default;
  ImageTensor(std::size_t c, std::size_t h, std::size_t w, ValueRange r = ValueRange::Raw)
      : C(c), H(h), W(w), data(c * h * w, 0.0f), range(r) {}

  std::size_t size() const { return C * H * W; }

  float& at(std::size_t c, std::size_t y, std::size_t x) {
    return data[(c * H + y) * W + x];
  }
  float at(std::size_t c, std::size_t y, std::size_t x) const {
    return data[(c * H + y) * W + x];
  }

  bool same_shape(const ImageTensor& o) const { return C == o.C && H == o.H && W == o.W; }
};

// Clamp to [0,1] in place and tag as unit-range.
void clip_unit(ImageTensor& t);

// True if every element lies in [0,1].
bool in_unit_range(const ImageTensor& t);

// max_i |a_i - b_i|; shapes must match.
double max_abs_diff(const ImageTensor& a, const ImageTensor& b);

// l2 norm with f64 accumulation.
double l2_norm(const ImageTensor& t);

}  // namespace rgl
