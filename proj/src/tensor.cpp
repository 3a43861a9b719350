#include "rgl/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace rgl {

void clip_unit(ImageTensor& t) {
  for (auto& v : t.data) v = std::min(1.0f, std::max(0.0f, v));
  t.range = ValueRange::Unit;
}

bool in_unit_range(const ImageTensor& t) {
  for (float v : t.data)
    if (!(v >= 0.0f && v <= 1.0f)) return false;
  return true;
}

double max_abs_diff(const ImageTensor& a, const ImageTensor& b) {
  if (!a.same_shape(b)) throw ParameterError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(static_cast<double>(a.data[i]) - b.data[i]));
  return m;
}

double l2_norm(const ImageTensor& t) {
  double s = 0.0;
  for (float v : t.data) s += static_cast<double>(v) * v;
  return std::sqrt(s);
}

}  // namespace rgl
