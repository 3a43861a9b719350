#pragma once
#include <string>

#include "rgl/tensor.hpp"

namespace rgl {

// 8-bit PNG <-> unit-range tensor. Load maps byte b to b/255 exactly and
// returns C=1 (grayscale) or C=3 (RGB); save maps v to round(clamp(v,0,1)*255).
// 16-bit or alpha images are format errors.
ImageTensor load_png(const std::string& path);
void save_png(const std::string& path, const ImageTensor& t);

}  // namespace rgl
