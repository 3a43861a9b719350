#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rgl/tensor.hpp"

namespace rgl {

// Minimal portable tensor container.
// Layout (all little-endian):
//   bytes 0-3   magic "MRTK"
//   byte  4     version, 0x01
//   byte  5     dtype, 0x01 = float32 (the only dtype)
//   byte  6     rank (1..8)
//   then  rank * u32 dims
//   then  row-major float32 payload
// Malformed files raise FormatError naming the byte offset of the problem.

struct TensorFile {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;
  std::size_t element_count() const;
};

void mrtk_save(const std::string& path, const std::vector<std::uint32_t>& dims,
               const std::vector<float>& data);
TensorFile mrtk_load(const std::string& path);

// (C,H,W) image convenience wrappers; load accepts rank 1..3 and left-pads
// the shape with ones.
void save_image_tensor(const std::string& path, const ImageTensor& t);
ImageTensor load_image_tensor(const std::string& path);

}  // namespace rgl
