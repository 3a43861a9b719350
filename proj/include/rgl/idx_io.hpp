#pragma once
#include <string>
#include <vector>

#include "rgl/tensor.hpp"

namespace rgl {

struct IdxDataset {
  std::vector<ImageTensor> images;  // (1,H,W), unit range
  std::vector<int> labels;
};

// Reads the classic big-endian IDX pair (images magic 0x00000803, labels
// magic 0x00000801). Image/label counts must agree.
IdxDataset load_idx(const std::string& images_path, const std::string& labels_path);

}  // namespace rgl
