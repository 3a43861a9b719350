#include "rgl/image_io.hpp"

#include <cmath>
#include <filesystem>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace rgl {

ImageTensor load_png(const std::string& path) {
  if (!std::filesystem::exists(path)) throw IoError("no such file: " + path);
  cv::Mat m = cv::imread(path, cv::IMREAD_UNCHANGED);
  if (m.empty()) throw FormatError("not a decodable image: " + path);
  if (m.depth() != CV_8U)
    throw FormatError("unsupported bit depth (only 8-bit): " + path);
  const int ch = m.channels();
  if (ch != 1 && ch != 3)
    throw FormatError("unsupported channel count " + std::to_string(ch) +
                      " (grayscale or RGB only): " + path);

  ImageTensor t(static_cast<std::size_t>(ch), static_cast<std::size_t>(m.rows),
                static_cast<std::size_t>(m.cols), ValueRange::Unit);
  for (int y = 0; y < m.rows; ++y) {
    const unsigned char* row = m.ptr<unsigned char>(y);
    for (int x = 0; x < m.cols; ++x) {
      if (ch == 1) {
        t.at(0, y, x) = row[x] / 255.0f;
      } else {
        // OpenCV stores BGR.
        t.at(0, y, x) = row[3 * x + 2] / 255.0f;
        t.at(1, y, x) = row[3 * x + 1] / 255.0f;
        t.at(2, y, x) = row[3 * x + 0] / 255.0f;
      }
    }
  }
  return t;
}

void save_png(const std::string& path, const ImageTensor& t) {
  if (t.C != 1 && t.C != 3)
    throw ParameterError("save_png: channel count must be 1 or 3");
  const int ch = static_cast<int>(t.C);
  cv::Mat m(static_cast<int>(t.H), static_cast<int>(t.W), ch == 1 ? CV_8UC1 : CV_8UC3);
  auto quant = [](float v) {
    float c = std::min(1.0f, std::max(0.0f, v));
    return static_cast<unsigned char>(std::lround(c * 255.0f));
  };
  for (int y = 0; y < m.rows; ++y) {
    unsigned char* row = m.ptr<unsigned char>(y);
    for (int x = 0; x < m.cols; ++x) {
      if (ch == 1) {
        row[x] = quant(t.at(0, y, x));
      } else {
        row[3 * x + 0] = quant(t.at(2, y, x));  // B
        row[3 * x + 1] = quant(t.at(1, y, x));  // G
        row[3 * x + 2] = quant(t.at(0, y, x));  // R
      }
    }
  }
  if (!cv::imwrite(path, m)) throw IoError("cannot write image: " + path);
}

}  // namespace rgl
