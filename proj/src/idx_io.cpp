#include "rgl/idx_io.hpp"

#include <fstream>

namespace rgl {

namespace {

std::uint32_t read_u32be(std::ifstream& f, const std::string& path) {
  unsigned char b[4];
  f.read(reinterpret_cast<char*>(b), 4);
  if (!f) throw FormatError("truncated header: " + path);
  return (static_cast<std::uint32_t>(b[0]) << 24) | (static_cast<std::uint32_t>(b[1]) << 16) |
         (static_cast<std::uint32_t>(b[2]) << 8) | static_cast<std::uint32_t>(b[3]);
}

}  // namespace

IdxDataset load_idx(const std::string& images_path, const std::string& labels_path) {
  std::ifstream fi(images_path, std::ios::binary);
  if (!fi) throw IoError("cannot open: " + images_path);
  if (read_u32be(fi, images_path) != 0x00000803u)
    throw FormatError("image magic mismatch (want 0x00000803): " + images_path);
  const std::uint32_t n = read_u32be(fi, images_path);
  const std::uint32_t h = read_u32be(fi, images_path);
  const std::uint32_t w = read_u32be(fi, images_path);

  std::ifstream fl(labels_path, std::ios::binary);
  if (!fl) throw IoError("cannot open: " + labels_path);
  if (read_u32be(fl, labels_path) != 0x00000801u)
    throw FormatError("label magic mismatch (want 0x00000801): " + labels_path);
  const std::uint32_t nl = read_u32be(fl, labels_path);
  if (n != nl)
    throw FormatError("image count " + std::to_string(n) + " != label count " +
                      std::to_string(nl));

  IdxDataset ds;
  ds.images.reserve(n);
  ds.labels.reserve(n);
  std::vector<unsigned char> px(static_cast<std::size_t>(h) * w);
  for (std::uint32_t i = 0; i < n; ++i) {
    fi.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
    if (!fi) throw FormatError("truncated image payload: " + images_path);
    ImageTensor t(1, h, w, ValueRange::Unit);
    for (std::size_t j = 0; j < px.size(); ++j) t.data[j] = px[j] / 255.0f;
    ds.images.push_back(std::move(t));

    char lab;
    fl.read(&lab, 1);
    if (!fl) throw FormatError("truncated label payload: " + labels_path);
    ds.labels.push_back(static_cast<unsigned char>(lab));
  }
  return ds;
}

}  // namespace rgl
