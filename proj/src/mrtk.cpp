#include "rgl/mrtk.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

namespace rgl {

namespace {

constexpr char kMagic[4] = {'M', 'R', 'T', 'K'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kDtypeF32 = 0x01;
// Cap total elements so dims cannot overflow size computations (2^31 floats = 8 GiB).
constexpr std::uint64_t kMaxElements = 1ull << 31;

[[noreturn]] void fail(const std::string& path, std::size_t offset, const std::string& what) {
  throw FormatError(path + ": " + what + " at offset " + std::to_string(offset));
}

void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::size_t TensorFile::element_count() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

void mrtk_save(const std::string& path, const std::vector<std::uint32_t>& dims,
               const std::vector<float>& data) {
  if (dims.empty() || dims.size() > 8)
    throw ParameterError("mrtk_save: rank must be 1..8");
  std::uint64_t n = 1;
  for (auto d : dims) n *= d;
  if (n != data.size()) throw ParameterError("mrtk_save: dims do not match data length");
  if (n > kMaxElements) throw ParameterError("mrtk_save: tensor too large for container");

  std::string buf;
  buf.reserve(7 + 4 * dims.size() + 4 * data.size());
  buf.append(kMagic, 4);
  buf.push_back(static_cast<char>(kVersion));
  buf.push_back(static_cast<char>(kDtypeF32));
  buf.push_back(static_cast<char>(dims.size()));
  for (auto d : dims) put_u32le(buf, d);
  for (float v : data) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32le(buf, bits);
  }

  // Write to a temp file then rename, so readers never see a half-written tensor.
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + tmp);
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + path + ": " + ec.message());
}

TensorFile mrtk_load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
  const std::size_t size = raw.size();

  if (size < 4 || std::memcmp(p, kMagic, 4) != 0) fail(path, 0, "bad magic");
  if (size < 5) fail(path, 4, "truncated header");
  if (p[4] != kVersion) fail(path, 4, "unsupported version");
  if (size < 6) fail(path, 5, "truncated header");
  if (p[5] != kDtypeF32) fail(path, 5, "unsupported dtype");
  if (size < 7) fail(path, 6, "truncated header");
  const std::size_t rank = p[6];
  if (rank < 1 || rank > 8) fail(path, 6, "rank out of range");

  std::size_t off = 7;
  if (size < off + 4 * rank) fail(path, size, "truncated dims");
  TensorFile t;
  t.dims.resize(rank);
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    t.dims[i] = get_u32le(p + off);
    n *= t.dims[i];
    if (n > kMaxElements) fail(path, off, "dim overflow");
    off += 4;
  }

  const std::size_t need = off + 4 * static_cast<std::size_t>(n);
  if (size < need) fail(path, size, "truncated payload");
  if (size > need) fail(path, need, "trailing bytes after payload");

  t.data.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < t.data.size(); ++i, off += 4) {
    std::uint32_t bits = get_u32le(p + off);
    std::memcpy(&t.data[i], &bits, 4);
  }
  return t;
}

void save_image_tensor(const std::string& path, const ImageTensor& t) {
  mrtk_save(path,
            {static_cast<std::uint32_t>(t.C), static_cast<std::uint32_t>(t.H),
             static_cast<std::uint32_t>(t.W)},
            t.data);
}

ImageTensor load_image_tensor(const std::string& path) {
  TensorFile tf = mrtk_load(path);
  if (tf.dims.size() > 3)
    throw FormatError(path + ": rank " + std::to_string(tf.dims.size()) +
                      " does not fit a (C,H,W) tensor");
  std::uint32_t d[3] = {1, 1, 1};
  for (std::size_t i = 0; i < tf.dims.size(); ++i)
    d[3 - tf.dims.size() + i] = tf.dims[i];
  ImageTensor img(d[0], d[1], d[2]);
  img.data = std::move(tf.data);
  return img;
}

}  // namespace rgl
