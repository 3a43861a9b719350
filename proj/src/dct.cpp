#include "rgl/dct.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace rgl {

namespace {

Eigen::MatrixXd channel(const ImageTensor& t, std::size_t c) {
  Eigen::MatrixXd m(t.H, t.W);
  for (std::size_t y = 0; y < t.H; ++y)
    for (std::size_t x = 0; x < t.W; ++x) m(y, x) = t.at(c, y, x);
  return m;
}

void store_channel(ImageTensor& t, std::size_t c, const Eigen::MatrixXd& m) {
  for (std::size_t y = 0; y < t.H; ++y)
    for (std::size_t x = 0; x < t.W; ++x) t.at(c, y, x) = static_cast<float>(m(y, x));
}

}  // namespace

const Eigen::MatrixXd& dct_basis(std::size_t N) {
  if (N == 0) throw ParameterError("dct_basis: N must be >= 1");
  static std::map<std::size_t, Eigen::MatrixXd> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;

  Eigen::MatrixXd b(N, N);
  const double a0 = std::sqrt(1.0 / static_cast<double>(N));
  const double a = std::sqrt(2.0 / static_cast<double>(N));
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t n = 0; n < N; ++n)
      b(u, n) = (u == 0 ? a0 : a) *
                std::cos(M_PI * (2.0 * n + 1.0) * u / (2.0 * static_cast<double>(N)));
  return cache.emplace(N, std::move(b)).first->second;
}

ImageTensor dct2(const ImageTensor& x) {
  const Eigen::MatrixXd& bh = dct_basis(x.H);
  const Eigen::MatrixXd& bw = dct_basis(x.W);
  ImageTensor out(x.C, x.H, x.W, ValueRange::Raw);
  for (std::size_t c = 0; c < x.C; ++c)
    store_channel(out, c, bh * channel(x, c) * bw.transpose());
  return out;
}

ImageTensor idct2(const ImageTensor& coeffs) {
  const Eigen::MatrixXd& bh = dct_basis(coeffs.H);
  const Eigen::MatrixXd& bw = dct_basis(coeffs.W);
  ImageTensor out(coeffs.C, coeffs.H, coeffs.W, ValueRange::Raw);
  for (std::size_t c = 0; c < coeffs.C; ++c)
    store_channel(out, c, bh.transpose() * channel(coeffs, c) * bw);
  return out;
}

ImageTensor freq_flip(const ImageTensor& x) {
  ImageTensor co = dct2(x);
  ImageTensor flipped(co.C, co.H, co.W, ValueRange::Raw);
  for (std::size_t c = 0; c < co.C; ++c)
    for (std::size_t y = 0; y < co.H; ++y)
      for (std::size_t xx = 0; xx < co.W; ++xx)
        flipped.at(c, y, xx) = co.at(c, co.H - 1 - y, co.W - 1 - xx);
  return idct2(flipped);
}

ImageTensor band_filter(const ImageTensor& x, BandMode mode, std::size_t square) {
  const std::size_t lim = std::min(x.H, x.W);
  if (square < 1 || square > lim)
    throw ParameterError("band_filter: square must be in [1, min(H,W)]");
  ImageTensor co = dct2(x);
  for (std::size_t c = 0; c < co.C; ++c)
    for (std::size_t y = 0; y < co.H; ++y)
      for (std::size_t xx = 0; xx < co.W; ++xx) {
        const bool in_low = y < square && xx < square;
        const bool in_high = y + square >= co.H && xx + square >= co.W;
        const bool keep = mode == BandMode::Lowpass ? in_low : in_high;
        if (!keep) co.at(c, y, xx) = 0.0f;
      }
  return idct2(co);
}

}  // namespace rgl
