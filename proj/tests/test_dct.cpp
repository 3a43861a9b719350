#include <doctest.h>

#include <cmath>

#include "rgl/dct.hpp"
#include "rgl/rng.hpp"

using namespace rgl;

namespace {

ImageTensor random_image(std::size_t C, std::size_t H, std::size_t W, std::uint64_t seed) {
  RngStream rng = rng_stream(seed, 0);
  ImageTensor t(C, H, W, ValueRange::Unit);
  for (auto& v : t.data) v = static_cast<float>(rng.uniform01());
  return t;
}

double energy(const ImageTensor& t) {
  double s = 0.0;
  for (float v : t.data) s += static_cast<double>(v) * v;
  return s;
}

}  // namespace

TEST_CASE("basis matrix is orthogonal") {
  for (std::size_t N : {2u, 8u, 31u}) {
    const Eigen::MatrixXd& B = dct_basis(N);
    const Eigen::MatrixXd d =
        B * B.transpose() - Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(N),
                                                      static_cast<Eigen::Index>(N));
    CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("constant image concentrates in the DC coefficient") {
  ImageTensor t(1, 8, 8, ValueRange::Unit);
  for (auto& v : t.data) v = 0.75f;
  const ImageTensor c = dct2(t);
  // DC = value * sqrt(H*W); all other coefficients vanish.
  CHECK(c.at(0, 0, 0) == doctest::Approx(0.75 * 8.0).epsilon(1e-6));
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t x = 0; x < 8; ++x)
      if (y + x > 0) CHECK(std::abs(c.at(0, y, x)) < 1e-6);
}

TEST_CASE("round trip reconstructs the image") {
  for (auto [h, w] : {std::pair<std::size_t, std::size_t>{8, 8}, {15, 9}, {224, 224}}) {
    const ImageTensor t = random_image(3, h, w, 21 + h);
    const ImageTensor back = idct2(dct2(t));
    CHECK(max_abs_diff(t, back) < 1e-6);
  }
}

TEST_CASE("transform preserves energy") {
  const ImageTensor t = random_image(3, 16, 12, 5);
  const ImageTensor c = dct2(t);
  CHECK(energy(c) == doctest::Approx(energy(t)).epsilon(1e-5));  // f32 storage
}

TEST_CASE("frequency flip is an isometric involution") {
  const ImageTensor t = random_image(1, 32, 32, 9);
  const ImageTensor once = freq_flip(t);
  CHECK(energy(once) == doctest::Approx(energy(t)).epsilon(1e-5));  // f32 storage
  const ImageTensor twice = freq_flip(once);
  CHECK(max_abs_diff(t, twice) < 1e-6);
}

TEST_CASE("frequency flip moves DC to the highest frequency atom") {
  ImageTensor t(1, 8, 8, ValueRange::Unit);
  for (auto& v : t.data) v = 1.0f;  // pure DC
  const ImageTensor flipped = freq_flip(t);
  const ImageTensor c = dct2(flipped);
  CHECK(std::abs(c.at(0, 7, 7)) == doctest::Approx(8.0).epsilon(1e-6));
  double rest = 0.0;
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t x = 0; x < 8; ++x)
      if (y != 7 || x != 7) rest += std::abs(c.at(0, y, x));
  CHECK(rest < 1e-6);
}

TEST_CASE("band filters are idempotent orthogonal projections") {
  const ImageTensor t = random_image(3, 32, 32, 13);
  for (BandMode mode : {BandMode::Lowpass, BandMode::Highpass}) {
    const ImageTensor once = band_filter(t, mode, 16);
    const ImageTensor twice = band_filter(once, mode, 16);
    CHECK(max_abs_diff(once, twice) < 1e-6);
    CHECK(energy(once) <= energy(t) * (1.0 + 1e-9));
  }
}

TEST_CASE("full-band filter is the identity") {
  const ImageTensor t = random_image(1, 16, 16, 2);
  CHECK(max_abs_diff(band_filter(t, BandMode::Lowpass, 16), t) < 1e-6);
  CHECK(max_abs_diff(band_filter(t, BandMode::Highpass, 16), t) < 1e-6);
}

TEST_CASE("complementary low/high squares split the energy") {
  const ImageTensor t = random_image(1, 32, 32, 44);
  const ImageTensor lo = band_filter(t, BandMode::Lowpass, 16);
  const ImageTensor hi = band_filter(t, BandMode::Highpass, 16);
  // The two 16x16 corner squares are disjoint coefficient sets, so the
  // energies add up to at most the total; the residual is the middle band.
  const double sum = energy(lo) + energy(hi);
  CHECK(sum <= energy(t) * (1.0 + 1e-9));
  CHECK(sum > 0.0);

  const ImageTensor c_lo = dct2(lo);
  for (std::size_t y = 0; y < 32; ++y)
    for (std::size_t x = 0; x < 32; ++x)
      if (y >= 16 || x >= 16) CHECK(std::abs(c_lo.at(0, y, x)) < 1e-6);
  const ImageTensor c_hi = dct2(hi);
  for (std::size_t y = 0; y < 32; ++y)
    for (std::size_t x = 0; x < 32; ++x)
      if (y + 16 < 32 || x + 16 < 32) CHECK(std::abs(c_hi.at(0, y, x)) < 1e-6);
}

TEST_CASE("band size outside [1, min(H,W)] is a parameter error") {
  const ImageTensor t = random_image(1, 8, 12, 3);
  CHECK_THROWS_AS(band_filter(t, BandMode::Lowpass, 0), ParameterError);
  CHECK_THROWS_AS(band_filter(t, BandMode::Lowpass, 9), ParameterError);
  CHECK_NOTHROW(band_filter(t, BandMode::Lowpass, 8));
}
