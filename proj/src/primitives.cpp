#include "rgl/primitives.hpp"

#include <algorithm>
#include <cmath>

namespace rgl {

namespace {

// Symmetric (edge-inclusive) reflection into [0, n): ...cba|abc...|cba...
std::ptrdiff_t reflect(std::ptrdiff_t i, std::ptrdiff_t n) {
  if (n == 1) return 0;
  const std::ptrdiff_t period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// sin tables for the normalized pixel grid: S(i-1, p) = sin(pi * i * r_p).
Eigen::MatrixXd sin_table(std::size_t modes, const std::vector<double>& coords) {
  Eigen::MatrixXd s(modes, coords.size());
  for (std::size_t i = 1; i <= modes; ++i)
    for (std::size_t p = 0; p < coords.size(); ++p)
      s(i - 1, p) = std::sin(M_PI * static_cast<double>(i) * coords[p]);
  return s;
}

std::vector<double> grid_coords(std::size_t n) {
  std::vector<double> r(n);
  for (std::size_t p = 0; p < n; ++p)
    r[p] = n > 1 ? static_cast<double>(p) / static_cast<double>(n - 1) : 0.0;
  return r;
}

double sample_bilinear(const ImageTensor& x, std::size_t c, double py, double px) {
  py = std::min(static_cast<double>(x.H - 1), std::max(0.0, py));
  px = std::min(static_cast<double>(x.W - 1), std::max(0.0, px));
  const std::size_t y0 = static_cast<std::size_t>(py);
  const std::size_t x0 = static_cast<std::size_t>(px);
  const std::size_t y1 = std::min(y0 + 1, x.H - 1);
  const std::size_t x1 = std::min(x0 + 1, x.W - 1);
  const double fy = py - static_cast<double>(y0);
  const double fx = px - static_cast<double>(x0);
  const double a = x.at(c, y0, x0), b = x.at(c, y0, x1);
  const double d = x.at(c, y1, x0), e = x.at(c, y1, x1);
  return (1.0 - fy) * ((1.0 - fx) * a + fx * b) + fy * ((1.0 - fx) * d + fx * e);
}

}  // namespace

const char* PrimitiveParams::name() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Spectral: return "spectral";
    case Kind::Spatial: return "spatial";
    case Kind::Color: return "color";
    case Kind::Additive: return "additive";
  }
  return "?";
}

void PrimitiveParams::validate() const {
  const std::string who = name();
  if (sigma_min < 0.0 || sigma_max < sigma_min)
    throw ParameterError(who + ": need 0 <= sigma_min <= sigma_max");
  if (kind == Kind::Identity) return;
  if (K < 1) throw ParameterError(who + ": smoothness K must be >= 1");
  if (kind == Kind::Spectral && K % 2 == 0)
    throw ParameterError("spectral: filter size must be odd");
  if (kind == Kind::Color) {
    const std::size_t d = delta == 0 ? K : delta;
    if (d < 1 || d > K) throw ParameterError("color: band width must be in [1, K]");
  }
  if (kind == Kind::Spatial && sigma_max > spatial_sigma_max(K) * (1.0 + 1e-12))
    throw ParameterError("spatial: strength " + std::to_string(sigma_max) +
                         " exceeds the bijectivity envelope " +
                         std::to_string(spatial_sigma_max(K)) + " for K=" + std::to_string(K));
}

Eigen::MatrixXd draw_fir_noise(RngStream& rng, std::size_t Kw, double sigma) {
  if (Kw % 2 == 0 || Kw < 1) throw ParameterError("spectral: filter size must be odd");
  if (sigma < 0.0) throw ParameterError("spectral: sigma must be >= 0");
  Eigen::MatrixXd k(Kw, Kw);
  for (std::size_t a = 0; a < Kw; ++a)
    for (std::size_t b = 0; b < Kw; ++b) k(a, b) = sigma * rng.gaussian();
  return k;
}

Eigen::MatrixXd draw_displacement_coeffs(RngStream& rng, std::size_t Kt, double sigma) {
  if (Kt < 1) throw ParameterError("spatial: cut frequency must be >= 1");
  if (sigma < 0.0) throw ParameterError("spatial: sigma must be >= 0");
  // Largest index with i^2 + 1 <= Kt^2 (partner must be >= 1).
  const std::size_t imax =
      Kt >= 2 ? static_cast<std::size_t>(std::sqrt(static_cast<double>(Kt) * Kt - 1.0)) : 0;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(imax, imax);
  for (std::size_t i = 1; i <= imax; ++i)
    for (std::size_t j = 1; j <= imax; ++j) {
      if (i * i + j * j > Kt * Kt) continue;
      b(i - 1, j - 1) = sigma / std::sqrt(static_cast<double>(i * i + j * j)) * rng.gaussian();
    }
  return b;
}

ColorCoeffs draw_color_coeffs(RngStream& rng, std::size_t Kg, double sigma, std::size_t delta,
                              std::size_t channels) {
  if (delta < 1 || delta > Kg) throw ParameterError("color: band width must be in [1, K]");
  if (sigma < 0.0) throw ParameterError("color: sigma must be >= 0");
  ColorCoeffs cc;
  cc.band_start = rng.uniform_index(Kg - delta + 1);
  cc.beta.resize(channels, delta);
  for (std::size_t n = 0; n < delta; ++n)
    for (std::size_t c = 0; c < channels; ++c) cc.beta(c, n) = sigma * rng.gaussian();
  return cc;
}

ImageTensor spectral_transform(const ImageTensor& x, std::size_t Kw, double sigma,
                               RngStream& rng) {
  if (sigma == 0.0) return x;  // exact identity, consumes no randomness
  Eigen::MatrixXd k = draw_fir_noise(rng, Kw, sigma);
  const std::ptrdiff_t c0 = static_cast<std::ptrdiff_t>(Kw / 2);
  k(c0, c0) += 1.0;  // unit impulse: zero noise would be a no-op

  ImageTensor out(x.C, x.H, x.W, ValueRange::Unit);
  const std::ptrdiff_t H = static_cast<std::ptrdiff_t>(x.H);
  const std::ptrdiff_t W = static_cast<std::ptrdiff_t>(x.W);
  for (std::size_t c = 0; c < x.C; ++c)
    for (std::ptrdiff_t y = 0; y < H; ++y)
      for (std::ptrdiff_t xx = 0; xx < W; ++xx) {
        double acc = 0.0;
        for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(Kw); ++a)
          for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(Kw); ++b) {
            const std::ptrdiff_t sy = reflect(y + a - c0, H);
            const std::ptrdiff_t sx = reflect(xx + b - c0, W);
            acc += k(a, b) * x.at(c, static_cast<std::size_t>(sy), static_cast<std::size_t>(sx));
          }
        out.at(c, static_cast<std::size_t>(y), static_cast<std::size_t>(xx)) =
            static_cast<float>(clamp01(acc));
      }
  return out;
}

void displacement_field(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2, std::size_t H,
                        std::size_t W, Eigen::MatrixXd& t1, Eigen::MatrixXd& t2) {
  const std::size_t modes = static_cast<std::size_t>(b1.rows());
  if (modes == 0) {
    t1 = Eigen::MatrixXd::Zero(H, W);
    t2 = Eigen::MatrixXd::Zero(H, W);
    return;
  }
  const Eigen::MatrixXd s1 = sin_table(modes, grid_coords(H));
  const Eigen::MatrixXd s2 = sin_table(modes, grid_coords(W));
  t1 = s1.transpose() * b1 * s2;
  t2 = s1.transpose() * b2 * s2;
}

ImageTensor spatial_transform(const ImageTensor& x, std::size_t Kt, double sigma,
                              RngStream& rng) {
  if (sigma < 0.0) throw ParameterError("spatial: sigma must be >= 0");
  if (sigma > spatial_sigma_max(Kt) * (1.0 + 1e-12))
    throw ParameterError("spatial: strength " + std::to_string(sigma) +
                         " exceeds the bijectivity envelope " +
                         std::to_string(spatial_sigma_max(Kt)) + " for K=" + std::to_string(Kt));
  if (sigma == 0.0) return x;

  Eigen::MatrixXd b1 = draw_displacement_coeffs(rng, Kt, sigma);
  Eigen::MatrixXd b2 = draw_displacement_coeffs(rng, Kt, sigma);
  Eigen::MatrixXd t1, t2;
  displacement_field(b1, b2, x.H, x.W, t1, t2);

  ImageTensor out(x.C, x.H, x.W, ValueRange::Unit);
  for (std::size_t y = 0; y < x.H; ++y)
    for (std::size_t xx = 0; xx < x.W; ++xx) {
      const double r1 = x.H > 1 ? static_cast<double>(y) / static_cast<double>(x.H - 1) : 0.0;
      const double r2 = x.W > 1 ? static_cast<double>(xx) / static_cast<double>(x.W - 1) : 0.0;
      const double q1 = clamp01(r1 + t1(y, xx));
      const double q2 = clamp01(r2 + t2(y, xx));
      const double py = q1 * static_cast<double>(x.H - 1);
      const double px = q2 * static_cast<double>(x.W - 1);
      for (std::size_t c = 0; c < x.C; ++c)
        out.at(c, y, xx) = static_cast<float>(clamp01(sample_bilinear(x, c, py, px)));
    }
  return out;
}

ImageTensor color_transform(const ImageTensor& x, std::size_t Kg, double sigma,
                            std::size_t delta, RngStream& rng) {
  if (sigma < 0.0) throw ParameterError("color: sigma must be >= 0");
  if (sigma == 0.0) return x;
  ColorCoeffs cc = draw_color_coeffs(rng, Kg, sigma, delta, x.C);

  ImageTensor out(x.C, x.H, x.W, ValueRange::Unit);
  for (std::size_t c = 0; c < x.C; ++c)
    for (std::size_t y = 0; y < x.H; ++y)
      for (std::size_t xx = 0; xx < x.W; ++xx) {
        const double v = x.at(c, y, xx);
        double acc = v;
        for (std::size_t n = 0; n < delta; ++n) {
          const double freq = static_cast<double>(cc.band_start + n);
          acc += cc.beta(c, n) * std::sin(M_PI * freq * v);  // fixes v=0 and v=1
        }
        out.at(c, y, xx) = static_cast<float>(clamp01(acc));
      }
  return out;
}

ImageTensor additive_noise(const ImageTensor& x, double sigma, RngStream& rng, bool enabled) {
  if (!enabled)
    throw ConfigError("additive: primitive is disabled; enable it in the configuration");
  if (sigma < 0.0) throw ParameterError("additive: sigma must be >= 0");
  if (sigma == 0.0) return x;
  ImageTensor out(x.C, x.H, x.W, ValueRange::Unit);
  for (std::size_t i = 0; i < x.data.size(); ++i)
    out.data[i] = static_cast<float>(clamp01(x.data[i] + sigma * rng.gaussian()));
  return out;
}

BijectivityReport validate_bijectivity(std::size_t Kt, double sigma, std::size_t grid,
                                       std::size_t draws) {
  if (grid < 8) throw ParameterError("validate_bijectivity: grid must be >= 8");
  RngStream rng = rng_stream(0xB17EC7u, Kt);  // deterministic verdicts

  // Evaluation points: every lattice coordinate plus central-difference
  // neighbours at an eighth of the shortest field wavelength.
  const double h = 1.0 / (8.0 * static_cast<double>(std::max<std::size_t>(Kt, 2)));
  std::vector<double> coords;
  coords.reserve(3 * grid);
  for (std::size_t g = 0; g < grid; ++g) {
    const double r = static_cast<double>(g) / static_cast<double>(grid - 1);
    coords.push_back(r - h);
    coords.push_back(r);
    coords.push_back(r + h);
  }

  const std::size_t imax =
      Kt >= 2 ? static_cast<std::size_t>(std::sqrt(static_cast<double>(Kt) * Kt - 1.0)) : 0;
  double worst = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    Eigen::MatrixXd b1 = draw_displacement_coeffs(rng, Kt, sigma);
    Eigen::MatrixXd b2 = draw_displacement_coeffs(rng, Kt, sigma);
    if (imax == 0) continue;
    const Eigen::MatrixXd s = sin_table(imax, coords);
    const Eigen::MatrixXd f1 = s.transpose() * b1 * s;  // field on coords x coords
    const Eigen::MatrixXd f2 = s.transpose() * b2 * s;
    for (std::size_t g1 = 0; g1 < grid; ++g1)
      for (std::size_t g2 = 0; g2 < grid; ++g2) {
        const std::size_t i = 3 * g1 + 1, j = 3 * g2 + 1;
        const double a11 = (f1(i + 1, j) - f1(i - 1, j)) / (2.0 * h);
        const double a12 = (f1(i, j + 1) - f1(i, j - 1)) / (2.0 * h);
        const double a21 = (f2(i + 1, j) - f2(i - 1, j)) / (2.0 * h);
        const double a22 = (f2(i, j + 1) - f2(i, j - 1)) / (2.0 * h);
        const double fro2 = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
        const double det = a11 * a22 - a12 * a21;
        const double disc = std::max(0.0, fro2 * fro2 - 4.0 * det * det);
        const double opnorm2 = 0.5 * (fro2 + std::sqrt(disc));
        worst = std::max(worst, std::sqrt(opnorm2));
      }
  }
  return BijectivityReport{worst < 1.0, worst};
}

double spatial_sigma_max(std::size_t Kt) {
  if (Kt <= 1) return 1e18;  // no admissible modes: the field is identically zero
  // Frozen from a validate_bijectivity sweep (grid 17, 500 draws; largest
  // strength whose max displacement gradient stays below 1, divided by 1.15
  // for headroom and rounded down); log-log interpolated between entries,
  // 1/K extrapolated beyond the last one (conservative: the measured decay
  // is slower than 1/K).
  static const std::pair<double, double> table[] = {
      {2, 0.103},    {3, 0.0582},    {5, 0.0308},    {10, 0.0135},  {20, 0.00667},
      {50, 0.00286}, {100, 0.00140}, {200, 0.000634}, {500, 0.000276},
  };
  const std::size_t n = sizeof(table) / sizeof(table[0]);
  const double k = static_cast<double>(Kt);
  if (k <= table[0].first) return table[0].second;
  if (k >= table[n - 1].first) return table[n - 1].second * table[n - 1].first / k;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (k <= table[i + 1].first) {
      const double t = (std::log(k) - std::log(table[i].first)) /
                       (std::log(table[i + 1].first) - std::log(table[i].first));
      return std::exp((1.0 - t) * std::log(table[i].second) + t * std::log(table[i + 1].second));
    }
  }
  return table[n - 1].second;
}

}  // namespace rgl
