#pragma once
#include <Eigen/Dense>

#include "rgl/rng.hpp"
#include "rgl/tensor.hpp"

namespace rgl {

// One pool entry of the augmentation engine. K is the smoothness knob
// (filter size / cut frequency / max color frequency), sigma the strength;
// strengths are drawn uniformly from [sigma_min, sigma_max] per application.
// sigma = 0 always degrades to the identity, exactly.
struct PrimitiveParams {
  enum class Kind { Identity, Spectral, Spatial, Color, Additive };
  Kind kind = Kind::Identity;
  std::size_t K = 1;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::size_t delta = 0;  // color band width; 0 resolves to K at validation

  const char* name() const;
  void validate() const;  // throws ParameterError with the primitive's name
};

// --- raw parameter draws (exposed so tests can check the distribution laws) --

// Kw x Kw noise filter with i.i.d. N(0, sigma^2) entries (impulse NOT added);
// entries drawn row-major. E||kernel||_F^2 = Kw^2 sigma^2.
Eigen::MatrixXd draw_fir_noise(RngStream& rng, std::size_t Kw, double sigma);

// Sine-series coefficients of one smooth displacement field component:
// beta(i-1, j-1) ~ N(0, sigma^2/(i^2+j^2)) for i,j >= 1 with i^2+j^2 <= Kt^2,
// zero outside the disk; i ascending, j ascending within i.
Eigen::MatrixXd draw_displacement_coeffs(RngStream& rng, std::size_t Kt, double sigma);

struct ColorCoeffs {
  std::size_t band_start = 0;    // s; active frequencies are s .. s+delta-1
  Eigen::MatrixXd beta;          // channels x delta, N(0, sigma^2) each
};
ColorCoeffs draw_color_coeffs(RngStream& rng, std::size_t Kg, double sigma, std::size_t delta,
                              std::size_t channels);

// --- transformations ---------------------------------------------------------

// Convolves every channel with one shared kernel (unit impulse + noise),
// symmetric reflect padding, then clips to [0,1]. Kw must be odd.
ImageTensor spectral_transform(const ImageTensor& x, std::size_t Kw, double sigma,
                               RngStream& rng);

// Warps by a smooth random displacement field in normalized [0,1]^2
// coordinates; zero on the border by construction, bilinear sampling with
// border clamp. sigma must stay within the shipped bijectivity envelope
// (spatial_sigma_max); out-of-range strengths are an error, never clamped.
ImageTensor spatial_transform(const ImageTensor& x, std::size_t Kt, double sigma,
                              RngStream& rng);

// Pointwise color curve x + sum_n beta_n sin(pi n x) over a random band of
// `delta` consecutive frequencies inside [0, Kg]; fixes 0 and 1, then clips.
ImageTensor color_transform(const ImageTensor& x, std::size_t Kg, double sigma,
                            std::size_t delta, RngStream& rng);

// Per-pixel i.i.d. Gaussian noise, clipped. Disabled by default: calling with
// enabled=false is a configuration error.
ImageTensor additive_noise(const ImageTensor& x, double sigma, RngStream& rng, bool enabled);

// --- bijectivity of the spatial field ---------------------------------------

struct BijectivityReport {
  bool ok = false;             // max_jacobian_norm < 1 over all draws
  double max_jacobian_norm = 0.0;
};

// Finite-difference Jacobian of the displacement field on a grid x grid
// lattice over `draws` coefficient draws (internally seeded, deterministic).
// Operator norm >= 1 anywhere means the warp may fold, hence not bijective.
BijectivityReport validate_bijectivity(std::size_t Kt, double sigma, std::size_t grid,
                                       std::size_t draws = 100);

// Largest strength the toolkit admits for a given cut frequency; frozen from
// a validate_bijectivity sweep with headroom (see tests). This envelope is
// what spatial_transform and the pipeline configs enforce.
double spatial_sigma_max(std::size_t Kt);

// Displacement field components evaluated on the pixel grid of an H x W
// image (normalized coordinates). Used by the warp, the validator and tests.
void displacement_field(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2, std::size_t H,
                        std::size_t W, Eigen::MatrixXd& t1, Eigen::MatrixXd& t2);

}  // namespace rgl
