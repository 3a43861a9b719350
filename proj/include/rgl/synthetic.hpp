#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rgl/error.hpp"
#include "rgl/orthonormal.hpp"
#include "rgl/rng.hpp"

namespace rgl {

enum class SynthKind { T1, T2 };

struct SyntheticParams {
  double eps = 0.0;        // class separation along the discriminative axis
  double sigma = 0.0;      // noise scale on the non-informative axes
  double rho = 0.0;        // lattice pitch (T2 only)
  std::size_t lattice_k = 0;  // lattice half-width (T2 only)
};

// Rotated low-dimensional structure embedded in D-dimensional noise.
//
// T1: latent coordinate 1 is ±eps/2 with sign equal to the label, so the two
//     classes sit eps apart along the first rotated axis; coordinates 2..D
//     are i.i.d. N(0, sigma²).
// T2: coordinate 1 as in T1 (with eps possibly 0), coordinate 2 lies on a
//     lattice of pitch rho — multiples of rho for label +1, offset by rho/2
//     for label −1 — and coordinates 3..D are noise.
//
// Samples are rows of X in ambient coordinates: x = U·z where z is the
// latent vector above and U is a uniformly random rotation.
struct SyntheticDataset {
  SynthKind kind = SynthKind::T1;
  Eigen::MatrixXd X;       // N × D, one sample per row
  std::vector<int> y;      // ±1
  OrthonormalMatrix U;     // D × D; column j is the j-th latent axis
  SyntheticParams params;

  std::size_t n() const { return static_cast<std::size_t>(X.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(X.cols()); }
};

SyntheticDataset gen_t1(double eps, double sigma, std::size_t n, std::size_t dim, RngStream& rng);
SyntheticDataset gen_t2(double rho, double eps, double sigma, std::size_t lattice_k, std::size_t n,
                        std::size_t dim, RngStream& rng);

// Directory layout: samples.mrtk (N×D), labels.mrtk (N), rotation.mrtk (D×D),
// meta.json. Tensors are stored in 32-bit floats; the rotation is snapped
// back to the nearest orthonormal matrix on load to undo the rounding.
void save_dataset(const SyntheticDataset& ds, const std::string& dir);
SyntheticDataset load_dataset(const std::string& dir);

}  // namespace rgl
