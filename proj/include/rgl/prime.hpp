#pragma once
#include <string>
#include <vector>

#include "rgl/primitives.hpp"
#include "rgl/rng.hpp"
#include "rgl/tensor.hpp"

namespace rgl {

enum class MixingMode { DirichletWithClean, BetaBlend };

// Pipeline configuration: n branches, each a chain of m draws from the
// primitive pool (identity always included, which realizes stochastic
// depth), mixed either by a Dirichlet over {clean + branches} or by a
// Dirichlet over the branches followed by a Beta blend with the clean image.
struct PrimeConfig {
  std::size_t width_n = 3;
  std::size_t depth_m = 3;
  std::vector<PrimitiveParams> pool;  // validate() appends identity if missing
  MixingMode mixing = MixingMode::DirichletWithClean;
  double beta_alpha = 5.0;
  double beta_beta = 1.0;
  double strength_scale = 1.0;
  bool additive_enabled = false;

  void validate();  // normalizes (identity membership, color delta) and checks
};

// 32x32-scale defaults and the 224-scale variant.
PrimeConfig default_config_small();
PrimeConfig default_config_large();
// Gentle regime used for low-texture data: weak spectral/color strengths,
// very smooth warps, Beta(5,1) blending.
PrimeConfig filling_level_preset();
PrimeConfig preset_by_name(const std::string& name);  // "small" | "large" | "filling-level"

// Multiplies every primitive's strength range by `factor`; the scaled
// spatial range must stay inside the bijectivity envelope.
PrimeConfig scale_strengths(const PrimeConfig& cfg, double factor);

// One primitive application at an explicit strength.
ImageTensor apply_primitive(const ImageTensor& x, const PrimitiveParams& p, double sigma,
                            RngStream& rng, bool additive_enabled);

// Dirichlet mix of the clean image with n transformed branches. Strengths
// are re-drawn from U(sigma_min, sigma_max) at every primitive application.
ImageTensor prime_augment(const ImageTensor& x, const PrimeConfig& cfg, RngStream& rng);

// Variant: Dirichlet over the n transformed branches only, then
// out = (1-p) * clean + p * mixed with p ~ Beta(alpha, beta).
ImageTensor prime_beta_augment(const ImageTensor& x, const PrimeConfig& cfg, RngStream& rng);

// The deterministic blend used by the beta variant; exposed so the p=0 and
// p=1 endpoints can be exercised exactly.
ImageTensor beta_blend(const ImageTensor& clean, const ImageTensor& mixed, double p);

// Original plus k augmented copies per input, in input order. Copy (i, c)
// uses a stream derived from (seed, i, c), so outputs do not depend on
// execution order or thread count.
std::vector<ImageTensor> augment_dataset_offline(const std::vector<ImageTensor>& inputs,
                                                 std::size_t k, const PrimeConfig& cfg,
                                                 std::uint64_t seed);

}  // namespace rgl
