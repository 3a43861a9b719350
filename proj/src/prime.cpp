#include "rgl/prime.hpp"

#include <algorithm>
#include <cmath>

#include "rgl/threads.hpp"

namespace rgl {

namespace {

bool has_identity(const std::vector<PrimitiveParams>& pool) {
  return std::any_of(pool.begin(), pool.end(), [](const PrimitiveParams& p) {
    return p.kind == PrimitiveParams::Kind::Identity;
  });
}

void check_unit_input(const ImageTensor& x, const char* who) {
  if (!in_unit_range(x))
    throw ParameterError(std::string(who) + ": input values must lie in [0,1]");
}

// One branch: m sequential pool draws, strength re-drawn per application.
ImageTensor run_branch(const ImageTensor& x, const PrimeConfig& cfg, RngStream& rng) {
  ImageTensor cur = x;
  for (std::size_t j = 0; j < cfg.depth_m; ++j) {
    const PrimitiveParams& p = cfg.pool[rng.uniform_index(cfg.pool.size())];
    const double sigma = rng.uniform(p.sigma_min, p.sigma_max);
    cur = apply_primitive(cur, p, sigma, rng, cfg.additive_enabled);
  }
  return cur;
}

// Convex combination in f64; unit-range inputs stay unit-range after the
// round to f32, and identical branches reproduce bit-exactly.
ImageTensor mix(const std::vector<const ImageTensor*>& branches, const std::vector<double>& w) {
  const ImageTensor& first = *branches.front();
  ImageTensor out(first.C, first.H, first.W, ValueRange::Unit);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    double acc = 0.0;
    for (std::size_t b = 0; b < branches.size(); ++b)
      acc += w[b] * static_cast<double>(branches[b]->data[i]);
    out.data[i] = static_cast<float>(acc);
  }
  return out;
}

}  // namespace

void PrimeConfig::validate() {
  if (width_n < 1) throw ConfigError("pipeline: width must be >= 1");
  if (depth_m < 1) throw ConfigError("pipeline: depth must be >= 1");
  if (!(strength_scale > 0.0)) throw ConfigError("pipeline: strength scale must be > 0");
  if (mixing == MixingMode::BetaBlend && (!(beta_alpha > 0.0) || !(beta_beta > 0.0)))
    throw ConfigError("pipeline: beta shapes must be > 0");
  for (auto& p : pool) {
    if (p.kind == PrimitiveParams::Kind::Color && p.delta == 0) p.delta = p.K;
    if (p.kind == PrimitiveParams::Kind::Additive && !additive_enabled)
      throw ConfigError("additive: primitive present in pool but not enabled");
    p.validate();
  }
  if (!has_identity(pool)) {
    PrimitiveParams id;
    id.kind = PrimitiveParams::Kind::Identity;
    pool.push_back(id);  // identity membership realizes stochastic depth
  }
}

PrimeConfig default_config_small() {
  PrimeConfig cfg;
  PrimitiveParams spectral{PrimitiveParams::Kind::Spectral, 3, 0.0, 4.0, 0};
  PrimitiveParams spatial{PrimitiveParams::Kind::Spatial, 100, 0.0, spatial_sigma_max(100), 0};
  PrimitiveParams color{PrimitiveParams::Kind::Color, 10, 0.0, 0.01, 10};
  cfg.pool = {spectral, spatial, color};
  cfg.validate();
  return cfg;
}

PrimeConfig default_config_large() {
  PrimeConfig cfg;
  PrimitiveParams spectral{PrimitiveParams::Kind::Spectral, 3, 0.0, 4.0, 0};
  PrimitiveParams spatial{PrimitiveParams::Kind::Spatial, 500, 0.0, spatial_sigma_max(500), 0};
  PrimitiveParams color{PrimitiveParams::Kind::Color, 500, 0.0, 0.05, 20};
  cfg.pool = {spectral, spatial, color};
  cfg.validate();
  return cfg;
}

PrimeConfig filling_level_preset() {
  PrimeConfig cfg;
  // Variances 0.01 (spectral) and 0.001 (color) expressed as strengths.
  PrimitiveParams spectral{PrimitiveParams::Kind::Spectral, 3, 0.0, std::sqrt(0.01), 0};
  PrimitiveParams spatial{PrimitiveParams::Kind::Spatial, 10, 0.0, spatial_sigma_max(10), 0};
  PrimitiveParams color{PrimitiveParams::Kind::Color, 10, 0.0, std::sqrt(0.001), 10};
  cfg.pool = {spectral, spatial, color};
  cfg.mixing = MixingMode::BetaBlend;
  cfg.beta_alpha = 5.0;
  cfg.beta_beta = 1.0;
  cfg.validate();
  return cfg;
}

PrimeConfig preset_by_name(const std::string& name) {
  if (name == "small") return default_config_small();
  if (name == "large") return default_config_large();
  if (name == "filling-level") return filling_level_preset();
  throw ConfigError("unknown preset '" + name + "' (small, large, filling-level)");
}

PrimeConfig scale_strengths(const PrimeConfig& cfg, double factor) {
  if (!(factor > 0.0)) throw ParameterError("scale_strengths: factor must be > 0");
  PrimeConfig out = cfg;
  for (auto& p : out.pool) {
    p.sigma_max *= factor;
    if (p.sigma_min > 0.0) p.sigma_min *= factor;
    if (p.kind == PrimitiveParams::Kind::Spatial &&
        p.sigma_max > spatial_sigma_max(p.K) * (1.0 + 1e-12)) {
      BijectivityReport rep = validate_bijectivity(p.K, p.sigma_max, 12, 25);
      if (!rep.ok)
        throw ParameterError("spatial: scaled strength " + std::to_string(p.sigma_max) +
                             " fails bijectivity validation (max jacobian norm " +
                             std::to_string(rep.max_jacobian_norm) + ")");
    }
  }
  out.strength_scale = cfg.strength_scale * factor;
  return out;
}

ImageTensor apply_primitive(const ImageTensor& x, const PrimitiveParams& p, double sigma,
                            RngStream& rng, bool additive_enabled) {
  switch (p.kind) {
    case PrimitiveParams::Kind::Identity: return x;
    case PrimitiveParams::Kind::Spectral: return spectral_transform(x, p.K, sigma, rng);
    case PrimitiveParams::Kind::Spatial: return spatial_transform(x, p.K, sigma, rng);
    case PrimitiveParams::Kind::Color:
      return color_transform(x, p.K, sigma, p.delta == 0 ? p.K : p.delta, rng);
    case PrimitiveParams::Kind::Additive: return additive_noise(x, sigma, rng, additive_enabled);
  }
  throw ParameterError("apply_primitive: unknown primitive kind");
}

ImageTensor prime_augment(const ImageTensor& x, const PrimeConfig& cfg, RngStream& rng) {
  check_unit_input(x, "prime_augment");
  std::vector<ImageTensor> branches;
  branches.reserve(cfg.width_n);
  for (std::size_t i = 0; i < cfg.width_n; ++i) branches.push_back(run_branch(x, cfg, rng));

  std::vector<double> w = sample_dirichlet(rng, cfg.width_n + 1, 1.0);
  std::vector<const ImageTensor*> ptrs;
  ptrs.push_back(&x);  // clean branch participates in the mix
  for (const auto& b : branches) ptrs.push_back(&b);
  return mix(ptrs, w);
}

ImageTensor prime_beta_augment(const ImageTensor& x, const PrimeConfig& cfg, RngStream& rng) {
  check_unit_input(x, "prime_beta_augment");
  std::vector<ImageTensor> branches;
  branches.reserve(cfg.width_n);
  for (std::size_t i = 0; i < cfg.width_n; ++i) branches.push_back(run_branch(x, cfg, rng));

  std::vector<double> w = sample_dirichlet(rng, cfg.width_n, 1.0);  // clean excluded
  std::vector<const ImageTensor*> ptrs;
  for (const auto& b : branches) ptrs.push_back(&b);
  ImageTensor mixed = mix(ptrs, w);

  const double p = sample_beta(rng, cfg.beta_alpha, cfg.beta_beta);
  return beta_blend(x, mixed, p);
}

ImageTensor beta_blend(const ImageTensor& clean, const ImageTensor& mixed, double p) {
  if (!clean.same_shape(mixed)) throw ParameterError("beta_blend: shape mismatch");
  if (p < 0.0 || p > 1.0) throw ParameterError("beta_blend: p must be in [0,1]");
  if (p == 0.0) return clean;  // exact endpoints
  if (p == 1.0) return mixed;
  ImageTensor out(clean.C, clean.H, clean.W, ValueRange::Unit);
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = static_cast<float>((1.0 - p) * static_cast<double>(clean.data[i]) +
                                     p * static_cast<double>(mixed.data[i]));
  return out;
}

std::vector<ImageTensor> augment_dataset_offline(const std::vector<ImageTensor>& inputs,
                                                 std::size_t k, const PrimeConfig& cfg,
                                                 std::uint64_t seed) {
  if (k < 1) throw ParameterError("augment_dataset_offline: k must be >= 1");
  std::vector<ImageTensor> out((k + 1) * inputs.size());
  const RngStream base = rng_stream(seed, 0);
  parallel_for(inputs.size(), [&](std::size_t i) {
    out[(k + 1) * i] = inputs[i];
    RngStream per_image = split(base, i);
    for (std::size_t c = 1; c <= k; ++c) {
      RngStream s = split(per_image, c);
      out[(k + 1) * i + c] = cfg.mixing == MixingMode::BetaBlend
                                 ? prime_beta_augment(inputs[i], cfg, s)
                                 : prime_augment(inputs[i], cfg, s);
    }
  });
  return out;
}

}  // namespace rgl
