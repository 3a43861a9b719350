#pragma once

#include <string>

#include "rgl/prime.hpp"

namespace rgl {

// Parses an INI-style augmentation pipeline description:
//
//   [pipeline]
//   width = 3            # parallel branches
//   depth = 3            # draws per branch
//   mixing = dirichlet   # or: beta
//   beta_alpha = 5.0
//   beta_beta = 1.0
//   strength_scale = 1.0
//
//   [spectral] / [spatial] / [color] / [additive]
//   enabled = true
//   smoothness = 3       # kernel size / displacement modes / color modes
//   sigma_min = 0.0
//   sigma_max = 4.0
//   band = 10            # color only: active consecutive modes
//
// '#' starts a comment. Unknown sections or keys raise ConfigError naming
// the offending line. Sections omitted entirely fall back to the small
// preset's primitive for that slot; `enabled = false` removes it.
PrimeConfig parse_prime_config(const std::string& text);
PrimeConfig load_prime_config(const std::string& path);

// Canonical JSON rendering of a fully-resolved configuration, embedded in
// run manifests so an output directory is self-describing.
std::string prime_config_json(const PrimeConfig& cfg);

}  // namespace rgl
