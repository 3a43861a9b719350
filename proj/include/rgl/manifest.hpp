#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rgl {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Every CLI command drops one of these next to its outputs so a result
// directory is reproducible from the manifest alone.
struct RunManifest {
  std::string command;
  nlohmann::json params;  // fully-resolved parameter set
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double duration_s = 0.0;
};

// Atomic write (temp file + rename).
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace rgl
