#include "rgl/manifest.hpp"

#include <filesystem>
#include <fstream>

#include "rgl/error.hpp"

namespace rgl {

void write_manifest(const RunManifest& m, const std::string& path) {
  nlohmann::json j;
  j["command"] = m.command;
  j["params"] = m.params;
  j["seed"] = m.seed;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["version"] = kToolkitVersion;
  j["duration_s"] = m.duration_s;

  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + tmp + "'");
    f << j.dump(2) << "\n";
    f.flush();
    if (!f) throw IoError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move manifest into place: " + ec.message());
}

}  // namespace rgl
