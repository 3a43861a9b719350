#pragma once
#include <stdexcept>
#include <string>

namespace rgl {

// Error taxonomy; the CLI maps these onto exit codes:
//   ParameterError/ConfigError -> 2, NumericalError -> 3, FormatError/IoError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParameterError : Error { using Error::Error; };  // bad arguments / preconditions
struct ConfigError    : Error { using Error::Error; };  // bad configuration file or state
struct FormatError    : Error { using Error::Error; };  // malformed file contents
struct IoError        : Error { using Error::Error; };  // filesystem / OS failures
struct NumericalError : Error { using Error::Error; };  // divergence, degenerate geometry

}  // namespace rgl
