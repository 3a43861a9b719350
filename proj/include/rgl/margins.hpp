#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rgl/attacks.hpp"

namespace rgl {

struct MarginRecord {
  std::size_t sample = 0;
  std::size_t subspace = 0;
  double margin = 0.0;  // NaN when the search failed
  std::size_t iterations = 0;
  bool success = false;
};

struct MarginSummary {
  std::size_t subspace = 0;
  std::size_t dim = 0;
  std::size_t start_index = 0;
  bool available = false;  // at least one successful sample
  double p05 = 0.0, median = 0.0, p95 = 0.0;  // NaN when unavailable
  std::size_t n_success = 0, n_fail = 0;
};

struct MarginProfile {
  std::vector<MarginRecord> records;      // sample-major order
  std::vector<MarginSummary> summaries;   // one per subspace
};

// Smallest decision-flipping step inside each subspace, per sample: the
// boundary-distance estimate from the subspace-constrained linearized walk,
// measured from the model's own decision at the sample (label-free).
// Degenerate directions and non-converged searches count as failures.
// Samples are processed concurrently; output order is canonical.
MarginProfile margin_profile(const ClassifierModel& model, const Eigen::MatrixXd& samples,
                             const std::vector<SubspaceSpec>& subspaces,
                             const DeepFoolParams& params = {});

// Percentile with linear interpolation between order statistics
// (rank = q·(n−1)); exposed for reuse in reports.
double percentile(std::vector<double> values, double q);

}  // namespace rgl
