#include "rgl/margins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rgl/threads.hpp"

namespace rgl {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw ParameterError("percentile: empty sample");
  if (q < 0.0 || q > 1.0) throw ParameterError("percentile: q must be in [0,1]");
  std::sort(values.begin(), values.end());
  const double rank = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

MarginProfile margin_profile(const ClassifierModel& model, const Eigen::MatrixXd& samples,
                             const std::vector<SubspaceSpec>& subspaces,
                             const DeepFoolParams& params) {
  const std::size_t n = static_cast<std::size_t>(samples.rows());
  const std::size_t k = subspaces.size();
  if (n == 0) throw ParameterError("margin_profile: no samples");
  if (k == 0) throw ParameterError("margin_profile: no subspaces");
  for (const auto& s : subspaces)
    if (s.ambient_dim() != static_cast<std::size_t>(samples.cols()))
      throw ParameterError("margin_profile: subspace ambient dimension mismatch");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  MarginProfile out;
  out.records.resize(n * k);

  parallel_for(n, [&](std::size_t i) {
    const Eigen::VectorXd x = samples.row(static_cast<Eigen::Index>(i)).transpose();
    for (std::size_t j = 0; j < k; ++j) {
      MarginRecord rec;
      rec.sample = i;
      rec.subspace = j;
      try {
        const AttackResult r = deepfool_subspace(model, x, subspaces[j], params);
        rec.success = r.success;
        rec.iterations = r.iterations;
        rec.margin = r.success ? r.l2_boundary : nan;
      } catch (const NumericalError&) {
        rec.success = false;  // unreachable boundary inside this subspace
        rec.margin = nan;
      }
      out.records[i * k + j] = rec;
    }
  });

  out.summaries.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    MarginSummary& s = out.summaries[j];
    s.subspace = j;
    s.dim = subspaces[j].dim();
    s.start_index = subspaces[j].start_index;
    std::vector<double> margins;
    for (std::size_t i = 0; i < n; ++i) {
      const MarginRecord& rec = out.records[i * k + j];
      if (rec.success) margins.push_back(rec.margin);
      else ++s.n_fail;
    }
    s.n_success = margins.size();
    s.available = !margins.empty();
    if (s.available) {
      s.p05 = percentile(margins, 0.05);
      s.median = percentile(margins, 0.50);
      s.p95 = percentile(margins, 0.95);
    } else {
      s.p05 = s.median = s.p95 = nan;
    }
  }
  return out;
}

}  // namespace rgl
