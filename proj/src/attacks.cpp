#include "rgl/attacks.hpp"

#include <cmath>
#include <limits>

namespace rgl {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr double kSupportEps = 1e-9;

void check_box(const BoxBounds& b, const Eigen::VectorXd& x, const char* who) {
  if (b.lower.size() != x.size() || b.upper.size() != x.size())
    throw ParameterError(std::string(who) + ": bounds dimension mismatch");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (b.lower(i) > b.upper(i))
      throw ParameterError(std::string(who) + ": lower bound exceeds upper bound");
    if (x(i) < b.lower(i) - 1e-12 || x(i) > b.upper(i) + 1e-12)
      throw ParameterError(std::string(who) + ": start point lies outside the bounds");
  }
}

void finalize(AttackResult& res, const ClassifierModel& model, const Eigen::VectorXd& x,
              int orig) {
  res.l2 = res.delta.norm();
  res.l0 = 0;
  for (Eigen::Index i = 0; i < res.delta.size(); ++i)
    if (std::abs(res.delta(i)) > kSupportEps) ++res.l0;
  res.adversarial_class = decision(model, x + res.delta);
  res.success = res.adversarial_class != orig;  // re-verified post hoc
}

// One linearized-boundary step at x_adv, relative to the source class.
// Returns false when no boundary is reachable (all candidate normals
// vanish after projection).
bool boundary_step(const ClassifierModel& model, const Eigen::VectorXd& x_adv, int orig,
                   const SubspaceSpec* S, Eigen::VectorXd& step) {
  if (model.binary()) {
    const double s = logits(model, x_adv)(0);
    Eigen::VectorXd g = class_gradient(model, x_adv, 1);
    if (S) g = subspace_project(g, *S);
    const double n2 = g.squaredNorm();
    if (std::sqrt(n2) < kDegenerateNorm) return false;
    step = -(s / n2) * g;
    return true;
  }

  const Eigen::VectorXd f = logits(model, x_adv);
  const Eigen::VectorXd g_orig = class_gradient(model, x_adv, orig);
  double best_ratio = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_w;
  double best_gap = 0.0;
  for (int k = 0; k < static_cast<int>(model.output_dim()); ++k) {
    if (k == orig) continue;
    Eigen::VectorXd w = class_gradient(model, x_adv, k) - g_orig;
    if (S) w = subspace_project(w, *S);
    const double n = w.norm();
    if (n < kDegenerateNorm) continue;
    const double gap = f(orig) - f(k);  // > 0 while still classified as orig
    const double ratio = std::abs(gap) / n;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best_w = std::move(w);
      best_gap = gap;
    }
  }
  if (!std::isfinite(best_ratio)) return false;
  step = (best_gap / best_w.squaredNorm()) * best_w;
  return true;
}

AttackResult deepfool_core(const ClassifierModel& model, const Eigen::VectorXd& x,
                           const DeepFoolParams& params, std::optional<int> source_class,
                           const SubspaceSpec* S) {
  if (static_cast<std::size_t>(x.size()) != model.input_dim())
    throw ParameterError("deepfool: input dimension does not match model");
  if (params.overshoot < 0.0) throw ParameterError("deepfool: overshoot must be >= 0");

  AttackResult res;
  res.delta = Eigen::VectorXd::Zero(x.size());
  const int orig = decision(model, x);
  if (source_class && orig != *source_class) {
    res.success = true;
    res.adversarial_class = orig;
    return res;
  }

  Eigen::VectorXd r_tot = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd x_adv = x;
  std::size_t steps = 0;
  while (steps < params.max_iter && decision(model, x_adv) == orig) {
    Eigen::VectorXd step;
    if (!boundary_step(model, x_adv, orig, S, step)) {
      if (S)
        throw NumericalError(
            "deepfool: boundary normal vanishes inside the subspace (degenerate direction)");
      break;  // flat score in every direction; no progress possible
    }
    r_tot += step;
    ++steps;
    x_adv = x + (1.0 + params.overshoot) * r_tot;
  }

  res.delta = x_adv - x;
  res.iterations = steps;
  res.l2_boundary = r_tot.norm();
  finalize(res, model, x, orig);
  return res;
}

}  // namespace

BoxBounds unbounded_box(std::size_t dim) {
  const double inf = std::numeric_limits<double>::infinity();
  return {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), -inf),
          Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), inf)};
}

BoxBounds unit_box(std::size_t dim) {
  return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim)),
          Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dim))};
}

BoxBounds perceptibility_bounds(const Eigen::VectorXd& x, double alpha, double range_min,
                                double range_max) {
  if (alpha < 0.0) throw ParameterError("perceptibility_bounds: alpha must be >= 0");
  if (range_min > range_max)
    throw ParameterError("perceptibility_bounds: empty value range");
  BoxBounds b{x.array() - alpha, x.array() + alpha};
  b.lower = b.lower.cwiseMax(range_min);
  b.upper = b.upper.cwiseMin(range_max);
  return b;
}

AttackResult deepfool(const ClassifierModel& model, const Eigen::VectorXd& x,
                      const DeepFoolParams& params, std::optional<int> source_class) {
  return deepfool_core(model, x, params, source_class, nullptr);
}

AttackResult deepfool_subspace(const ClassifierModel& model, const Eigen::VectorXd& x,
                               const SubspaceSpec& S, const DeepFoolParams& params) {
  if (S.ambient_dim() != static_cast<std::size_t>(x.size()))
    throw ParameterError("deepfool_subspace: subspace ambient dimension mismatch");
  return deepfool_core(model, x, params, std::nullopt, &S);
}

LinearSolverResult linear_solver(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                                 const Eigen::VectorXd& x_B, const BoxBounds& bounds,
                                 double tol) {
  if (w.size() != x.size() || x_B.size() != x.size())
    throw ParameterError("linear_solver: dimension mismatch");
  const double wnorm = w.norm();
  if (!(wnorm > 0.0)) throw ParameterError("linear_solver: normal vector must be nonzero");
  check_box(bounds, x, "linear_solver");
  if (tol <= 0.0) tol = 1e-9 * wnorm * std::max(1.0, (x - x_B).norm());

  const Eigen::Index D = x.size();
  LinearSolverResult res;
  res.point = x;
  std::vector<bool> frozen(static_cast<std::size_t>(D), false);
  Eigen::Index free_count = D;
  for (Eigen::Index d = 0; d < D; ++d) {
    if (std::abs(w(d)) < kDegenerateNorm) {  // avoids dividing by ~0 weights
      frozen[static_cast<std::size_t>(d)] = true;
      --free_count;
    }
  }

  double rho = w.dot(res.point - x_B);
  res.reached = std::abs(rho) <= tol;
  while (!res.reached && free_count > 0) {
    Eigen::Index d = -1;
    double best = -1.0;
    for (Eigen::Index j = 0; j < D; ++j)
      if (!frozen[static_cast<std::size_t>(j)] && std::abs(w(j)) > best) {
        best = std::abs(w(j));
        d = j;  // strict > keeps the lowest index on ties
      }
    res.point(d) =
        std::clamp(res.point(d) - rho / w(d), bounds.lower(d), bounds.upper(d));
    frozen[static_cast<std::size_t>(d)] = true;
    --free_count;
    ++res.coordinates;
    rho = w.dot(res.point - x_B);
    res.reached = std::abs(rho) <= tol;
  }
  return res;
}

AttackResult sparsefool(const ClassifierModel& model, const Eigen::VectorXd& x,
                        const BoxBounds& bounds, const SparseFoolParams& params,
                        std::optional<int> source_class) {
  if (static_cast<std::size_t>(x.size()) != model.input_dim())
    throw ParameterError("sparsefool: input dimension does not match model");
  if (params.lambda < 1.0) throw ParameterError("sparsefool: lambda must be >= 1");
  check_box(bounds, x, "sparsefool");

  AttackResult res;
  res.delta = Eigen::VectorXd::Zero(x.size());
  const int orig = decision(model, x);
  if (source_class && orig != *source_class) {
    res.success = true;
    res.adversarial_class = orig;
    return res;
  }

  Eigen::VectorXd x_i = x;
  std::size_t outer = 0;
  while (outer < params.max_outer && decision(model, x_i) == orig) {
    ++outer;
    const AttackResult df = deepfool(model, x_i, params.inner);
    if (!df.success) break;  // no boundary estimate to project onto

    const Eigen::VectorXd x_B = x_i + params.lambda * df.delta;
    int k_adv = decision(model, x_B);
    if (k_adv == orig) k_adv = df.adversarial_class;  // over-shoot curved back
    if (k_adv == orig) break;

    const Eigen::VectorXd w =
        class_gradient(model, x_B, k_adv) - class_gradient(model, x_B, orig);
    if (w.norm() < kDegenerateNorm) break;

    const LinearSolverResult ls = linear_solver(x_i, w, x_B, bounds);
    x_i = ls.point;
    if (!ls.reached && decision(model, x_i) == orig) break;  // box made it unreachable
  }

  res.delta = x_i - x;
  res.iterations = outer;
  res.l2_boundary = res.delta.norm();
  finalize(res, model, x, orig);
  return res;
}

}  // namespace rgl
