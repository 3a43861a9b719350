#pragma once

#include <optional>

#include <Eigen/Dense>

#include "rgl/model.hpp"
#include "rgl/subspace.hpp"

namespace rgl {

struct AttackResult {
  Eigen::VectorXd delta;
  bool success = false;
  std::size_t iterations = 0;
  double l2 = 0.0;            // ‖delta‖₂ as returned
  double l2_boundary = 0.0;   // boundary-distance estimate before over-shoot scaling
  std::size_t l0 = 0;         // entries with |δᵢ| > 1e-9
  int adversarial_class = 0;  // decision at x + delta
};

struct BoxBounds {
  Eigen::VectorXd lower, upper;
};

BoxBounds unbounded_box(std::size_t dim);
BoxBounds unit_box(std::size_t dim);

// Per-pixel window: l = max(range_min, x−α), u = min(range_max, x+α).
BoxBounds perceptibility_bounds(const Eigen::VectorXd& x, double alpha, double range_min,
                                double range_max);

struct DeepFoolParams {
  std::size_t max_iter = 50;
  double overshoot = 0.02;
};

// Iterative linearized-boundary walk. Each step solves the linearization of
// the closest class boundary exactly (binary: Newton step on the signed
// score) and the candidate point is re-tested at x₀ + (1+overshoot)·Σ steps.
// If source_class is given and x is already classified differently, returns
// a zero perturbation with zero iterations.
AttackResult deepfool(const ClassifierModel& model, const Eigen::VectorXd& x,
                      const DeepFoolParams& params = {},
                      std::optional<int> source_class = std::nullopt);

// Same walk with every boundary normal replaced by its projection onto S;
// the output stays inside S and no pixel-range clipping is applied. A
// projected normal with norm < 1e-12 aborts with a numerical error (the
// boundary is unreachable inside S).
AttackResult deepfool_subspace(const ClassifierModel& model, const Eigen::VectorXd& x,
                               const SubspaceSpec& S, const DeepFoolParams& params = {});

struct LinearSolverResult {
  Eigen::VectorXd point;       // final iterate, always within bounds
  bool reached = false;        // hyperplane hit within tolerance
  std::size_t coordinates = 0; // support used (size of the forbidden set)
};

// Greedy sparse projection of x onto the hyperplane wᵀ(z − x_B) = 0 under
// box bounds: repeatedly move the largest-|w| free coordinate by exactly
// the step that zeroes the residual, clamp to the box, and freeze that
// coordinate. Stops when |wᵀ(z − x_B)| ≤ tol (tol ≤ 0 selects the scaled
// default 1e-9·‖w‖·max(1, ‖x − x_B‖)) or every coordinate is frozen, which
// flags the instance as unreachable. Coordinates with |w_d| < 1e-12 are
// frozen immediately.
LinearSolverResult linear_solver(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                                 const Eigen::VectorXd& x_B, const BoxBounds& bounds,
                                 double tol = -1.0);

struct SparseFoolParams {
  double lambda = 3.0;  // boundary-point over-shoot factor, ≥ 1
  std::size_t max_outer = 50;
  DeepFoolParams inner;
};

// Sparse decision-flipping perturbation: each outer iteration estimates the
// boundary with DeepFool, over-shoots it to x_B = x + λ·δ_DF, takes the
// local normal w = ∇f_adv(x_B) − ∇f_orig(x_B), and projects greedily onto
// that hyperplane one coordinate at a time within the box. Every iterate
// respects the bounds exactly.
AttackResult sparsefool(const ClassifierModel& model, const Eigen::VectorXd& x,
                        const BoxBounds& bounds, const SparseFoolParams& params = {},
                        std::optional<int> source_class = std::nullopt);

}  // namespace rgl
