#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rgl/error.hpp"
#include "rgl/rng.hpp"

namespace rgl {

// Fully-connected classifier with rectifier activations between layers and
// none after the last. A single layer with output width 1 is an affine
// binary scorer: decision is the sign of the score, classes are ±1. With
// output width K >= 2 the decision is the argmax logit index.
struct ClassifierModel {
  std::vector<Eigen::MatrixXd> weights;  // layer l: out_l × in_l
  std::vector<Eigen::VectorXd> biases;   // layer l: out_l

  std::size_t input_dim() const {
    return weights.empty() ? 0 : static_cast<std::size_t>(weights.front().cols());
  }
  std::size_t output_dim() const {
    return weights.empty() ? 0 : static_cast<std::size_t>(weights.back().rows());
  }
  bool binary() const { return output_dim() == 1; }
};

ClassifierModel make_affine(const Eigen::VectorXd& w, double b);

// Hidden widths may be empty (plain affine map). Weights are drawn from
// U(−c/√fan_in, c/√fan_in) in row-major order layer by layer; biases start
// at zero. The multiplier c is pinned by the caller so runs reproduce.
ClassifierModel make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                         std::size_t out_dim, RngStream& rng, double init_multiplier = 1.0);

Eigen::VectorXd logits(const ClassifierModel& model, const Eigen::VectorXd& x);

// Binary: +1 if score > 0 else −1 (score 0 ties to the lower class, −1).
// Multiclass: argmax logit, ties to the lowest index.
int decision(const ClassifierModel& model, const Eigen::VectorXd& x);

// Analytic gradient of class k's score at x by reverse accumulation; at a
// rectifier kink the inactive-side slope 0 is used. Binary models accept
// k ∈ {+1, −1} and return ±∇score; multiclass models take a logit index.
Eigen::VectorXd class_gradient(const ClassifierModel& model, const Eigen::VectorXd& x, int k);

// Checkpoint: model.json naming shapes plus one tensor file per layer.
void save_model(const ClassifierModel& model, const std::string& dir);
ClassifierModel load_model(const std::string& dir);

}  // namespace rgl
