#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rgl/model.hpp"
#include "rgl/rng.hpp"
#include "rgl/synthetic.hpp"

namespace rgl {

struct TrainSpec {
  std::vector<std::size_t> hidden;  // empty → affine model
  std::size_t out_dim = 1;          // 1: signed score; >= 2: logits
  std::size_t epochs = 500;
  double lr_max = 0.1;
  std::size_t batch = 128;
  double init_multiplier = 1.0;
};

struct TrainReport {
  double train_accuracy = 0.0;
  std::vector<double> epoch_loss;  // mean per-sample loss, one entry per epoch
};

// Plain SGD over shuffled mini-batches with a linearly decaying step size
// (lr_max at epoch 0 down to lr_max/E at the last epoch). Binary targets
// (out_dim 1) are ±1 under the logistic loss; multiclass targets are class
// indices under cross-entropy. Deterministic given the stream; a non-finite
// loss aborts with a numerical error naming the epoch.
ClassifierModel train(const TrainSpec& spec, const Eigen::MatrixXd& X, const std::vector<int>& y,
                      RngStream& rng, TrainReport* report = nullptr);
ClassifierModel train(const TrainSpec& spec, const SyntheticDataset& data, RngStream& rng,
                      TrainReport* report = nullptr);

double accuracy(const ClassifierModel& model, const Eigen::MatrixXd& X,
                const std::vector<int>& y);

struct GradCheckReport {
  bool passed = false;
  double max_rel_error = 0.0;
  std::size_t points_evaluated = 0;
  std::size_t points_skipped = 0;  // discarded for sitting near a rectifier kink
};

using GradientFn =
    std::function<Eigen::VectorXd(const ClassifierModel&, const Eigen::VectorXd&, int)>;

// Central-difference verification of the analytic gradient at random
// Gaussian points. Points with any pre-activation within 1e-6 of zero are
// skipped (the two sides of the kink disagree there by construction), and so
// are points whose difference stencil flips any rectifier on or off: the
// network is piecewise linear, so the comparison is only meaningful when the
// whole stencil shares one activation pattern. The gradient function is
// injectable so a corrupted gradient can be shown to fail.
GradCheckReport grad_check(const ClassifierModel& model, std::size_t points, double tolerance,
                           RngStream& rng, const GradientFn& gradient = {});

}  // namespace rgl
