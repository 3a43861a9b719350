#include <doctest.h>

#include <cmath>
#include <vector>

#include "rgl/error.hpp"
#include "rgl/model.hpp"
#include "rgl/rng.hpp"
#include "rgl/synthetic.hpp"
#include "rgl/train.hpp"

using namespace rgl;

TEST_CASE("a linear scorer separates the two-cluster dataset perfectly") {
  RngStream data_rng = rng_stream(50, 0);
  const SyntheticDataset ds = gen_t1(3.0, 0.5, 500, 10, data_rng);

  TrainSpec spec;
  spec.hidden = {};
  spec.epochs = 100;
  spec.lr_max = 0.1;
  spec.batch = 64;

  TrainReport report;
  RngStream train_rng = rng_stream(51, 0);
  const ClassifierModel m = train(spec, ds, train_rng, &report);
  CHECK(report.train_accuracy == doctest::Approx(1.0));
  CHECK(accuracy(m, ds.X, ds.y) == doctest::Approx(1.0));
  REQUIRE(report.epoch_loss.size() == 100);
  CHECK(report.epoch_loss.back() < report.epoch_loss.front());

  // The learned direction aligns with the discriminative axis.
  const Eigen::VectorXd w = m.weights[0].row(0).transpose().normalized();
  CHECK(std::abs(w.dot(ds.U.m.col(0))) > 0.9);
}

TEST_CASE("a small network reaches near-perfect accuracy on separable data") {
  RngStream data_rng = rng_stream(52, 0);
  const SyntheticDataset ds = gen_t1(4.0, 1.0, 400, 8, data_rng);
  TrainSpec spec;
  spec.hidden = {16};
  spec.epochs = 150;
  spec.batch = 64;
  RngStream train_rng = rng_stream(53, 0);
  TrainReport report;
  (void)train(spec, ds, train_rng, &report);
  CHECK(report.train_accuracy >= 0.99);
}

TEST_CASE("multiclass training fits three well-separated blobs") {
  RngStream rng = rng_stream(54, 0);
  const std::size_t per = 100;
  Eigen::MatrixXd X(3 * per, 2);
  std::vector<int> y(3 * per);
  const double cx[3] = {2.0, -1.0, -1.0};
  const double cy[3] = {0.0, 1.7, -1.7};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < per; ++i) {
      const std::size_t row = k * per + i;
      X(static_cast<Eigen::Index>(row), 0) = cx[k] + 0.3 * rng.gaussian();
      X(static_cast<Eigen::Index>(row), 1) = cy[k] + 0.3 * rng.gaussian();
      y[row] = static_cast<int>(k);
    }

  TrainSpec spec;
  spec.hidden = {16};
  spec.out_dim = 3;
  spec.epochs = 200;
  spec.batch = 32;
  RngStream train_rng = rng_stream(55, 0);
  const ClassifierModel m = train(spec, X, y, train_rng, nullptr);
  CHECK(accuracy(m, X, y) >= 0.95);
}

TEST_CASE("training is bit-deterministic in the stream") {
  RngStream data_rng = rng_stream(56, 0);
  const SyntheticDataset ds = gen_t1(2.0, 1.0, 120, 6, data_rng);
  TrainSpec spec;
  spec.hidden = {8};
  spec.epochs = 20;

  RngStream a = rng_stream(57, 0);
  RngStream b = rng_stream(57, 0);
  const ClassifierModel ma = train(spec, ds, a, nullptr);
  const ClassifierModel mb = train(spec, ds, b, nullptr);
  REQUIRE(ma.weights.size() == mb.weights.size());
  for (std::size_t l = 0; l < ma.weights.size(); ++l) {
    CHECK((ma.weights[l] - mb.weights[l]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ma.biases[l] - mb.biases[l]).cwiseAbs().maxCoeff() == 0.0);
  }

  RngStream c = rng_stream(58, 0);
  const ClassifierModel mc = train(spec, ds, c, nullptr);
  CHECK((ma.weights[0] - mc.weights[0]).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("full-batch descent on the convex objective never increases the loss") {
  RngStream data_rng = rng_stream(59, 0);
  const SyntheticDataset ds = gen_t1(2.0, 0.5, 200, 5, data_rng);
  TrainSpec spec;
  spec.hidden = {};
  spec.epochs = 40;
  spec.lr_max = 0.01;
  spec.batch = 200;  // full batch: plain gradient descent
  TrainReport report;
  RngStream rng = rng_stream(60, 0);
  (void)train(spec, ds, rng, &report);
  REQUIRE(report.epoch_loss.size() == 40);
  for (std::size_t e = 1; e < report.epoch_loss.size(); ++e)
    CHECK(report.epoch_loss[e] <= report.epoch_loss[e - 1] + 1e-9);
}

TEST_CASE("numerical blow-up aborts with the epoch in the message") {
  Eigen::MatrixXd X(4, 3);
  X << 1e200, 1e200, 1e200,
       -1e200, -1e200, -1e200,
       1e200, -1e200, 1e200,
       -1e200, 1e200, -1e200;
  const std::vector<int> y = {1, -1, 1, -1};
  TrainSpec spec;
  spec.hidden = {};
  spec.epochs = 5;
  spec.lr_max = 1e10;
  spec.batch = 4;
  RngStream rng = rng_stream(61, 0);
  CHECK_THROWS_WITH_AS((void)train(spec, X, y, rng, nullptr), doctest::Contains("diverged"),
                       NumericalError);
}

TEST_CASE("label and hyperparameter domains are validated up front") {
  Eigen::MatrixXd X(2, 2);
  X << 1.0, 0.0, 0.0, 1.0;
  RngStream rng = rng_stream(62, 0);
  TrainSpec spec;
  CHECK_THROWS_AS((void)train(spec, X, {1, 0}, rng, nullptr), ParameterError);  // binary 0 label
  spec.out_dim = 3;
  CHECK_THROWS_AS((void)train(spec, X, {0, 3}, rng, nullptr), ParameterError);  // index 3 of 3
  spec.out_dim = 1;
  spec.batch = 0;
  CHECK_THROWS_AS((void)train(spec, X, {1, -1}, rng, nullptr), ParameterError);
  spec.batch = 2;
  spec.epochs = 0;
  CHECK_THROWS_AS((void)train(spec, X, {1, -1}, rng, nullptr), ParameterError);
  spec.epochs = 1;
  spec.lr_max = 0.0;
  CHECK_THROWS_AS((void)train(spec, X, {1, -1}, rng, nullptr), ParameterError);
  spec.lr_max = 0.1;
  CHECK_THROWS_AS((void)train(spec, X, {1}, rng, nullptr), ParameterError);  // count mismatch
  CHECK_THROWS_AS((void)train(spec, Eigen::MatrixXd(0, 2), {}, rng, nullptr), ParameterError);
}

TEST_CASE("gradient verification passes for exact gradients at matching precision") {
  RngStream mrng = rng_stream(63, 0);
  Eigen::VectorXd w(6);
  for (int j = 0; j < 6; ++j) w(j) = mrng.uniform(-1.0, 1.0);
  const ClassifierModel affine = make_affine(w, 0.3);

  RngStream rng = rng_stream(64, 0);
  const GradCheckReport rep = grad_check(affine, 30, 1e-8, rng);
  CHECK(rep.passed);
  CHECK(rep.points_evaluated == 30);
  CHECK(rep.points_skipped == 0);  // no rectifiers, no kinks
  CHECK(rep.max_rel_error < 1e-8);

  RngStream mlp_rng = rng_stream(65, 0);
  const ClassifierModel mlp = make_mlp(10, {20, 20}, 4, mlp_rng, 1.0);
  RngStream rng2 = rng_stream(66, 0);
  const GradCheckReport mlp_rep = grad_check(mlp, 50, 1e-4, rng2);
  CHECK(mlp_rep.passed);
  CHECK(mlp_rep.points_evaluated == 50);
}

TEST_CASE("gradient verification exposes a corrupted gradient") {
  RngStream mlp_rng = rng_stream(67, 0);
  const ClassifierModel mlp = make_mlp(6, {12}, 3, mlp_rng, 1.0);

  const GradientFn corrupted = [](const ClassifierModel& m, const Eigen::VectorXd& x, int k) {
    Eigen::VectorXd g = class_gradient(m, x, k);
    g(0) += 0.01;  // systematic bias on one coordinate
    return g;
  };
  RngStream rng = rng_stream(68, 0);
  const GradCheckReport rep = grad_check(mlp, 20, 1e-4, rng, corrupted);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_rel_error > 1e-4);

  RngStream rng2 = rng_stream(68, 0);
  const GradCheckReport clean = grad_check(mlp, 20, 1e-4, rng2, GradientFn(&class_gradient));
  CHECK(clean.passed);

  CHECK_THROWS_AS((void)grad_check(mlp, 10, 0.0, rng), ParameterError);
}
