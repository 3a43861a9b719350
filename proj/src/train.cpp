#include "rgl/train.hpp"

#include <cmath>

namespace rgl {

namespace {

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

struct BatchLoss {
  double mean_loss;
  Eigen::MatrixXd dscore;  // B × K, gradient of the mean loss w.r.t. scores
};

// Logistic loss on a signed score: per sample log(1 + exp(−y·s)).
BatchLoss binary_loss(const Eigen::MatrixXd& scores, const std::vector<int>& y,
                      const std::vector<std::size_t>& idx) {
  const Eigen::Index B = scores.rows();
  BatchLoss out{0.0, Eigen::MatrixXd(B, 1)};
  for (Eigen::Index b = 0; b < B; ++b) {
    const double label = static_cast<double>(y[idx[static_cast<std::size_t>(b)]]);
    const double s = scores(b, 0);
    out.mean_loss += softplus(-label * s);
    out.dscore(b, 0) = -label / (1.0 + std::exp(label * s)) / static_cast<double>(B);
  }
  out.mean_loss /= static_cast<double>(B);
  return out;
}

// Cross-entropy on logits: logsumexp(f) − f_y.
BatchLoss multiclass_loss(const Eigen::MatrixXd& scores, const std::vector<int>& y,
                          const std::vector<std::size_t>& idx) {
  const Eigen::Index B = scores.rows(), K = scores.cols();
  BatchLoss out{0.0, Eigen::MatrixXd(B, K)};
  for (Eigen::Index b = 0; b < B; ++b) {
    const int label = y[idx[static_cast<std::size_t>(b)]];
    const double m = scores.row(b).maxCoeff();
    double z = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) z += std::exp(scores(b, k) - m);
    const double lse = m + std::log(z);
    out.mean_loss += lse - scores(b, label);
    for (Eigen::Index k = 0; k < K; ++k) {
      double p = std::exp(scores(b, k) - lse);
      if (k == label) p -= 1.0;
      out.dscore(b, k) = p / static_cast<double>(B);
    }
  }
  out.mean_loss /= static_cast<double>(B);
  return out;
}

}  // namespace

ClassifierModel train(const TrainSpec& spec, const Eigen::MatrixXd& X, const std::vector<int>& y,
                      RngStream& rng, TrainReport* report) {
  const std::size_t n = static_cast<std::size_t>(X.rows());
  if (n == 0) throw ParameterError("train: empty dataset");
  if (y.size() != n) throw ParameterError("train: label count does not match sample count");
  if (spec.batch < 1) throw ParameterError("train: batch size must be >= 1");
  if (spec.epochs < 1) throw ParameterError("train: epoch budget must be >= 1");
  if (!(spec.lr_max > 0.0)) throw ParameterError("train: peak learning rate must be > 0");
  if (spec.out_dim < 1) throw ParameterError("train: output dimension must be >= 1");
  for (int label : y) {
    if (spec.out_dim == 1) {
      if (label != 1 && label != -1)
        throw ParameterError("train: binary labels must be +1 or -1");
    } else if (label < 0 || static_cast<std::size_t>(label) >= spec.out_dim) {
      throw ParameterError("train: class label out of range");
    }
  }

  ClassifierModel model = make_mlp(static_cast<std::size_t>(X.cols()), spec.hidden,
                                   spec.out_dim, rng, spec.init_multiplier);
  const std::size_t L = model.weights.size();

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  if (report) {
    report->epoch_loss.clear();
    report->epoch_loss.reserve(spec.epochs);
  }

  std::vector<Eigen::MatrixXd> acts(L + 1);  // acts[0] = inputs, acts[l] = rectified
  std::vector<Eigen::MatrixXd> pre(L);

  for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
    const double lr =
        spec.lr_max * (1.0 - static_cast<double>(epoch) / static_cast<double>(spec.epochs));

    for (std::size_t i = n; i > 1; --i) {  // Fisher–Yates from the pinned stream
      const std::size_t j = rng.uniform_index(i);
      std::swap(order[i - 1], order[j]);
    }

    double epoch_loss = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < n; start += spec.batch) {
      const std::size_t B = std::min(spec.batch, n - start);
      std::vector<std::size_t> idx(order.begin() + static_cast<std::ptrdiff_t>(start),
                                   order.begin() + static_cast<std::ptrdiff_t>(start + B));

      acts[0].resize(static_cast<Eigen::Index>(B), X.cols());
      for (std::size_t b = 0; b < B; ++b)
        acts[0].row(static_cast<Eigen::Index>(b)) = X.row(static_cast<Eigen::Index>(idx[b]));

      for (std::size_t l = 0; l < L; ++l) {
        pre[l] = acts[l] * model.weights[l].transpose();
        pre[l].rowwise() += model.biases[l].transpose();
        acts[l + 1] = l + 1 < L ? pre[l].cwiseMax(0.0) : pre[l];
      }

      BatchLoss bl = spec.out_dim == 1 ? binary_loss(acts[L], y, idx)
                                       : multiclass_loss(acts[L], y, idx);
      if (!std::isfinite(bl.mean_loss))
        throw NumericalError("training diverged at epoch " + std::to_string(epoch));
      epoch_loss += bl.mean_loss * static_cast<double>(B);
      seen += B;

      Eigen::MatrixXd g = std::move(bl.dscore);  // B × out_l, d(mean loss)/d(pre)
      for (std::size_t l = L; l-- > 0;) {
        const Eigen::MatrixXd dw = g.transpose() * acts[l];
        const Eigen::VectorXd db = g.colwise().sum().transpose();
        if (l > 0) {
          g = g * model.weights[l];
          g = (pre[l - 1].array() > 0.0).select(g.array(), 0.0).matrix();
        }
        model.weights[l] -= lr * dw;
        model.biases[l] -= lr * db;
      }
    }
    if (report) report->epoch_loss.push_back(epoch_loss / static_cast<double>(seen));
  }

  for (const auto& w : model.weights)
    if (!w.allFinite())
      throw NumericalError("training diverged at epoch " + std::to_string(spec.epochs - 1));

  if (report) report->train_accuracy = accuracy(model, X, y);
  return model;
}

ClassifierModel train(const TrainSpec& spec, const SyntheticDataset& data, RngStream& rng,
                      TrainReport* report) {
  return train(spec, data.X, data.y, rng, report);
}

double accuracy(const ClassifierModel& model, const Eigen::MatrixXd& X,
                const std::vector<int>& y) {
  if (static_cast<std::size_t>(X.rows()) != y.size())
    throw ParameterError("accuracy: label count does not match sample count");
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    if (decision(model, X.row(i).transpose()) == y[static_cast<std::size_t>(i)]) ++hits;
  return X.rows() == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(X.rows());
}

namespace {

// Score f_k(x) together with the rectifier on/off pattern met on the way.
// The network is piecewise linear, so central differences are exact only
// when both stencil ends share the pattern of the centre point.
double score_with_pattern(const ClassifierModel& m, const Eigen::VectorXd& x,
                          std::size_t score_index, std::vector<signed char>& pattern) {
  pattern.clear();
  Eigen::VectorXd hdn = x;
  for (std::size_t l = 0; l + 1 < m.weights.size(); ++l) {
    hdn = m.weights[l] * hdn + m.biases[l];
    for (Eigen::Index i = 0; i < hdn.size(); ++i)
      pattern.push_back(hdn(i) > 0.0 ? 1 : 0);
    hdn = hdn.cwiseMax(0.0);
  }
  hdn = m.weights.back() * hdn + m.biases.back();
  return hdn(static_cast<Eigen::Index>(score_index));
}

}  // namespace

GradCheckReport grad_check(const ClassifierModel& model, std::size_t points, double tolerance,
                           RngStream& rng, const GradientFn& gradient) {
  if (!(tolerance > 0.0)) throw ParameterError("grad_check: tolerance must be > 0");
  const GradientFn grad = gradient ? gradient : GradientFn(&class_gradient);
  const std::size_t D = model.input_dim();
  const double h = 1e-4;

  GradCheckReport rep;
  std::size_t attempts = 0;
  const std::size_t max_attempts = points * 10 + 10;
  while (rep.points_evaluated < points && attempts < max_attempts) {
    ++attempts;
    Eigen::VectorXd x(static_cast<Eigen::Index>(D));
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = rng.gaussian();
    const int k = model.binary()
                      ? (rng.uniform_index(2) == 0 ? 1 : -1)
                      : static_cast<int>(rng.uniform_index(model.output_dim()));

    bool near_kink = false;
    Eigen::VectorXd hdn = x;
    for (std::size_t l = 0; l + 1 < model.weights.size() && !near_kink; ++l) {
      hdn = model.weights[l] * hdn + model.biases[l];
      if ((hdn.array().abs() < 1e-6).any()) near_kink = true;
      hdn = hdn.cwiseMax(0.0);
    }
    if (near_kink) {
      ++rep.points_skipped;
      continue;
    }

    const Eigen::VectorXd an = grad(model, x, k);
    Eigen::VectorXd fd(static_cast<Eigen::Index>(D));
    const std::size_t score_index =
        model.binary() ? 0 : static_cast<std::size_t>(k);
    const double score_sign = model.binary() && k == -1 ? -1.0 : 1.0;
    std::vector<signed char> base_pattern, stencil_pattern;
    score_with_pattern(model, x, score_index, base_pattern);
    bool stencil_crosses_kink = false;
    for (Eigen::Index j = 0; j < fd.size() && !stencil_crosses_kink; ++j) {
      Eigen::VectorXd xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      const double fp = score_with_pattern(model, xp, score_index, stencil_pattern);
      if (stencil_pattern != base_pattern) stencil_crosses_kink = true;
      const double fm = score_with_pattern(model, xm, score_index, stencil_pattern);
      if (stencil_pattern != base_pattern) stencil_crosses_kink = true;
      fd(j) = score_sign * (fp - fm) / (2.0 * h);
    }
    if (stencil_crosses_kink) {  // a rectifier flipped inside the stencil
      ++rep.points_skipped;
      continue;
    }

    const double scale = std::max({an.lpNorm<Eigen::Infinity>(),
                                   fd.lpNorm<Eigen::Infinity>(), 1e-12});
    const double err = (fd - an).lpNorm<Eigen::Infinity>() / scale;
    rep.max_rel_error = std::max(rep.max_rel_error, err);
    ++rep.points_evaluated;
  }
  rep.passed = rep.points_evaluated > 0 && rep.max_rel_error < tolerance;
  return rep;
}

}  // namespace rgl
