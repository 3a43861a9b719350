#include "rgl/model.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "rgl/mrtk.hpp"

namespace rgl {

namespace {

void check_input(const ClassifierModel& model, const Eigen::VectorXd& x) {
  if (model.weights.empty()) throw ParameterError("model has no layers");
  if (static_cast<std::size_t>(x.size()) != model.input_dim())
    throw ParameterError("input dimension " + std::to_string(x.size()) +
                         " does not match model input " + std::to_string(model.input_dim()));
}

// Forward pass keeping every pre-activation for the backward sweep.
std::vector<Eigen::VectorXd> forward_states(const ClassifierModel& model,
                                            const Eigen::VectorXd& x) {
  std::vector<Eigen::VectorXd> pre(model.weights.size());
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    pre[l] = model.weights[l] * h + model.biases[l];
    if (l + 1 < model.weights.size()) h = pre[l].cwiseMax(0.0);
  }
  return pre;
}

}  // namespace

ClassifierModel make_affine(const Eigen::VectorXd& w, double b) {
  if (w.size() < 1) throw ParameterError("make_affine: weight vector must be non-empty");
  ClassifierModel m;
  m.weights.push_back(w.transpose());
  m.biases.push_back(Eigen::VectorXd::Constant(1, b));
  return m;
}

ClassifierModel make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                         std::size_t out_dim, RngStream& rng, double init_multiplier) {
  if (input_dim < 1) throw ParameterError("make_mlp: input dimension must be >= 1");
  if (out_dim < 1) throw ParameterError("make_mlp: output dimension must be >= 1");
  for (std::size_t h : hidden)
    if (h < 1) throw ParameterError("make_mlp: hidden widths must be >= 1");

  std::vector<std::size_t> widths;
  widths.push_back(input_dim);
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(out_dim);

  ClassifierModel m;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t in = widths[l], out = widths[l + 1];
    const double bound = init_multiplier / std::sqrt(static_cast<double>(in));
    Eigen::MatrixXd w(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.uniform(-bound, bound);
    m.weights.push_back(std::move(w));
    m.biases.push_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out)));
  }
  return m;
}

Eigen::VectorXd logits(const ClassifierModel& model, const Eigen::VectorXd& x) {
  check_input(model, x);
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    h = model.weights[l] * h + model.biases[l];
    if (l + 1 < model.weights.size()) h = h.cwiseMax(0.0);
  }
  return h;
}

int decision(const ClassifierModel& model, const Eigen::VectorXd& x) {
  const Eigen::VectorXd f = logits(model, x);
  if (!f.allFinite()) throw NumericalError("model produced non-finite logits");
  if (model.binary()) return f(0) > 0.0 ? 1 : -1;
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < f.size(); ++k)
    if (f(k) > f(best)) best = k;
  return static_cast<int>(best);
}

Eigen::VectorXd class_gradient(const ClassifierModel& model, const Eigen::VectorXd& x, int k) {
  check_input(model, x);
  double sign = 1.0;
  std::size_t index;
  if (model.binary()) {
    if (k != 1 && k != -1)
      throw ParameterError("class_gradient: binary models take class +1 or -1");
    sign = k == 1 ? 1.0 : -1.0;
    index = 0;
  } else {
    if (k < 0 || static_cast<std::size_t>(k) >= model.output_dim())
      throw ParameterError("class_gradient: class index out of range");
    index = static_cast<std::size_t>(k);
  }

  const std::vector<Eigen::VectorXd> pre = forward_states(model, x);
  const std::size_t L = model.weights.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.output_dim()));
  g(static_cast<Eigen::Index>(index)) = sign;
  for (std::size_t l = L; l-- > 0;) {
    if (l + 1 < L)
      g = (pre[l].array() > 0.0).select(g.array(), 0.0).matrix();
    g = model.weights[l].transpose() * g;
  }
  return g;
}

void save_model(const ClassifierModel& model, const std::string& dir) {
  if (model.weights.empty()) throw ParameterError("save_model: model has no layers");
  std::filesystem::create_directories(dir);
  const auto path = [&](const std::string& f) {
    return (std::filesystem::path(dir) / f).string();
  };

  nlohmann::json meta;
  meta["type"] = model.weights.size() == 1 ? "affine" : "mlp";
  meta["activation"] = "relu";
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const Eigen::MatrixXd& w = model.weights[l];
    std::vector<float> wdata(static_cast<std::size_t>(w.size()));
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) wdata[idx++] = static_cast<float>(w(r, c));
    const std::string wfile = "w" + std::to_string(l) + ".mrtk";
    mrtk_save(path(wfile), {static_cast<std::uint32_t>(w.rows()),
                            static_cast<std::uint32_t>(w.cols())},
              wdata);

    std::vector<float> bdata(static_cast<std::size_t>(model.biases[l].size()));
    for (Eigen::Index i = 0; i < model.biases[l].size(); ++i)
      bdata[static_cast<std::size_t>(i)] = static_cast<float>(model.biases[l](i));
    const std::string bfile = "b" + std::to_string(l) + ".mrtk";
    mrtk_save(path(bfile), {static_cast<std::uint32_t>(model.biases[l].size())}, bdata);

    nlohmann::json lj;
    lj["weights"] = wfile;
    lj["bias"] = bfile;
    lj["out"] = w.rows();
    lj["in"] = w.cols();
    layers.push_back(lj);
  }
  meta["layers"] = layers;

  const std::string tmp = path("model.json") + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + tmp + "'");
    f << meta.dump(2) << "\n";
    if (!f) throw IoError("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path("model.json"));
}

ClassifierModel load_model(const std::string& dir) {
  const auto path = [&](const std::string& f) {
    return (std::filesystem::path(dir) / f).string();
  };
  std::ifstream mf(path("model.json"), std::ios::binary);
  if (!mf) throw IoError("cannot open '" + path("model.json") + "'");
  nlohmann::json meta;
  try {
    mf >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid model manifest: " + std::string(e.what()));
  }

  ClassifierModel model;
  try {
    if (meta.at("activation").get<std::string>() != "relu")
      throw FormatError("unsupported activation '" +
                        meta.at("activation").get<std::string>() + "'");
    for (const auto& lj : meta.at("layers")) {
      const std::size_t out = lj.at("out").get<std::size_t>();
      const std::size_t in = lj.at("in").get<std::size_t>();
      TensorFile wt = mrtk_load(path(lj.at("weights").get<std::string>()));
      if (wt.dims.size() != 2 || wt.dims[0] != out || wt.dims[1] != in)
        throw FormatError("layer weight tensor shape does not match manifest");
      Eigen::MatrixXd w(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
      std::size_t idx = 0;
      for (std::size_t r = 0; r < out; ++r)
        for (std::size_t c = 0; c < in; ++c)
          w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              static_cast<double>(wt.data[idx++]);
      TensorFile bt = mrtk_load(path(lj.at("bias").get<std::string>()));
      if (bt.dims.size() != 1 || bt.dims[0] != out)
        throw FormatError("layer bias tensor shape does not match manifest");
      Eigen::VectorXd b(static_cast<Eigen::Index>(out));
      for (std::size_t i = 0; i < out; ++i)
        b(static_cast<Eigen::Index>(i)) = static_cast<double>(bt.data[i]);
      model.weights.push_back(std::move(w));
      model.biases.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("incomplete model manifest: " + std::string(e.what()));
  }
  if (model.weights.empty()) throw FormatError("model manifest lists no layers");
  for (std::size_t l = 0; l + 1 < model.weights.size(); ++l)
    if (model.weights[l + 1].cols() != model.weights[l].rows())
      throw FormatError("layer dimensions do not chain");
  return model;
}

}  // namespace rgl
