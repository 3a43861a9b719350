#include "rgl/synthetic.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "rgl/mrtk.hpp"

namespace rgl {

namespace {

// Pinned per-sample draw order: label, lattice index (T2), then the noise
// coordinates in increasing index order.
SyntheticDataset generate(SynthKind kind, SyntheticParams p, std::size_t n, std::size_t dim,
                          RngStream& rng) {
  const std::size_t structured = kind == SynthKind::T1 ? 1 : 2;
  SyntheticDataset ds;
  ds.kind = kind;
  ds.params = p;
  ds.U = random_orthonormal(rng, dim);
  ds.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  ds.y.resize(n);

  Eigen::VectorXd z(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    const int label = rng.uniform_index(2) == 0 ? 1 : -1;
    ds.y[i] = label;
    z(0) = 0.5 * p.eps * label;
    if (kind == SynthKind::T2) {
      const long long k =
          static_cast<long long>(rng.uniform_index(2 * p.lattice_k)) -
          static_cast<long long>(p.lattice_k);
      z(1) = label == 1 ? p.rho * static_cast<double>(k)
                        : p.rho * (static_cast<double>(k) + 0.5);
    }
    for (std::size_t d = structured; d < dim; ++d)
      z(static_cast<Eigen::Index>(d)) = p.sigma * rng.gaussian();
    ds.X.row(static_cast<Eigen::Index>(i)) = (ds.U.m * z).transpose();
  }
  return ds;
}

std::vector<float> to_f32(const Eigen::MatrixXd& m) {
  std::vector<float> out(static_cast<std::size_t>(m.size()));
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[idx++] = static_cast<float>(m(r, c));
  return out;
}

Eigen::MatrixXd from_f32(const std::vector<float>& v, std::size_t rows, std::size_t cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t idx = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          static_cast<double>(v[idx++]);
  return m;
}

}  // namespace

SyntheticDataset gen_t1(double eps, double sigma, std::size_t n, std::size_t dim,
                        RngStream& rng) {
  if (!(eps > 0.0)) throw ParameterError("gen_t1: class separation must be > 0");
  if (sigma < 0.0) throw ParameterError("gen_t1: noise scale must be >= 0");
  if (dim < 2) throw ParameterError("gen_t1: dimension must be >= 2");
  if (n < 1) throw ParameterError("gen_t1: sample count must be >= 1");
  SyntheticParams p;
  p.eps = eps;
  p.sigma = sigma;
  return generate(SynthKind::T1, p, n, dim, rng);
}

SyntheticDataset gen_t2(double rho, double eps, double sigma, std::size_t lattice_k,
                        std::size_t n, std::size_t dim, RngStream& rng) {
  if (rho < 0.0) throw ParameterError("gen_t2: lattice pitch must be >= 0");
  if (eps < 0.0) throw ParameterError("gen_t2: class separation must be >= 0");
  if (sigma < 0.0) throw ParameterError("gen_t2: noise scale must be >= 0");
  if (lattice_k < 1) throw ParameterError("gen_t2: lattice half-width must be >= 1");
  if (dim < 3) throw ParameterError("gen_t2: dimension must be >= 3");
  if (n < 1) throw ParameterError("gen_t2: sample count must be >= 1");
  SyntheticParams p;
  p.eps = eps;
  p.sigma = sigma;
  p.rho = rho;
  p.lattice_k = lattice_k;
  return generate(SynthKind::T2, p, n, dim, rng);
}

void save_dataset(const SyntheticDataset& ds, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* f) { return (std::filesystem::path(dir) / f).string(); };

  mrtk_save(path("samples.mrtk"), {static_cast<std::uint32_t>(ds.n()),
                                   static_cast<std::uint32_t>(ds.dim())},
            to_f32(ds.X));
  std::vector<float> labels(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) labels[i] = static_cast<float>(ds.y[i]);
  mrtk_save(path("labels.mrtk"), {static_cast<std::uint32_t>(ds.n())}, labels);
  mrtk_save(path("rotation.mrtk"), {static_cast<std::uint32_t>(ds.dim()),
                                    static_cast<std::uint32_t>(ds.dim())},
            to_f32(ds.U.m));

  nlohmann::json meta;
  meta["kind"] = ds.kind == SynthKind::T1 ? "t1" : "t2";
  meta["n"] = ds.n();
  meta["dim"] = ds.dim();
  meta["eps"] = ds.params.eps;
  meta["sigma"] = ds.params.sigma;
  if (ds.kind == SynthKind::T2) {
    meta["rho"] = ds.params.rho;
    meta["lattice_k"] = ds.params.lattice_k;
  }
  const std::string tmp = path("meta.json") + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + tmp + "'");
    f << meta.dump(2) << "\n";
    if (!f) throw IoError("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path("meta.json"));
}

SyntheticDataset load_dataset(const std::string& dir) {
  const auto path = [&](const char* f) { return (std::filesystem::path(dir) / f).string(); };

  std::ifstream mf(path("meta.json"), std::ios::binary);
  if (!mf) throw IoError("cannot open '" + path("meta.json") + "'");
  nlohmann::json meta;
  try {
    mf >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid dataset metadata in '" + path("meta.json") + "': " + e.what());
  }

  SyntheticDataset ds;
  try {
    const std::string kind = meta.at("kind").get<std::string>();
    if (kind == "t1") ds.kind = SynthKind::T1;
    else if (kind == "t2") ds.kind = SynthKind::T2;
    else throw FormatError("unknown dataset kind '" + kind + "'");
    ds.params.eps = meta.at("eps").get<double>();
    ds.params.sigma = meta.at("sigma").get<double>();
    if (ds.kind == SynthKind::T2) {
      ds.params.rho = meta.at("rho").get<double>();
      ds.params.lattice_k = meta.at("lattice_k").get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("incomplete dataset metadata: " + std::string(e.what()));
  }

  TensorFile samples = mrtk_load(path("samples.mrtk"));
  if (samples.dims.size() != 2) throw FormatError("samples tensor must have rank 2");
  const std::size_t n = samples.dims[0], dim = samples.dims[1];
  ds.X = from_f32(samples.data, n, dim);

  TensorFile labels = mrtk_load(path("labels.mrtk"));
  if (labels.dims.size() != 1 || labels.dims[0] != n)
    throw FormatError("labels tensor must have rank 1 with one entry per sample");
  ds.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const float v = labels.data[i];
    if (v != 1.0f && v != -1.0f) throw FormatError("labels must be +1 or -1");
    ds.y[i] = static_cast<int>(v);
  }

  TensorFile rot = mrtk_load(path("rotation.mrtk"));
  if (rot.dims.size() != 2 || rot.dims[0] != dim || rot.dims[1] != dim)
    throw FormatError("rotation tensor must be square with the sample dimension");
  Eigen::MatrixXd raw = from_f32(rot.data, dim, dim);
  // Snap to the nearest orthonormal matrix (polar factor) to undo the
  // 32-bit rounding, so downstream basis checks see an exact rotation.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(raw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ds.U.m = svd.matrixU() * svd.matrixV().transpose();
  return ds;
}

}  // namespace rgl
