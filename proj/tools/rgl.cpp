// Command-line driver: synthetic data generation, training, boundary
// attacks, margin profiling, and image augmentation with reproducible
// on-disk artifacts (every command writes a manifest.json).
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>

#include "rgl/attacks.hpp"
#include "rgl/csv.hpp"
#include "rgl/dct.hpp"
#include "rgl/idx_io.hpp"
#include "rgl/image_io.hpp"
#include "rgl/manifest.hpp"
#include "rgl/margins.hpp"
#include "rgl/model.hpp"
#include "rgl/mrtk.hpp"
#include "rgl/prime.hpp"
#include "rgl/prime_config.hpp"
#include "rgl/subspace.hpp"
#include "rgl/synthetic.hpp"
#include "rgl/threads.hpp"
#include "rgl/train.hpp"

namespace fs = std::filesystem;
using namespace rgl;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string join_path(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

// ---------------------------------------------------------------- gen-synth
struct GenSynthArgs {
  std::string kind;
  double eps = 0.0, sigma = 1.0, rho = 0.0;
  std::size_t lattice_k = 1, n = 0, dim = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen_synth(const GenSynthArgs& a) {
  Timer timer;
  RngStream rng = rng_stream(a.seed, 0);
  SyntheticDataset ds = a.kind == "t1"
                            ? gen_t1(a.eps, a.sigma, a.n, a.dim, rng)
                            : gen_t2(a.rho, a.eps, a.sigma, a.lattice_k, a.n, a.dim, rng);
  save_dataset(ds, a.out);

  RunManifest m;
  m.command = "gen-synth";
  m.params = {{"kind", a.kind}, {"eps", a.eps}, {"sigma", a.sigma}, {"n", a.n},
              {"dim", a.dim}};
  if (a.kind == "t2") {
    m.params["rho"] = a.rho;
    m.params["lattice_k"] = a.lattice_k;
  }
  m.seed = a.seed;
  m.outputs = {join_path(a.out, "samples.mrtk"), join_path(a.out, "labels.mrtk"),
               join_path(a.out, "rotation.mrtk"), join_path(a.out, "meta.json")};
  m.duration_s = timer.seconds();
  write_manifest(m, join_path(a.out, "manifest.json"));
  std::cout << "wrote " << a.kind << " dataset (" << a.n << " x " << a.dim << ") to " << a.out
            << "\n";
  return 0;
}

// -------------------------------------------------------------------- train
struct TrainArgs {
  std::string data, images, labels, out, arch = "logistic";
  std::size_t depth = 3, width = 100, epochs = 500, batch = 128, classes = 10;
  double lr = 0.1, init_mult = 1.0;
  std::uint64_t seed = 0;
};

int cmd_train(const TrainArgs& a) {
  Timer timer;
  Eigen::MatrixXd X;
  std::vector<int> y;
  std::size_t out_dim = 1;
  std::vector<std::string> inputs;

  if (!a.data.empty()) {
    SyntheticDataset ds = load_dataset(a.data);
    X = std::move(ds.X);
    y = std::move(ds.y);
    inputs.push_back(a.data);
  } else {
    IdxDataset ds = load_idx(a.images, a.labels);
    const std::size_t d = ds.images.front().data.size();
    X.resize(static_cast<Eigen::Index>(ds.images.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < ds.images.size(); ++i)
      for (std::size_t j = 0; j < d; ++j)
        X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            static_cast<double>(ds.images[i].data[j]);
    y = std::move(ds.labels);
    out_dim = a.classes;
    inputs = {a.images, a.labels};
  }

  TrainSpec spec;
  spec.out_dim = out_dim;
  spec.epochs = a.epochs;
  spec.batch = a.batch;
  spec.lr_max = a.lr;
  spec.init_multiplier = a.init_mult;
  if (a.arch == "mlp") spec.hidden.assign(a.depth, a.width);

  RngStream rng = rng_stream(a.seed, 0);
  TrainReport report;
  ClassifierModel model = train(spec, X, y, rng, &report);
  save_model(model, a.out);
  write_loss_csv(join_path(a.out, "loss.csv"), report.epoch_loss);

  RunManifest m;
  m.command = "train";
  m.params = {{"arch", a.arch}, {"epochs", a.epochs}, {"batch", a.batch}, {"lr", a.lr},
              {"init_mult", a.init_mult}, {"train_accuracy", report.train_accuracy}};
  if (a.arch == "mlp") {
    m.params["depth"] = a.depth;
    m.params["width"] = a.width;
  }
  m.seed = a.seed;
  m.inputs = inputs;
  m.outputs = {join_path(a.out, "model.json"), join_path(a.out, "loss.csv")};
  m.duration_s = timer.seconds();
  write_manifest(m, join_path(a.out, "manifest.json"));
  std::cout << "train accuracy " << format_real(report.train_accuracy) << ", checkpoint in "
            << a.out << "\n";
  return 0;
}

// ------------------------------------------------------------------- attack
struct AttackArgs {
  std::string model, data, out, mode = "sparsefool", box = "none";
  double lambda = 3.0, overshoot = 0.02, alpha = -1.0;
  std::size_t max_outer = 50, max_iter = 50, samples = 0;
  bool save_perturbations = false;
};

int cmd_attack(const AttackArgs& a) {
  Timer timer;
  ClassifierModel model = load_model(a.model);
  SyntheticDataset ds = load_dataset(a.data);
  if (model.input_dim() != ds.dim())
    throw ParameterError("attack: model input dimension " + std::to_string(model.input_dim()) +
                         " does not match data dimension " + std::to_string(ds.dim()));

  const std::size_t n = a.samples == 0 ? ds.n() : std::min(a.samples, ds.n());
  DeepFoolParams dfp{a.max_iter, a.overshoot};
  SparseFoolParams sfp{a.lambda, a.max_outer, dfp};

  std::vector<AttackResult> results(n);
  parallel_for(n, [&](std::size_t i) {
    const Eigen::VectorXd x = ds.X.row(static_cast<Eigen::Index>(i)).transpose();
    if (a.mode == "deepfool") {
      results[i] = deepfool(model, x, dfp, ds.y[i]);
    } else {
      BoxBounds box = a.box == "unit" ? unit_box(ds.dim()) : unbounded_box(ds.dim());
      if (a.alpha >= 0.0) {
        const double lo = a.box == "unit" ? 0.0 : -std::numeric_limits<double>::infinity();
        const double hi = a.box == "unit" ? 1.0 : std::numeric_limits<double>::infinity();
        box = perceptibility_bounds(x, a.alpha, lo, hi);
      }
      results[i] = sparsefool(model, x, box, sfp, ds.y[i]);
    }
  });

  fs::create_directories(a.out);
  write_attack_csv(join_path(a.out, "results.csv"), results);
  std::vector<std::string> outputs = {join_path(a.out, "results.csv")};
  if (a.save_perturbations) {
    std::vector<float> flat(n * ds.dim());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < ds.dim(); ++j)
        flat[i * ds.dim() + j] = static_cast<float>(results[i].delta(static_cast<Eigen::Index>(j)));
    const std::string pfile = join_path(a.out, "perturbations.mrtk");
    mrtk_save(pfile, {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(ds.dim())}, flat);
    outputs.push_back(pfile);
  }

  std::size_t flips = 0;
  for (const auto& r : results) flips += r.success ? 1 : 0;

  RunManifest m;
  m.command = "attack";
  m.params = {{"mode", a.mode}, {"lambda", a.lambda}, {"max_outer", a.max_outer},
              {"max_iter", a.max_iter}, {"overshoot", a.overshoot}, {"samples", n},
              {"box", a.box}, {"fooled", flips}};
  if (a.alpha >= 0.0) m.params["alpha"] = a.alpha;
  m.inputs = {a.model, a.data};
  m.outputs = outputs;
  m.duration_s = timer.seconds();
  write_manifest(m, join_path(a.out, "manifest.json"));
  std::cout << "fooled " << flips << "/" << n << ", results in " << a.out << "\n";
  return 0;
}

// ------------------------------------------------------------------ profile
struct ProfileArgs {
  std::string model, data, out, family = "synth", energy;
  std::size_t subspace_dim = 3, window = 8, step = 4, samples = 0, max_iter = 50;
  double overshoot = 0.02;
  std::uint64_t seed = 0;
};

std::vector<SubspaceSpec> synth_family(const SyntheticDataset& ds, std::size_t sdim,
                                       std::uint64_t seed) {
  const std::size_t D = ds.dim();
  if (sdim + 1 > D)
    throw ParameterError("profile: subspace dimension too large for the data dimension");
  std::vector<SubspaceSpec> out;

  out.push_back(explicit_subspace(ds.U.m.col(0), "u1"));
  if (ds.kind == SynthKind::T2) out.push_back(explicit_subspace(ds.U.m.col(1), "u2"));
  out.push_back(explicit_subspace(
      ds.U.m.rightCols(static_cast<Eigen::Index>(D - 1)), "u1-complement"));

  RngStream rng = rng_stream(seed, 1);
  // Random directions inside span{u1}^perp: rotate Gaussians into the
  // complement's coordinates.
  Eigen::MatrixXd g_orth(static_cast<Eigen::Index>(D - 1), static_cast<Eigen::Index>(sdim));
  for (Eigen::Index c = 0; c < g_orth.cols(); ++c)
    for (Eigen::Index r = 0; r < g_orth.rows(); ++r) g_orth(r, c) = rng.gaussian();
  out.push_back(span_subspace(
      ds.U.m.rightCols(static_cast<Eigen::Index>(D - 1)) * g_orth,
      "orth" + std::to_string(sdim)));

  Eigen::MatrixXd g_rand(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(sdim));
  for (Eigen::Index c = 0; c < g_rand.cols(); ++c)
    for (Eigen::Index r = 0; r < g_rand.rows(); ++r) g_rand(r, c) = rng.gaussian();
  out.push_back(span_subspace(g_rand, "rand" + std::to_string(sdim)));
  return out;
}

int cmd_profile(const ProfileArgs& a) {
  Timer timer;

  if (!a.energy.empty()) {  // spectral energy split of a stored perturbation
    ImageTensor delta = load_image_tensor(a.energy);
    const auto fam = dct_diagonal_subspaces(delta.H, delta.W, delta.C, a.window, a.step);
    Eigen::VectorXd v(static_cast<Eigen::Index>(delta.data.size()));
    for (std::size_t i = 0; i < delta.data.size(); ++i) v(static_cast<Eigen::Index>(i)) = delta.data[i];
    const std::vector<double> energies = subspace_energy(v, fam);
    const double total = v.squaredNorm();
    std::vector<EnergyRow> rows(fam.size());
    for (std::size_t j = 0; j < fam.size(); ++j)
      rows[j] = {j, fam[j].label, fam[j].start_index, energies[j],
                 total > 0.0 ? energies[j] / total : 0.0};
    fs::create_directories(a.out);
    write_energy_csv(join_path(a.out, "energy.csv"), rows);

    RunManifest m;
    m.command = "profile";
    m.params = {{"mode", "energy"}, {"window", a.window}, {"step", a.step},
                {"total_energy", total}};
    m.inputs = {a.energy};
    m.outputs = {join_path(a.out, "energy.csv")};
    m.duration_s = timer.seconds();
    write_manifest(m, join_path(a.out, "manifest.json"));
    std::cout << "energy split over " << fam.size() << " blocks in " << a.out << "\n";
    return 0;
  }

  ClassifierModel model = load_model(a.model);
  SyntheticDataset ds = load_dataset(a.data);
  if (model.input_dim() != ds.dim())
    throw ParameterError("profile: model input dimension does not match data");
  if (a.family != "synth")
    throw ParameterError("profile: family '" + a.family + "' requires image-shaped data");

  const std::vector<SubspaceSpec> fam = synth_family(ds, a.subspace_dim, a.seed);
  const std::size_t n = a.samples == 0 ? ds.n() : std::min(a.samples, ds.n());
  DeepFoolParams dfp{a.max_iter, a.overshoot};
  const MarginProfile prof =
      margin_profile(model, ds.X.topRows(static_cast<Eigen::Index>(n)), fam, dfp);

  fs::create_directories(a.out);
  write_margin_summary_csv(join_path(a.out, "margins.csv"), prof.summaries);
  write_margin_records_csv(join_path(a.out, "margins_samples.csv"), prof.records);

  RunManifest m;
  m.command = "profile";
  m.params = {{"family", a.family}, {"subspace_dim", a.subspace_dim}, {"samples", n},
              {"max_iter", a.max_iter}, {"overshoot", a.overshoot}};
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& s : fam) labels.push_back(s.label);
  m.params["subspaces"] = labels;
  m.seed = a.seed;
  m.inputs = {a.model, a.data};
  m.outputs = {join_path(a.out, "margins.csv"), join_path(a.out, "margins_samples.csv")};
  m.duration_s = timer.seconds();
  write_manifest(m, join_path(a.out, "manifest.json"));
  std::cout << "profiled " << n << " samples over " << fam.size() << " subspaces in " << a.out
            << "\n";
  return 0;
}

// ------------------------------------------------------------------ augment
struct AugmentArgs {
  std::string input, out, config, preset = "small";
  std::size_t k = 4;
  std::uint64_t seed = 0;
};

int cmd_augment(const AugmentArgs& a) {
  Timer timer;
  if (a.k < 1) throw ParameterError("augment: k must be >= 1");
  PrimeConfig cfg = a.config.empty() ? preset_by_name(a.preset) : load_prime_config(a.config);

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a.input))
    if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("augment: no .png files in '" + a.input + "'");

  std::vector<ImageTensor> images;
  images.reserve(files.size());
  for (const auto& f : files) images.push_back(load_png(f.string()));

  const std::vector<ImageTensor> augmented = augment_dataset_offline(images, a.k, cfg, a.seed);

  fs::create_directories(a.out);
  std::vector<std::string> outputs;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string stem = files[i].stem().string();
    for (std::size_t c = 0; c <= a.k; ++c) {
      const std::string name = stem + ".aug" + std::to_string(c) + ".png";
      save_png(join_path(a.out, name), augmented[(a.k + 1) * i + c]);
      outputs.push_back(join_path(a.out, name));
    }
  }

  RunManifest m;
  m.command = "augment";
  m.params = {{"k", a.k}, {"images", files.size()},
              {"config", nlohmann::json::parse(prime_config_json(cfg))}};
  m.seed = a.seed;
  m.inputs = {a.input};
  m.outputs = outputs;
  m.duration_s = timer.seconds();
  write_manifest(m, join_path(a.out, "manifest.json"));
  std::cout << "wrote " << outputs.size() << " images to " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- transform
struct TransformArgs {
  std::string input, out;
  double spectral = -1.0, spatial = -1.0, color = -1.0;
  bool flip = false;
  std::size_t lowpass = 0, highpass = 0;
  std::size_t smoothness = 0, band = 0;
  std::uint64_t seed = 0;
};

int cmd_transform(const TransformArgs& a) {
  Timer timer;
  int chosen = (a.spectral >= 0.0) + (a.spatial >= 0.0) + (a.color >= 0.0) + a.flip +
               (a.lowpass > 0) + (a.highpass > 0);
  if (chosen != 1)
    throw ParameterError(
        "transform: choose exactly one of --spectral, --spatial, --color, --freq-flip, "
        "--lowpass, --highpass");

  const ImageTensor x = load_png(a.input);
  RngStream rng = rng_stream(a.seed, 0);
  ImageTensor y = x;
  nlohmann::json params;
  if (a.spectral >= 0.0) {
    const std::size_t K = a.smoothness ? a.smoothness : 3;
    y = spectral_transform(x, K, a.spectral, rng);
    params = {{"op", "spectral"}, {"sigma", a.spectral}, {"smoothness", K}};
  } else if (a.spatial >= 0.0) {
    const std::size_t K = a.smoothness ? a.smoothness : 100;
    y = spatial_transform(x, K, a.spatial, rng);
    params = {{"op", "spatial"}, {"sigma", a.spatial}, {"smoothness", K}};
  } else if (a.color >= 0.0) {
    const std::size_t K = a.smoothness ? a.smoothness : 10;
    const std::size_t delta = a.band ? a.band : K;
    y = color_transform(x, K, a.color, delta, rng);
    params = {{"op", "color"}, {"sigma", a.color}, {"smoothness", K}, {"band", delta}};
  } else if (a.flip) {
    y = freq_flip(x);
    clip_unit(y);  // the spectrum swap can leave the unit range; PNG needs [0,1]
    params = {{"op", "freq-flip"}};
  } else if (a.lowpass > 0) {
    y = band_filter(x, BandMode::Lowpass, a.lowpass);
    clip_unit(y);
    params = {{"op", "lowpass"}, {"square", a.lowpass}};
  } else {
    y = band_filter(x, BandMode::Highpass, a.highpass);
    clip_unit(y);
    params = {{"op", "highpass"}, {"square", a.highpass}};
  }
  save_png(a.out, y);

  RunManifest m;
  m.command = "transform";
  m.params = params;
  m.seed = a.seed;
  m.inputs = {a.input};
  m.outputs = {a.out};
  m.duration_s = timer.seconds();
  write_manifest(m, a.out + ".manifest.json");
  std::cout << "wrote " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision-boundary geometry and max-entropy augmentation toolkit"};
  app.require_subcommand(1);

  GenSynthArgs gs;
  auto* gen = app.add_subcommand("gen-synth", "generate a rotated synthetic dataset");
  gen->add_option("--kind", gs.kind, "dataset family")
      ->required()
      ->check(CLI::IsMember({"t1", "t2"}));
  gen->add_option("--eps", gs.eps, "class separation along the discriminative axis")
      ->required();
  gen->add_option("--sigma", gs.sigma, "noise scale on the remaining axes");
  gen->add_option("--rho", gs.rho, "lattice pitch (t2)");
  gen->add_option("--lattice-k", gs.lattice_k, "lattice half-width (t2)");
  gen->add_option("--n", gs.n, "sample count")->required();
  gen->add_option("--dim", gs.dim, "ambient dimension")->required();
  gen->add_option("--seed", gs.seed, "rng seed");
  gen->add_option("--out", gs.out, "output directory")->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "train a classifier with SGD");
  train_cmd->add_option("--data", tr.data, "synthetic dataset directory");
  train_cmd->add_option("--images", tr.images, "IDX image file");
  train_cmd->add_option("--labels", tr.labels, "IDX label file");
  train_cmd->add_option("--arch", tr.arch, "model family")
      ->check(CLI::IsMember({"logistic", "mlp"}));
  train_cmd->add_option("--depth", tr.depth, "hidden layers (mlp)");
  train_cmd->add_option("--width", tr.width, "units per hidden layer (mlp)");
  train_cmd->add_option("--classes", tr.classes, "class count for image data");
  train_cmd->add_option("--epochs", tr.epochs, "epoch budget");
  train_cmd->add_option("--batch", tr.batch, "mini-batch size");
  train_cmd->add_option("--lr", tr.lr, "peak learning rate");
  train_cmd->add_option("--init-mult", tr.init_mult, "weight init multiplier");
  train_cmd->add_option("--seed", tr.seed, "rng seed");
  train_cmd->add_option("--out", tr.out, "checkpoint directory")->required();

  AttackArgs at;
  auto* attack_cmd = app.add_subcommand("attack", "run boundary attacks over a dataset");
  attack_cmd->add_option("--model", at.model, "checkpoint directory")->required();
  attack_cmd->add_option("--data", at.data, "dataset directory")->required();
  attack_cmd->add_option("--mode", at.mode, "attack")
      ->check(CLI::IsMember({"deepfool", "sparsefool"}));
  attack_cmd->add_option("--lambda", at.lambda, "boundary over-shoot factor (>= 1)");
  attack_cmd->add_option("--max-outer", at.max_outer, "outer iteration cap");
  attack_cmd->add_option("--max-iter", at.max_iter, "inner iteration cap");
  attack_cmd->add_option("--overshoot", at.overshoot, "inner overshoot");
  attack_cmd->add_option("--alpha", at.alpha, "perceptibility half-width (unit-range units)");
  attack_cmd->add_option("--box", at.box, "value-range box")
      ->check(CLI::IsMember({"none", "unit"}));
  attack_cmd->add_option("--samples", at.samples, "limit sample count (0 = all)");
  attack_cmd->add_flag("--save-perturbations", at.save_perturbations,
                       "also write perturbations.mrtk");
  attack_cmd->add_option("--out", at.out, "output directory")->required();

  ProfileArgs pr;
  auto* profile_cmd = app.add_subcommand("profile", "margin profiles / energy splits");
  profile_cmd->add_option("--model", pr.model, "checkpoint directory");
  profile_cmd->add_option("--data", pr.data, "dataset directory");
  profile_cmd->add_option("--family", pr.family, "subspace family")
      ->check(CLI::IsMember({"synth"}));
  profile_cmd->add_option("--subspace-dim", pr.subspace_dim, "random subspace dimension");
  profile_cmd->add_option("--samples", pr.samples, "limit sample count (0 = all)");
  profile_cmd->add_option("--max-iter", pr.max_iter, "search iteration cap");
  profile_cmd->add_option("--overshoot", pr.overshoot, "search overshoot");
  profile_cmd->add_option("--energy", pr.energy, "stored perturbation tensor (energy mode)");
  profile_cmd->add_option("--window", pr.window, "diagonal block size (energy mode)");
  profile_cmd->add_option("--step", pr.step, "diagonal block step (energy mode)");
  profile_cmd->add_option("--seed", pr.seed, "rng seed for random subspaces");
  profile_cmd->add_option("--out", pr.out, "output directory")->required();

  AugmentArgs au;
  auto* augment_cmd = app.add_subcommand("augment", "offline k-copy augmentation of a PNG dir");
  augment_cmd->add_option("--input", au.input, "input directory of .png files")->required();
  augment_cmd->add_option("--config", au.config, "pipeline configuration file");
  augment_cmd->add_option("--preset", au.preset, "built-in configuration")
      ->check(CLI::IsMember({"small", "large", "filling-level"}));
  augment_cmd->add_option("--k", au.k, "augmented copies per image");
  augment_cmd->add_option("--seed", au.seed, "rng seed");
  augment_cmd->add_option("--out", au.out, "output directory")->required();

  TransformArgs tf;
  auto* transform_cmd = app.add_subcommand("transform", "apply one primitive to one image");
  transform_cmd->add_option("--input", tf.input, "input .png")->required();
  transform_cmd->add_option("--out", tf.out, "output .png")->required();
  transform_cmd->add_option("--spectral", tf.spectral, "filter strength");
  transform_cmd->add_option("--spatial", tf.spatial, "warp strength");
  transform_cmd->add_option("--color", tf.color, "color-curve strength");
  transform_cmd->add_flag("--freq-flip", tf.flip, "reverse the DCT spectrum");
  transform_cmd->add_option("--lowpass", tf.lowpass, "keep the low-frequency square");
  transform_cmd->add_option("--highpass", tf.highpass, "keep the high-frequency square");
  transform_cmd->add_option("--smoothness", tf.smoothness, "primitive smoothness parameter");
  transform_cmd->add_option("--band", tf.band, "active color modes");
  transform_cmd->add_option("--seed", tf.seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen_synth(gs);
    if (train_cmd->parsed()) {
      if (tr.data.empty() == (tr.images.empty() || tr.labels.empty()))
        throw ParameterError("train: pass either --data or both --images and --labels");
      return cmd_train(tr);
    }
    if (attack_cmd->parsed()) return cmd_attack(at);
    if (profile_cmd->parsed()) {
      if (pr.energy.empty() && (pr.model.empty() || pr.data.empty()))
        throw ParameterError("profile: pass --model and --data, or --energy");
      return cmd_profile(pr);
    }
    if (augment_cmd->parsed()) return cmd_augment(au);
    if (transform_cmd->parsed()) return cmd_transform(tf);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
