#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rgl/csv.hpp"
#include "rgl/error.hpp"
#include "rgl/margins.hpp"
#include "rgl/model.hpp"
#include "rgl/rng.hpp"
#include "rgl/subspace.hpp"
#include "rgl/synthetic.hpp"
#include "rgl/train.hpp"

using namespace rgl;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("the ideal scorer yields the exact half-separation along its axis") {
  RngStream rng = rng_stream(90, 0);
  const double eps = 5.0;
  const SyntheticDataset ds = gen_t1(eps, 1.0, 100, 20, rng);
  // Perfect classifier: score is the first latent coordinate itself.
  const ClassifierModel m = make_affine(ds.U.m.col(0), 0.0);

  const SubspaceSpec u1 = explicit_subspace(ds.U.m.col(0), "u1");
  const MarginProfile prof = margin_profile(m, ds.X, {u1});

  REQUIRE(prof.records.size() == 100);
  REQUIRE(prof.summaries.size() == 1);
  for (const MarginRecord& r : prof.records) {
    CHECK(r.success);
    CHECK(r.margin == doctest::Approx(eps / 2.0).epsilon(1e-9));
  }
  const MarginSummary& s = prof.summaries[0];
  CHECK(s.available);
  CHECK(s.n_success == 100);
  CHECK(s.n_fail == 0);
  CHECK(s.median == doctest::Approx(eps / 2.0).epsilon(1e-9));
  CHECK(s.p05 == doctest::Approx(eps / 2.0).epsilon(1e-9));
  CHECK(s.p95 == doctest::Approx(eps / 2.0).epsilon(1e-9));
  CHECK(s.dim == 1);
}

TEST_CASE("records come back sample-major with stable indices") {
  RngStream rng = rng_stream(91, 0);
  const SyntheticDataset ds = gen_t1(4.0, 1.0, 7, 10, rng);
  const ClassifierModel m = make_affine(ds.U.m.col(0), 0.0);

  RngStream dir_rng = rng_stream(92, 0);
  Eigen::MatrixXd R(10, 2);
  for (Eigen::Index i = 0; i < R.size(); ++i) R.data()[i] = dir_rng.gaussian();
  const std::vector<SubspaceSpec> subs = {explicit_subspace(ds.U.m.col(0), "u1"),
                                          span_subspace(R, "rand2")};
  const MarginProfile prof = margin_profile(m, ds.X, subs, {});
  REQUIRE(prof.records.size() == 14);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const MarginRecord& r = prof.records[i * 2 + j];
      CHECK(r.sample == i);
      CHECK(r.subspace == j);
    }
  CHECK(prof.summaries[0].subspace == 0);
  CHECK(prof.summaries[1].subspace == 1);
}

TEST_CASE("a random restriction can only enlarge the margin of a linear scorer") {
  RngStream rng = rng_stream(93, 0);
  const SyntheticDataset ds = gen_t1(5.0, 1.0, 60, 20, rng);
  const ClassifierModel m = make_affine(ds.U.m.col(0), 0.0);

  RngStream dir_rng = rng_stream(94, 0);
  Eigen::MatrixXd R(20, 3);
  for (Eigen::Index i = 0; i < R.size(); ++i) R.data()[i] = dir_rng.gaussian();
  const std::vector<SubspaceSpec> subs = {explicit_subspace(ds.U.m.col(0), "u1"),
                                          span_subspace(R, "rand3")};

  const MarginProfile prof = margin_profile(m, ds.X, subs);
  REQUIRE(prof.summaries[0].available);
  REQUIRE(prof.summaries[1].available);
  // |s| / ‖P_S w‖ ≥ |s| / ‖w‖, with equality only if w ∈ S.
  CHECK(prof.summaries[1].median > prof.summaries[0].median);
  // Per sample, not just in aggregate.
  for (std::size_t i = 0; i < 60; ++i)
    CHECK(prof.records[i * 2 + 1].margin >= prof.records[i * 2 + 0].margin - 1e-12);
}

TEST_CASE("a trained scorer recovers the planted separation within tolerance") {
  RngStream data_rng = rng_stream(95, 0);
  const SyntheticDataset ds = gen_t1(5.0, 1.0, 300, 30, data_rng);
  TrainSpec spec;
  spec.hidden = {};
  spec.epochs = 120;
  RngStream train_rng = rng_stream(96, 0);
  const ClassifierModel m = train(spec, ds, train_rng, nullptr);

  const SubspaceSpec u1 = explicit_subspace(ds.U.m.col(0), "u1");
  const MarginProfile prof = margin_profile(m, ds.X.topRows(100), {u1});
  REQUIRE(prof.summaries[0].available);
  CHECK(prof.summaries[0].median > 2.0);
  CHECK(prof.summaries[0].median < 3.0);
}

TEST_CASE("full-space profiling agrees with the direct boundary walk") {
  RngStream mrng = rng_stream(97, 0);
  const ClassifierModel m = make_mlp(8, {14}, 3, mrng, 1.0);
  RngStream px = rng_stream(98, 0);
  Eigen::MatrixXd X(5, 8);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = px.gaussian();

  const SubspaceSpec full = explicit_subspace(Eigen::MatrixXd::Identity(8, 8), "full");
  const MarginProfile prof = margin_profile(m, X, {full});
  for (std::size_t i = 0; i < 5; ++i) {
    const AttackResult direct = deepfool(m, X.row(static_cast<Eigen::Index>(i)).transpose());
    if (direct.success) {
      CHECK(prof.records[i].success);
      CHECK(prof.records[i].margin == doctest::Approx(direct.l2_boundary).epsilon(1e-9));
      CHECK(prof.records[i].iterations == direct.iterations);
    }
  }
}

TEST_CASE("unreachable restrictions are recorded as failures, not crashes") {
  RngStream rng = rng_stream(99, 0);
  const SyntheticDataset ds = gen_t1(4.0, 1.0, 20, 10, rng);
  const ClassifierModel m = make_affine(ds.U.m.col(0), 0.0);

  // u2 is orthogonal to the score gradient: every search must fail.
  const std::vector<SubspaceSpec> subs = {explicit_subspace(ds.U.m.col(1), "u2"),
                                          explicit_subspace(ds.U.m.col(0), "u1")};
  const MarginProfile prof = margin_profile(m, ds.X, subs);

  const MarginSummary& blind = prof.summaries[0];
  CHECK_FALSE(blind.available);
  CHECK(blind.n_success == 0);
  CHECK(blind.n_fail == 20);
  CHECK(std::isnan(blind.median));
  CHECK(std::isnan(blind.p05));
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK_FALSE(prof.records[i * 2].success);
    CHECK(std::isnan(prof.records[i * 2].margin));
  }
  // The healthy restriction is unaffected by its failing neighbour.
  CHECK(prof.summaries[1].available);
  CHECK(prof.summaries[1].n_success == 20);
}

TEST_CASE("dimension mismatches are rejected") {
  RngStream rng = rng_stream(100, 0);
  const SyntheticDataset ds = gen_t1(4.0, 1.0, 5, 6, rng);
  const ClassifierModel m = make_affine(ds.U.m.col(0), 0.0);
  const SubspaceSpec wrong = explicit_subspace(Eigen::MatrixXd::Identity(7, 2), "wrong");
  CHECK_THROWS_AS((void)margin_profile(m, ds.X, {wrong}), ParameterError);
  CHECK_THROWS_AS((void)margin_profile(m, ds.X, {}), ParameterError);
}

TEST_CASE("percentiles interpolate linearly between order statistics") {
  const std::vector<double> v = {3.0, 1.0, 4.0, 2.0};  // order does not matter
  CHECK(percentile(v, 0.0) == doctest::Approx(1.0));
  CHECK(percentile(v, 1.0) == doctest::Approx(4.0));
  CHECK(percentile(v, 0.5) == doctest::Approx(2.5));
  CHECK(percentile(v, 0.25) == doctest::Approx(1.75));
  CHECK(percentile({7.0}, 0.9) == doctest::Approx(7.0));
  CHECK_THROWS_AS((void)percentile({}, 0.5), ParameterError);
  CHECK_THROWS_AS((void)percentile(v, -0.1), ParameterError);
  CHECK_THROWS_AS((void)percentile(v, 1.1), ParameterError);
}

TEST_CASE("report files carry the documented headers and 9-digit values") {
  MarginSummary s;
  s.subspace = 2;
  s.dim = 3;
  s.start_index = 4;
  s.available = true;
  s.p05 = 0.123456789123;
  s.median = 2.5;
  s.p95 = 10.0 / 3.0;
  s.n_success = 9;
  s.n_fail = 1;
  const std::string sum_path = "tmp_margin_summary.csv";
  write_margin_summary_csv(sum_path, {s});
  const std::string sum = slurp(sum_path);
  CHECK(sum.find("subspace_index,dim,start_index,p05,median,p95,n_success,n_fail\n") == 0);
  CHECK(sum.find("2,3,4,0.123456789,2.5,3.33333333,9,1\n") != std::string::npos);
  std::remove(sum_path.c_str());

  MarginRecord ok{0, 1, 1.5, 3, true};
  MarginRecord fail{1, 1, std::nan(""), 0, false};
  const std::string rec_path = "tmp_margin_records.csv";
  write_margin_records_csv(rec_path, {ok, fail});
  const std::string rec = slurp(rec_path);
  CHECK(rec.find("sample,subspace_index,margin,iterations,success\n") == 0);
  CHECK(rec.find("0,1,1.5,3,1\n") != std::string::npos);
  CHECK(rec.find("1,1,nan,0,0\n") != std::string::npos);
  std::remove(rec_path.c_str());

  AttackResult a;
  a.delta = Eigen::VectorXd::Zero(2);
  a.success = true;
  a.l0 = 2;
  a.l2 = 0.25;
  a.iterations = 4;
  const std::string atk_path = "tmp_attack.csv";
  write_attack_csv(atk_path, {a});
  const std::string atk = slurp(atk_path);
  CHECK(atk.find("sample,success,l0,l2,iterations\n") == 0);
  CHECK(atk.find("0,1,2,0.25,4\n") != std::string::npos);
  std::remove(atk_path.c_str());

  const std::string loss_path = "tmp_loss.csv";
  write_loss_csv(loss_path, {0.75, 0.5});
  const std::string loss = slurp(loss_path);
  CHECK(loss.find("epoch,loss\n") == 0);
  CHECK(loss.find("0,0.75\n") != std::string::npos);
  CHECK(loss.find("1,0.5\n") != std::string::npos);
  std::remove(loss_path.c_str());

  EnergyRow row{0, "dct0", 0, 0.5, 0.125};
  const std::string energy_path = "tmp_energy.csv";
  write_energy_csv(energy_path, {row});
  const std::string energy = slurp(energy_path);
  CHECK(energy.find("subspace_index,label,start_index,energy,fraction\n") == 0);
  CHECK(energy.find("0,dct0,0,0.5,0.125\n") != std::string::npos);
  std::remove(energy_path.c_str());
}
