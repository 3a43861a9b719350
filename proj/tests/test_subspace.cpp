#include <doctest.h>

#include <cmath>

#include "rgl/dct.hpp"
#include "rgl/orthonormal.hpp"
#include "rgl/rng.hpp"
#include "rgl/subspace.hpp"

using namespace rgl;

namespace {

Eigen::VectorXd random_vector(RngStream& rng, std::size_t D) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(D));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.gaussian();
  return v;
}

}  // namespace

TEST_CASE("explicit subspace validates orthonormality") {
  RngStream rng = rng_stream(1, 0);
  const OrthonormalMatrix U = random_orthonormal(rng, 10);
  CHECK_NOTHROW(explicit_subspace(U.m.leftCols(3), "ok"));
  Eigen::MatrixXd bad = U.m.leftCols(3);
  bad(0, 0) += 0.01;
  CHECK_THROWS_AS(explicit_subspace(bad, "skewed"), ParameterError);
}

TEST_CASE("span subspace orthonormalizes and rejects rank deficiency") {
  RngStream rng = rng_stream(2, 0);
  Eigen::MatrixXd v(10, 3);
  for (int c = 0; c < 3; ++c) v.col(c) = random_vector(rng, 10);
  const SubspaceSpec s = span_subspace(v, "span");
  CHECK(s.dim() == 3);
  CHECK(orthonormality_defect(s.basis) < 1e-9);
  // Original columns live in the span.
  for (int c = 0; c < 3; ++c) {
    const Eigen::VectorXd p = subspace_project(v.col(c), s);
    CHECK((p - v.col(c)).norm() < 1e-8 * v.col(c).norm());
  }

  Eigen::MatrixXd deficient(10, 2);
  deficient.col(0) = v.col(0);
  deficient.col(1) = 2.0 * v.col(0);
  CHECK_THROWS_AS(span_subspace(deficient, "dependent"), ParameterError);
}

TEST_CASE("projection fixes members and annihilates the complement") {
  RngStream rng = rng_stream(3, 0);
  const OrthonormalMatrix U = random_orthonormal(rng, 12);
  const SubspaceSpec s = explicit_subspace(U.m.leftCols(4), "first4");

  const Eigen::VectorXd inside = U.m.leftCols(4) * random_vector(rng, 4);
  CHECK((subspace_project(inside, s) - inside).norm() < 1e-9 * (1.0 + inside.norm()));

  const Eigen::VectorXd outside = U.m.rightCols(8) * random_vector(rng, 8);
  CHECK(subspace_project(outside, s).norm() < 1e-9 * (1.0 + outside.norm()));
}

TEST_CASE("projection is idempotent and never increases the norm") {
  RngStream rng = rng_stream(4, 0);
  const OrthonormalMatrix U = random_orthonormal(rng, 30);
  const SubspaceSpec s = explicit_subspace(U.m.leftCols(7), "七");
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd v = random_vector(rng, 30);
    const Eigen::VectorXd p = subspace_project(v, s);
    CHECK((subspace_project(p, s) - p).norm() < 1e-10 * (1.0 + p.norm()));
    CHECK(p.norm() <= v.norm() * (1.0 + 1e-12));
    // Residual is orthogonal to the subspace.
    CHECK(std::abs((v - p).dot(p)) < 1e-8 * (1.0 + v.norm() * p.norm()));
  }
}

TEST_CASE("random S-dim projection captures S/D of the energy on average") {
  RngStream rng = rng_stream(5, 0);
  const std::size_t D = 40, S = 3;
  const int n = 10000;
  double ratio_sum = 0.0;
  const OrthonormalMatrix U = random_orthonormal(rng, D);
  const SubspaceSpec s = explicit_subspace(U.m.leftCols(S), "s3");
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd v = random_vector(rng, D);
    ratio_sum += subspace_project(v, s).squaredNorm() / v.squaredNorm();
  }
  CHECK(ratio_sum / n == doctest::Approx(static_cast<double>(S) / D).epsilon(0.05));
}

TEST_CASE("diagonal block family has the specified count and geometry") {
  // floor((min(H,W) - K)/T) + 1 blocks
  CHECK(dct_diagonal_subspaces(32, 32, 3, 8, 3).size() == 9);
  CHECK(dct_diagonal_subspaces(224, 224, 3, 8, 4).size() == 55);

  const auto fam = dct_diagonal_subspaces(16, 16, 3, 4, 4);
  REQUIRE(fam.size() == 4);
  for (std::size_t j = 0; j < fam.size(); ++j) {
    CHECK(fam[j].dim() == 4 * 3);  // K atoms replicated over C channels
    CHECK(fam[j].ambient_dim() == 3 * 16 * 16);
    CHECK(fam[j].start_index == 4 * j);
    CHECK(fam[j].label == "dct" + std::to_string(j));
  }
  CHECK_THROWS_AS(dct_diagonal_subspaces(16, 16, 3, 17, 4), ParameterError);
}

TEST_CASE("diagonal block projection matches an explicit atom basis") {
  const std::size_t C = 1, H = 8, W = 8;
  const auto fam = dct_diagonal_subspaces(H, W, C, 3, 2);
  REQUIRE(!fam.empty());
  const SubspaceSpec& s = fam[1];  // atoms (2,2),(3,3),(4,4)

  // Materialize the same atoms directly from the basis rows (full f64
  // precision): atom_d(y, x) = B_H(d, y) * B_W(d, x).
  const Eigen::MatrixXd& bh = dct_basis(H);
  const Eigen::MatrixXd& bw = dct_basis(W);
  Eigen::MatrixXd basis(H * W, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t d = s.start_index + k;
    for (std::size_t y = 0; y < H; ++y)
      for (std::size_t x = 0; x < W; ++x)
        basis(static_cast<Eigen::Index>(y * W + x), static_cast<Eigen::Index>(k)) =
            bh(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(y)) *
            bw(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(x));
  }
  const SubspaceSpec explicit_s = explicit_subspace(basis, "explicit");

  RngStream rng = rng_stream(6, 0);
  for (int i = 0; i < 10; ++i) {
    const Eigen::VectorXd v = random_vector(rng, H * W);
    const Eigen::VectorXd a = subspace_project(v, s);
    const Eigen::VectorXd b = subspace_project(v, explicit_s);
    CHECK((a - b).norm() < 1e-8 * (1.0 + v.norm()));
  }
}

TEST_CASE("complete diagonal family energies obey Parseval on diagonal input") {
  const std::size_t H = 16, W = 16;
  const auto fam = dct_diagonal_subspaces(H, W, 1, 1, 1);  // every diagonal atom
  REQUIRE(fam.size() == 16);

  // Build a vector inside the diagonal span.
  RngStream rng = rng_stream(7, 0);
  ImageTensor coeff(1, H, W, ValueRange::Raw);
  for (std::size_t d = 0; d < 16; ++d)
    coeff.at(0, d, d) = static_cast<float>(rng.gaussian());
  const ImageTensor img = idct2(coeff);
  Eigen::VectorXd delta(static_cast<Eigen::Index>(img.data.size()));
  for (std::size_t i = 0; i < img.data.size(); ++i)
    delta(static_cast<Eigen::Index>(i)) = img.data[i];

  const std::vector<double> energies = subspace_energy(delta, fam);
  double sum = 0.0;
  for (double e : energies) sum += e;
  CHECK(sum == doctest::Approx(delta.squaredNorm()).epsilon(1e-9));
  for (std::size_t d = 0; d < 16; ++d)
    CHECK(energies[d] ==
          doctest::Approx(static_cast<double>(coeff.at(0, d, d)) * coeff.at(0, d, d))
              .epsilon(1e-6));
}

TEST_CASE("low-frequency noise concentrates in the first diagonal blocks") {
  const std::size_t H = 32, W = 32;
  RngStream rng = rng_stream(8, 0);
  ImageTensor img(1, H, W, ValueRange::Unit);
  for (auto& v : img.data) v = static_cast<float>(rng.uniform01());
  const ImageTensor low = band_filter(img, BandMode::Lowpass, 8);

  Eigen::VectorXd delta(static_cast<Eigen::Index>(low.data.size()));
  for (std::size_t i = 0; i < low.data.size(); ++i)
    delta(static_cast<Eigen::Index>(i)) = low.data[i];

  const auto fam = dct_diagonal_subspaces(H, W, 1, 8, 8);  // 4 disjoint blocks
  const std::vector<double> energies = subspace_energy(delta, fam);
  REQUIRE(energies.size() == 4);
  CHECK(energies[0] > 100.0 * (energies[1] + energies[2] + energies[3] + 1e-30));
}
