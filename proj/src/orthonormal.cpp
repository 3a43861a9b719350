#include "rgl/orthonormal.hpp"

namespace rgl {

OrthonormalMatrix random_orthonormal(RngStream& rng, std::size_t D) {
  if (D == 0) throw ParameterError("random_orthonormal: D must be >= 1");
  Eigen::MatrixXd g(D, D);
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t c = 0; c < D; ++c) g(r, c) = rng.gaussian();

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd rdiag = qr.matrixQR().diagonal();
  // Fix the gauge: without this, Q is not Haar (QR is only unique up to the
  // signs of R's diagonal).
  for (std::size_t j = 0; j < D; ++j)
    if (rdiag(j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(D - 1) = -q.col(D - 1);  // land in SO(D)
  return OrthonormalMatrix{std::move(q)};
}

double orthonormality_defect(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd d = m.transpose() * m - Eigen::MatrixXd::Identity(m.cols(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace rgl
