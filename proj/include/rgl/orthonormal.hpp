#pragma once
#include <Eigen/Dense>

#include "rgl/rng.hpp"

namespace rgl {

// Member of SO(D): U^T U = I within 1e-9, det(U) = +1 within 1e-6.
struct OrthonormalMatrix {
  Eigen::MatrixXd m;
  std::size_t dim() const { return static_cast<std::size_t>(m.rows()); }
};

// Haar-distributed rotation: QR of an i.i.d. Gaussian matrix with the R
// diagonal's signs absorbed into Q, then one column negated if det = -1.
OrthonormalMatrix random_orthonormal(RngStream& rng, std::size_t D);

// Max |U^T U - I| entry; used by tests and validation.
double orthonormality_defect(const Eigen::MatrixXd& m);

}  // namespace rgl
