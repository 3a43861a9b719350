#include "rgl/subspace.hpp"

#include "rgl/dct.hpp"
#include "rgl/orthonormal.hpp"

namespace rgl {

std::size_t SubspaceSpec::dim() const {
  return kind == SubspaceKind::Explicit ? static_cast<std::size_t>(basis.cols()) : K * C;
}

std::size_t SubspaceSpec::ambient_dim() const {
  return kind == SubspaceKind::Explicit ? static_cast<std::size_t>(basis.rows()) : C * H * W;
}

SubspaceSpec explicit_subspace(Eigen::MatrixXd basis, std::string label) {
  if (basis.cols() < 1 || basis.rows() < basis.cols())
    throw ParameterError("explicit_subspace: need 1 <= S <= D basis vectors");
  if (orthonormality_defect(basis) > 1e-9)
    throw ParameterError("explicit_subspace: basis is not orthonormal");
  SubspaceSpec s;
  s.kind = SubspaceKind::Explicit;
  s.basis = std::move(basis);
  s.label = std::move(label);
  return s;
}

SubspaceSpec span_subspace(const Eigen::MatrixXd& vectors, std::string label) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(vectors);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(vectors.rows(), vectors.cols());
  // Reject rank deficiency: a collapsed span would silently change dim.
  Eigen::VectorXd rdiag = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < vectors.cols(); ++j)
    if (std::abs(rdiag(j)) < 1e-12 * vectors.rows())
      throw ParameterError("span_subspace: vectors are rank deficient");
  return explicit_subspace(std::move(q), std::move(label));
}

std::vector<SubspaceSpec> dct_diagonal_subspaces(std::size_t H, std::size_t W, std::size_t C,
                                                 std::size_t K, std::size_t T) {
  const std::size_t lim = std::min(H, W);
  if (K < 1 || K > lim) throw ParameterError("dct_diagonal_subspaces: K must be in [1, min(H,W)]");
  if (T < 1) throw ParameterError("dct_diagonal_subspaces: T must be >= 1");
  const std::size_t count = (lim - K) / T + 1;
  std::vector<SubspaceSpec> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    SubspaceSpec s;
    s.kind = SubspaceKind::DctDiagonal;
    s.C = C; s.H = H; s.W = W;
    s.K = K; s.T = T; s.block = j;
    s.start_index = j * T;
    s.label = "dct" + std::to_string(j);
    out.push_back(std::move(s));
  }
  return out;
}

Eigen::VectorXd subspace_project(const Eigen::VectorXd& v, const SubspaceSpec& S) {
  if (static_cast<std::size_t>(v.size()) != S.ambient_dim())
    throw ParameterError("subspace_project: dimension mismatch");
  if (S.kind == SubspaceKind::Explicit)
    return S.basis * (S.basis.transpose() * v);

  // Lazy DCT atoms: atom (k,c) is the rank-1 image b_d b_d^T placed in
  // channel c (d = block*T + k). <v, atom> = b_d^T V_c b_d.
  const Eigen::MatrixXd& bh = dct_basis(S.H);
  const Eigen::MatrixXd& bw = dct_basis(S.W);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (std::size_t k = 0; k < S.K; ++k) {
    const std::size_t d = S.block * S.T + k;
    Eigen::VectorXd rh = bh.row(d);
    Eigen::VectorXd rw = bw.row(d);
    for (std::size_t c = 0; c < S.C; ++c) {
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
          vc(v.data() + c * S.H * S.W, S.H, S.W);
      const double coeff = rh.dot(vc * rw);
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
          oc(out.data() + c * S.H * S.W, S.H, S.W);
      oc.noalias() += coeff * (rh * rw.transpose());
    }
  }
  return out;
}

std::vector<double> subspace_energy(const Eigen::VectorXd& delta,
                                    const std::vector<SubspaceSpec>& subspaces) {
  std::vector<double> e;
  e.reserve(subspaces.size());
  for (const auto& s : subspaces) e.push_back(subspace_project(delta, s).squaredNorm());
  return e;
}

}  // namespace rgl
