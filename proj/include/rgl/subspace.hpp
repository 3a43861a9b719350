#pragma once
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rgl/error.hpp"

namespace rgl {

enum class SubspaceKind { Explicit, DctDiagonal };

// Linear subspace of R^D, either as an explicit orthonormal basis (columns)
// or as an implicit block of DCT diagonal atoms replicated across channels
// (dim = K*C), materialized lazily during projection.
struct SubspaceSpec {
  SubspaceKind kind = SubspaceKind::Explicit;
  Eigen::MatrixXd basis;  // D x S, orthonormal columns (Explicit only)

  // DctDiagonal parameters: atoms (d,d) for d = block*T + k, k = 0..K-1,
  // one copy per channel.
  std::size_t C = 0, H = 0, W = 0;
  std::size_t K = 0, T = 0, block = 0;

  std::string label;           // for reports ("u1", "rand3", "dct0", ...)
  std::size_t start_index = 0; // block*T for DCT blocks, 0 otherwise

  std::size_t dim() const;
  std::size_t ambient_dim() const;
};

// Validates orthonormality of the columns (within 1e-9).
SubspaceSpec explicit_subspace(Eigen::MatrixXd basis, std::string label);

// Orthonormalizes the columns of a full-rank matrix first (thin QR).
SubspaceSpec span_subspace(const Eigen::MatrixXd& vectors, std::string label);

// Sliding window of K consecutive DCT diagonal atoms with step T;
// count = floor((min(H,W) - K)/T) + 1 blocks.
std::vector<SubspaceSpec> dct_diagonal_subspaces(std::size_t H, std::size_t W, std::size_t C,
                                                 std::size_t K, std::size_t T);

// P_S v. Idempotent; never increases the norm.
Eigen::VectorXd subspace_project(const Eigen::VectorXd& v, const SubspaceSpec& S);

// Per-subspace ||P_{S_j} delta||^2.
std::vector<double> subspace_energy(const Eigen::VectorXd& delta,
                                    const std::vector<SubspaceSpec>& subspaces);

}  // namespace rgl
