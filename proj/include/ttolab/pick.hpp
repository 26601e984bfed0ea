#pragma once

#include "ttolab/sedlock.hpp"

namespace ttolab {

// Coefficient model of the span of the reproducing kernels at n distinct
// disk points z_1 .. z_n.  A vector u stands for the combination
// sum_j u_j k_{z_j}, and the inner product is carried by the Gram matrix
// G_{jk} = 1 / (1 - z_j conj(z_k)) of the kernels.
class PickSpace {
 public:
  // Requires pairwise separation above 1e-8 and a Gram matrix that is
  // positive definite to working accuracy.
  explicit PickSpace(std::vector<DiskPoint> nodes);

  int dimension() const { return static_cast<int>(nodes_.size()); }
  const std::vector<DiskPoint>& nodes() const { return nodes_; }
  const Eigen::MatrixXcd& gram() const { return gram_; }

  // (u, v) = sum_{j,k} conj(v_j) u_k / (1 - z_j conj(z_k)), linear in u and
  // conjugate linear in v.  Equals the Hardy space inner product of the
  // kernel combinations the vectors stand for.
  Complex inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

  // Operator norm of the entrywise multiplier u -> (w_1 u_1, ..., w_n u_n)
  // with respect to the inner product, computed as the largest singular
  // value of G^{1/2} D G^{-1/2}.  Throws std::runtime_error when the Gram
  // condition number exceeds 1e12 and the similarity is untrustworthy.
  double diagonal_norm(const Eigen::VectorXcd& weights) const;

  double gram_condition() const { return condition_; }

 private:
  std::vector<DiskPoint> nodes_;
  Eigen::MatrixXcd gram_;
  Eigen::MatrixXcd sqrt_;
  Eigen::MatrixXcd sqrt_inv_;
  double condition_;
};

// Identification of the model space of a product with distinct zeros with
// the Pick space at those zeros: the function sum_j a_j k_{z_j} maps to the
// coefficient vector (a_1, ..., a_n).  The map is unitary between the model
// space inner product and the Pick inner product, and it diagonalizes the
// compressions of coanalytic symbols.
struct PickIdentification {
  PickSpace space;
  BasisPtr source;
  Eigen::MatrixXcd to_pick;    // orthonormal model coordinates -> coefficients
  Eigen::MatrixXcd from_pick;  // coefficients -> orthonormal model coordinates
};

PickIdentification sedlock_to_pick(const BasisPtr& basis);

// Matrix of an operator on the model space rewritten in Pick coefficients.
Eigen::MatrixXcd to_pick_coordinates(const PickIdentification& id,
                                     const OperatorMatrix& m);

// Sorted norms of the canonical idempotent resolution of the algebra: the
// spectral idempotents for a disk parameter and the orthogonal projections
// for a circle parameter.  Exterior parameters resolve into the adjoints of
// the conjugate flipped resolution, so they share its norms.  The sorted
// list is invariant under unitary conjugation of the algebra, and it
// separates circle parameters (all ones) from the rest (all above one).
std::vector<double> idempotent_norm_profile(const SedlockAlgebra& algebra);

}  // namespace ttolab
