#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "ttolab/blaschke.hpp"

namespace ttolab {

using ModelVector = Eigen::VectorXcd;

// Quadrature size used when none is requested: at least 256 and 16 n, and
// enlarged when zeros approach the circle so that the geometric tail r^M of
// the basis coefficients stays below 1e-13, r being the largest zero modulus.
int default_quadrature_size(const FiniteBlaschkeProduct& theta);

// Orthonormal rational basis of the n dimensional space H^2 (-) theta H^2,
// built from the ordered zero list of theta:
//
//   e_k(z) = sqrt(1 - |z_k|^2) / (1 - conj(z_k) z) * prod_{j<k} b_{z_j}(z).
//
// Boundary inner products are evaluated by uniform M point circle quadrature
// with M = max(256, 16 n) by default.  Construction verifies that the sampled
// Gram matrix is the identity to 1e-10 and fails otherwise, which catches an
// under resolved quadrature before it can corrupt downstream results.
class ModelSpaceBasis {
 public:
  explicit ModelSpaceBasis(FiniteBlaschkeProduct theta, int quadrature_size = 0);

  const FiniteBlaschkeProduct& theta() const { return theta_; }
  int dimension() const { return theta_.degree(); }
  int quadrature_size() const { return points_; }
  Complex node(int m) const { return nodes_[m]; }

  // Closed form evaluation of the k-th basis function, k = 0 .. n-1.
  Complex basis_eval(int k, Complex z) const;
  // Column vector (e_0(z), ..., e_{n-1}(z)).
  ModelVector basis_values(Complex z) const;
  // Value at z of the function with the given coordinates.
  Complex eval(const ModelVector& coords, Complex z) const;

  // Basis samples on the quadrature nodes, entry (k, m) = e_k(node m).
  const Eigen::MatrixXcd& boundary_samples() const { return samples_; }

  // Coordinates of the orthogonal projection onto the space, from samples of
  // an arbitrary boundary function on the quadrature nodes.
  ModelVector project_samples(const Eigen::VectorXcd& values) const;
  ModelVector project(const std::function<Complex(Complex)>& f) const;

  // Coordinates of the reproducing kernel at lambda, |lambda| <= 1.  On the
  // boundary this is the analytic continuation kernel with squared norm
  // |theta'(lambda)|.
  ModelVector kernel_coords(Complex lambda) const;

  // Coordinates of (theta(z) - theta(lambda)) / (z - lambda), the conjugated
  // kernel at lambda; the difference quotient is replaced by theta'(lambda)
  // near coincidence.
  ModelVector conjugate_kernel_coords(Complex lambda) const;

  // Matrix J of the conjugation f -> conj(f z) theta in the basis: the
  // conjugate of a coordinate vector v maps to J conj(v).  Satisfies
  // J conj(J) = I and is validated on construction.
  const Eigen::MatrixXcd& conjugation_matrix() const;

  // Antilinear conjugation applied to coordinates.
  ModelVector apply_conjugation(const ModelVector& v) const;

  // Same ordered zero list (and quadrature size): coordinates are directly
  // comparable.
  bool same_basis(const ModelSpaceBasis& other, double tol = 1e-8) const;
  // Same zero multiset in any order: the spaces coincide as sets.
  bool same_space(const ModelSpaceBasis& other, double tol = 1e-8) const;

 private:
  FiniteBlaschkeProduct theta_;
  int points_;
  std::vector<Complex> nodes_;
  Eigen::MatrixXcd samples_;                   // n x M
  mutable Eigen::MatrixXcd conjugation_;       // n x n, built on first use
  mutable bool conjugation_ready_ = false;
};

using BasisPtr = std::shared_ptr<const ModelSpaceBasis>;

BasisPtr make_basis(FiniteBlaschkeProduct theta, int quadrature_size = 0);

// Unitary change of basis between two bases of the same space (same zero
// multiset, possibly different order or quadrature size).  Coordinates v in
// `from` describe the same function as transition * v in `to`.
Eigen::MatrixXcd basis_transition(const ModelSpaceBasis& from,
                                  const ModelSpaceBasis& to);

}  // namespace ttolab
