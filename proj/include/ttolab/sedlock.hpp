#pragma once

#include "ttolab/subspace.hpp"
#include "ttolab/tto.hpp"

namespace ttolab {

// Maximal abelian algebra of truncated multiplication operators attached to
// a sphere parameter a.  The algebra is spanned by powers of its generator;
// for parameters outside the closed disk it consists of the adjoints of the
// algebra at 1/conj(a).
struct SedlockAlgebra {
  BasisPtr basis;
  ExtendedParameter parameter;
  // Orthonormal (Frobenius) spanning operators, dimension() of them.
  std::vector<OperatorMatrix> elements;
  // Column stacked orthonormal span, n^2 x n.
  Eigen::MatrixXcd span;

  int dimension() const { return static_cast<int>(elements.size()); }
};

// Generator: the compressed shift plus the rank one correction
// a / (1 - conj(theta(0)) a) k_0 (x) Ck_0 for finite |a| <= 1.  Exterior and
// infinite parameters yield the adjoint of the generator at 1/conj(a).
OperatorMatrix sedlock_generator(BasisPtr basis, const ExtendedParameter& a);

// Span of {I, S, S^2, ...} for the generator S, re-orthonormalized.  Throws
// std::runtime_error if the powers fail to reach the full dimension (a
// derogatory generator, which does not occur for these generators).
SedlockAlgebra sedlock_algebra(BasisPtr basis, const ExtendedParameter& a);

// Orthonormal basis of {X : XM = MX}, via the nullspace of the Sylvester
// operator on column stacked matrices.
std::vector<OperatorMatrix> commutant(const OperatorMatrix& m);

// Relative distance of x from the algebra span.
double membership_residual(const SedlockAlgebra& algebra, const OperatorMatrix& x);

// Operator with symbol phi0 (1 + a conj(theta)) + c where phi0 has the given
// model space coordinates and must vanish at the origin.  These symbols fill
// out the algebra at finite parameter a.
OperatorMatrix symbol_member(BasisPtr basis, Complex a, const ModelVector& phi0,
                             Complex c);

// Spectral idempotents of the generator at a disk parameter with simple
// level set: Q_j = (1 / theta'(w_j)) Ck_{w_j} (x) k_{w_j} over the solutions
// w_j of theta = a.  They satisfy Q_j^2 = Q_j, mutual annihilation and
// sum to the identity, but are not self adjoint and have norm above 1.
std::vector<OperatorMatrix> sedlock_idempotents(BasisPtr basis, const DiskPoint& a);

// Orthogonal spectral projections of the unitary generator at a circle
// parameter: P_j = k_{zeta_j} (x) k_{zeta_j} / |theta'(zeta_j)|.  Dividing by
// the squared boundary kernel norm is what makes P_j^2 = P_j exactly; a
// square root normalization would not produce projections.
std::vector<OperatorMatrix> clark_projections(BasisPtr basis,
                                              const UnimodularConstant& a);

}  // namespace ttolab
