#pragma once

#include <array>

#include "ttolab/tto.hpp"

namespace ttolab {

// Unitary identification of one model space with another, stored as its
// matrix between the two bases together with the defining parameter.  All
// three kinds are complex linear; the conjugations appearing in the sharp
// boundary formula act on the argument of the function, not on the function.
struct SpatialUnitary {
  enum class Kind { Crofoot, Composition, Sharp };

  Kind kind;
  OperatorMatrix matrix;
  DiskPoint crofoot_parameter;  // set for Kind::Crofoot
  MoebiusAutomorphism psi;      // set for Kind::Composition

  const BasisPtr& source() const { return matrix.source; }
  const BasisPtr& target() const { return matrix.target; }

  // m -> U m U*, carrying operators on the source space to operators on the
  // target space.
  OperatorMatrix conjugate(const OperatorMatrix& m) const;
};

// Multiplication by sqrt(1 - |a|^2) / (1 - conj(a) theta), mapping the space
// of theta onto the space of b_a composed with theta.
SpatialUnitary crofoot_transform(const BasisPtr& basis, const DiskPoint& a);

// f -> sqrt(psi') (f compose psi), mapping the space of theta onto the space
// of theta compose psi.  With psi = lambda b_c the square root branch is
// fixed as sqrt(lambda) sqrt(1 - |c|^2) / (1 - conj(c) z) with the principal
// root of lambda, so the matrix is determined up to no further choices.
SpatialUnitary composition_unitary(const BasisPtr& basis,
                                   const MoebiusAutomorphism& psi);

// Boundary formula f -> conj(z) f(conj(z)) theta#(z), mapping the space of
// theta onto the space of theta#.  Sends the kernel at lambda to the
// conjugated kernel of theta# at conj(lambda).
SpatialUnitary sharp_unitary(const BasisPtr& basis);

// Parameter map induced on Sedlock algebras: conjugation by the unitary
// carries the algebra at a to the algebra at the returned parameter over the
// target space.  Crofoot with parameter c sends a to ell(c, a), composition
// fixes a, sharp sends a to 1/a.
ExtendedParameter lambda_image(const SpatialUnitary& u,
                               const ExtendedParameter& a);

// Operator norm residuals of the seven word identities, in order:
//
//   0: U_b U_a = (|1 + conj(b) a| / (1 + conj(b) a)) U_{(a+b)/(1+b conj(a))}
//   1: U_a* = U_{-a}
//   2: U_phi U_psi = U_{psi o phi}
//   3: U_psi* = U_{psi^{-1}}
//   4: U_psi U_b = U_b U_psi
//   5: U_# U_a = U_{conj(a)} U_#
//   6: U_# U_psi = U_{psi#} U_#
//
// Matching target bases are aligned by a change of basis where the two sides
// land in differently ordered zero lists.  Identities 2, 3 and 6 compare two
// independently chosen square root branches and therefore hold only up to a
// sign; those residuals take the better of the two signs.
std::array<double, 7> word_relation_residuals(const BasisPtr& basis,
                                              const DiskPoint& a,
                                              const DiskPoint& b,
                                              const MoebiusAutomorphism& psi,
                                              const MoebiusAutomorphism& phi);

}  // namespace ttolab
