#pragma once

#include <optional>
#include <string>

#include "ttolab/sedlock.hpp"
#include "ttolab/unitaries.hpp"

namespace ttolab {

// Question: are the multiplier algebras at (theta1, a1) and (theta2, a2)
// carried onto each other by a unitary between the two model spaces?
struct IsoQuery {
  FiniteBlaschkeProduct theta1;
  ExtendedParameter a1;
  FiniteBlaschkeProduct theta2;
  ExtendedParameter a2;
};

// Solution of the defining functional equation
//
//   T1 = b_{-a1}(zeta b_{a2}) o T2 o psi
//
// where T_i is theta_i itself when the parameter lies in the disk and the
// reflection theta_i# with parameter 1/a_i when it lies outside the closed
// disk (sharp_i records which).  residual is the largest equation error over
// fresh circle samples.
struct MoebiusWitness {
  UnimodularConstant zeta;
  MoebiusAutomorphism psi;
  double residual = 0.0;
  bool sharp1 = false;
  bool sharp2 = false;
};

// Three valued outcome.  NotEquivalent is only ever produced together with an
// algebraic obstruction named in `reason`; a failed search alone yields
// Undetermined.  Reason codes:
//
//   clark-kappa          circle parameters, atom count invariant
//   normal-vs-nonnormal  circle against non circle parameter
//   degree-mismatch      different degrees off the circle
//   modulus-invariant    monomial law |a1| != |a2|
//   rigid-theta          same function, distinct parameters, rigid symmetry
//   monomial-law         equivalent by the closed monomial identity
//   functional-equation  equivalent through the numerical search
//   search-exhausted     undetermined, all starts converged above threshold
struct IsoDecision {
  enum class Verdict { Equivalent, NotEquivalent, Undetermined };

  Verdict verdict = Verdict::Undetermined;
  std::optional<MoebiusWitness> witness;
  std::string reason;
  double best_residual = 0.0;
  int starts_used = 0;
};

// Search controls.  The start grid and simplex schedule are deterministic,
// so decisions are reproducible bit for bit.
struct DeciderOptions {
  double tol_accept = 1e-8;
  double tol_reject = 1e-3;
  int equation_samples = 64;
  int grid_angles = 8;                 // starts per angular parameter
  std::vector<double> grid_offsets = {-0.6, -0.3, 0.0, 0.3, 0.6};
  int max_iterations = 500;
  double convergence_tol = 1e-12;
};

// Atom count invariant of a discrete measure; two circle parameter algebras
// are equivalent exactly when the invariants agree.
struct KappaInvariant {
  int continuous_components = 0;
  int atom_count = 0;

  bool operator==(const KappaInvariant& other) const {
    return continuous_components == other.continuous_components &&
           atom_count == other.atom_count;
  }
};

KappaInvariant kappa(const ClarkMeasure& measure);

// Whether theta admits no Moebius symmetry linking it to itself or to its
// reflection theta#.  For the plain equation phi o theta = theta o psi only
// solutions with phi away from the identity count, since (id, id) always
// solves it; for the reflected equation phi o theta = theta# o psi every
// solution counts, because already phi = psi = id would be a genuine
// conjugation symmetry.  Rigid means every start of both searches converged
// well above the rejection threshold; NotRigid means a symmetry was found
// and verified; Unknown covers the gap.
enum class Rigidity { Rigid, NotRigid, Unknown };

Rigidity rigidity_check(const FiniteBlaschkeProduct& theta,
                        const DeciderOptions& options = {});

// Multistart simplex search for the disk form of the functional equation.
// Requires equal degrees.  Monomial inputs of degree at least two short
// circuit through the closed identity and its modulus obstruction; otherwise
// the search returns Equivalent with a verified witness or Undetermined.
IsoDecision functional_equation_solve(const FiniteBlaschkeProduct& theta1,
                                      const FiniteBlaschkeProduct& theta2,
                                      const DiskPoint& a1, const DiskPoint& a2,
                                      const DeciderOptions& options = {});

// Full case analysis: circle pairs through the atom count invariant, mixed
// classes rejected, parameters outside the closed disk reduced through the
// reflection, degrees compared, then the functional equation search with a
// rigidity fallback for same function queries.
IsoDecision decide(const IsoQuery& query, const DeciderOptions& options = {});

// Largest functional equation error of the witness over fresh circle
// samples, at sample points distinct from the ones the search optimized.
double witness_equation_residual(const IsoQuery& query,
                                 const MoebiusWitness& witness,
                                 int samples = 256);

// Realizes the witness as the unitary chain Crofoot(a1), change of space,
// inverse composition, inverse Crofoot(a2) and reports the span gap between
// the conjugated source algebra and the target algebra.
double witness_span_residual(const IsoQuery& query,
                             const MoebiusWitness& witness);

// Witness for the concatenated query, from witnesses of the two legs.  The
// middle reductions must agree; the residual field is the larger input
// residual and should be re checked with witness_equation_residual.
MoebiusWitness compose_witnesses(const MoebiusWitness& first,
                                 const MoebiusWitness& second);

}  // namespace ttolab
