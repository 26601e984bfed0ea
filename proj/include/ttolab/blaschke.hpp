#pragma once

#include <optional>
#include <vector>

#include "ttolab/moebius.hpp"

namespace ttolab {

// Finite product gamma * b_{z_1} * ... * b_{z_n} with all zeros strictly
// inside the unit disk.  The function has unit modulus on the circle and
// winds around it exactly n times.
class FiniteBlaschkeProduct {
 public:
  FiniteBlaschkeProduct(UnimodularConstant gamma, std::vector<DiskPoint> zeros);

  // z^n, the product with an n-fold zero at the origin.
  static FiniteBlaschkeProduct monomial(int n);
  static FiniteBlaschkeProduct from_zeros(const std::vector<Complex>& zeros,
                                          Complex gamma = Complex(1.0, 0.0));

  int degree() const { return static_cast<int>(zeros_.size()); }
  const std::vector<DiskPoint>& zeros() const { return zeros_; }
  UnimodularConstant gamma() const { return gamma_; }

  Complex eval(Complex z) const;
  Complex derivative(Complex z) const;

  // conj(theta(conj(z))), the product with conjugated zeros and constant.
  FiniteBlaschkeProduct sharp() const;

  // Pointwise comparison over circle samples.
  bool same_function(const FiniteBlaschkeProduct& other, double tol = 1e-9) const;

 private:
  UnimodularConstant gamma_;
  std::vector<DiskPoint> zeros_;
};

// All n solutions of theta(z) = a for |a| <= 1, sorted by real then imaginary
// part.  Roots come from the companion matrix of the difference polynomial
// and are refined by Newton steps; for unimodular a they are snapped onto the
// circle.  Repeated solutions appear with multiplicity.
std::vector<Complex> level_set(const FiniteBlaschkeProduct& theta, Complex a);

// Discrete measure with one atom per solution of theta = a on the circle.
struct ClarkMeasure {
  struct Atom {
    Complex location;  // unimodular
    double weight;     // 1 / |theta'(location)|
  };

  UnimodularConstant parameter;
  std::vector<Atom> atoms;  // sorted by argument of the location

  double total_mass() const;
};

ClarkMeasure clark_measure(const FiniteBlaschkeProduct& theta,
                           const UnimodularConstant& a);

// Composition phi(theta(z)) for a disk automorphism phi, reassembled into
// zero list plus front constant form.  Throws std::runtime_error when the
// recovered constant fails the pointwise residual check.
FiniteBlaschkeProduct post_compose(const FiniteBlaschkeProduct& theta,
                                   const MoebiusAutomorphism& phi);

// Composition theta(psi(z)) for a disk automorphism psi.
FiniteBlaschkeProduct pre_compose(const FiniteBlaschkeProduct& theta,
                                  const MoebiusAutomorphism& psi);

// Rotation symmetry theta(u z) = v theta(z).  Candidates for u are roots of
// unity up to the degree and ratios of equal modulus zeros; each verified
// candidate is reported with its partner v.  The identity pair (1, 1) is
// always present.
struct RotationalSymmetry {
  UnimodularConstant u;
  UnimodularConstant v;
};

std::vector<RotationalSymmetry> rotational_symmetry(
    const FiniteBlaschkeProduct& theta, double tol = 1e-9);

// When every zero lies on one line through the origin, returns the unimodular
// v for which theta(v z) has all zeros real; otherwise std::nullopt.
std::optional<UnimodularConstant> same_argument_zeros(
    const FiniteBlaschkeProduct& theta, double tol = 1e-9);

}  // namespace ttolab
