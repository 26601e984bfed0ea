#pragma once

#include <utility>

#include "ttolab/core.hpp"

namespace ttolab {

// Point of the open unit disk.  Construction rejects values whose modulus
// reaches 1 - margin, so downstream formulas may divide by 1 - |a|^2 and by
// 1 - conj(a) z for |z| <= 1 without further checks.
class DiskPoint {
 public:
  DiskPoint() : value_(0.0, 0.0) {}
  explicit DiskPoint(Complex value, double margin = kBoundaryMargin);

  Complex value() const { return value_; }
  double modulus() const { return std::abs(value_); }

 private:
  Complex value_;
};

// Unimodular constant.  Input must be within kUnimodularSlack of the unit
// circle; the stored value is renormalized to unit modulus.
class UnimodularConstant {
 public:
  UnimodularConstant() : value_(1.0, 0.0) {}
  explicit UnimodularConstant(Complex value);
  static UnimodularConstant from_angle(double angle) {
    return UnimodularConstant(unit_circle_point(angle));
  }

  Complex value() const { return value_; }
  UnimodularConstant conj() const { return UnimodularConstant(std::conj(value_)); }

 private:
  Complex value_;
};

// Evaluates the disk automorphism factor b_a(z) = (z - a) / (1 - conj(a) z).
Complex blaschke_factor_eval(const DiskPoint& a, Complex z);

// Derivative of b_a, equal to (1 - |a|^2) / (1 - conj(a) z)^2.
Complex blaschke_factor_derivative(const DiskPoint& a, Complex z);

// Disk automorphism in the canonical form psi(z) = lambda * b_c(z).
class MoebiusAutomorphism {
 public:
  MoebiusAutomorphism() = default;
  MoebiusAutomorphism(UnimodularConstant lambda, DiskPoint c)
      : lambda_(lambda), c_(c) {}

  static MoebiusAutomorphism identity() { return MoebiusAutomorphism(); }
  static MoebiusAutomorphism rotation(UnimodularConstant lambda) {
    return MoebiusAutomorphism(lambda, DiskPoint());
  }
  static MoebiusAutomorphism blaschke_factor(DiskPoint c) {
    return MoebiusAutomorphism(UnimodularConstant(), c);
  }

  UnimodularConstant lambda() const { return lambda_; }
  DiskPoint c() const { return c_; }

  Complex eval(Complex z) const {
    return lambda_.value() * blaschke_factor_eval(c_, z);
  }
  Complex derivative(Complex z) const {
    return lambda_.value() * blaschke_factor_derivative(c_, z);
  }

  MoebiusAutomorphism inverse() const;
  // Composition (*this) after other, again in canonical form.
  MoebiusAutomorphism compose(const MoebiusAutomorphism& other) const;
  // psi#(z) = conj(psi(conj(z))), the coefficient-conjugated automorphism.
  MoebiusAutomorphism sharp() const;

  bool is_identity(double tol = kParamTol) const {
    return std::abs(lambda_.value() - 1.0) <= tol && c_.modulus() <= tol;
  }
  // Deviation from identity, used to tell nontrivial symmetries apart from
  // numeric noise around the identity.
  double identity_distance() const {
    return std::abs(lambda_.value() - 1.0) + c_.modulus();
  }
  bool approx_equal(const MoebiusAutomorphism& other, double tol = kParamTol) const {
    return std::abs(lambda_.value() - other.lambda_.value()) <= tol &&
           std::abs(c_.value() - other.c_.value()) <= tol;
  }

 private:
  UnimodularConstant lambda_;
  DiskPoint c_;
};

// Parameter on the Riemann sphere, classified against the unit circle.
// Values within kBoundaryMargin of the circle are snapped onto it.
class ExtendedParameter {
 public:
  enum class Kind { Disk, Circle, Exterior, Infinity };

  ExtendedParameter() : kind_(Kind::Disk), value_(0.0, 0.0) {}
  static ExtendedParameter classify(Complex value, double margin = kBoundaryMargin);
  static ExtendedParameter infinity();

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::Infinity; }
  bool on_circle() const { return kind_ == Kind::Circle; }
  bool in_disk() const { return kind_ == Kind::Disk; }
  // Finite numeric value; throws for the point at infinity.
  Complex value() const;
  double modulus() const;

  // a -> 1 / conj(a).  Fixes the circle pointwise and swaps disk with
  // exterior; 0 and infinity exchange.
  ExtendedParameter conj_flip() const;
  // a -> 1 / a.  Swaps disk with exterior; on the circle this is conjugation.
  ExtendedParameter reciprocal() const;

  bool approx_equal(const ExtendedParameter& other, double tol = kParamTol) const;

 private:
  ExtendedParameter(Kind kind, Complex value) : kind_(kind), value_(value) {}

  Kind kind_;
  Complex value_;
};

// Canonical form of the factor composition b_a(b_c(z)) = u * b_d(z).
// Returns the pair (u, d).
std::pair<UnimodularConstant, DiskPoint> compose_factors(const DiskPoint& a,
                                                         const DiskPoint& c);

// Rotation pulled through a factor: b_a(zeta z) = zeta * b_{a conj(zeta)}(z).
// Returns (zeta, a conj(zeta)).
std::pair<UnimodularConstant, DiskPoint> rotate_inside_factor(
    const DiskPoint& a, const UnimodularConstant& zeta);

// The factor b_c extended to the Riemann sphere.  The pole 1 / conj(c) maps
// to infinity and infinity maps to -1 / conj(c); each of disk, circle and
// exterior is preserved as a class.
ExtendedParameter ell(const DiskPoint& c, const ExtendedParameter& a);

// Applies psi = lambda * b_c to a sphere parameter, with the same pole and
// infinity conventions as ell.
ExtendedParameter apply_extended(const MoebiusAutomorphism& psi,
                                 const ExtendedParameter& a);

// Canonical form of b_{-a}(zeta * b_{a'}(z)) = mu * b_d(z), returned as the
// automorphism with lambda = mu and c = d.
MoebiusAutomorphism twisted_composition(const DiskPoint& a,
                                        const DiskPoint& a_prime,
                                        const UnimodularConstant& zeta);

// Inverse of twisted_composition in its second and third arguments: given a
// and an automorphism psi, finds the unique (zeta, a') with
// psi = b_{-a}(zeta * b_{a'}).  The result is validated by reassembling psi;
// residual above 1e-12 on disk samples raises std::runtime_error.
std::pair<UnimodularConstant, DiskPoint> decompose_with_prefix(
    const DiskPoint& a, const MoebiusAutomorphism& psi);

// Automorphism c -> conj(mu) (c + d mu) / (1 + c conj(mu d)) built from the
// canonical form mu * b_d of b_{-a}(zeta * b_{a'}).  It moves a to a'.
MoebiusAutomorphism orbit_automorphism(const DiskPoint& a,
                                       const DiskPoint& a_prime,
                                       const UnimodularConstant& zeta);

// a -> 1 / conj(a) on the sphere.
ExtendedParameter conj_flip(const ExtendedParameter& a);

}  // namespace ttolab
