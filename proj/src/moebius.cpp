#include "ttolab/moebius.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ttolab {

namespace {

[[noreturn]] void throw_domain(const std::string& what) {
  throw std::domain_error(what);
}

}  // namespace

DiskPoint::DiskPoint(Complex value, double margin) : value_(value) {
  if (!(std::abs(value) < 1.0 - margin)) {
    throw_domain("DiskPoint: modulus " + std::to_string(std::abs(value)) +
                 " is not strictly inside the unit disk");
  }
}

UnimodularConstant::UnimodularConstant(Complex value) {
  const double m = std::abs(value);
  if (std::abs(m - 1.0) > kUnimodularSlack) {
    throw_domain("UnimodularConstant: modulus " + std::to_string(m) +
                 " deviates from 1 beyond tolerance");
  }
  value_ = value / m;
}

Complex blaschke_factor_eval(const DiskPoint& a, Complex z) {
  const Complex den = 1.0 - std::conj(a.value()) * z;
  if (std::abs(den) < 1e-300) {
    throw_domain("blaschke_factor_eval: evaluation at the pole 1/conj(a)");
  }
  return (z - a.value()) / den;
}

Complex blaschke_factor_derivative(const DiskPoint& a, Complex z) {
  const Complex den = 1.0 - std::conj(a.value()) * z;
  if (std::abs(den) < 1e-300) {
    throw_domain("blaschke_factor_derivative: evaluation at the pole 1/conj(a)");
  }
  return (1.0 - std::norm(a.value())) / (den * den);
}

MoebiusAutomorphism MoebiusAutomorphism::inverse() const {
  // psi(z) = lambda b_c(z) inverts to z = b_{-c}(conj(lambda) w), and pulling
  // the rotation through the factor gives conj(lambda) * b_{-c lambda}(w).
  const Complex lam = lambda_.value();
  return MoebiusAutomorphism(UnimodularConstant(std::conj(lam)),
                             DiskPoint(-c_.value() * lam));
}

MoebiusAutomorphism MoebiusAutomorphism::compose(
    const MoebiusAutomorphism& other) const {
  // lambda1 b_{c1}(lambda2 b_{c2}(z)): first pull lambda2 through b_{c1},
  // then merge the two factors into canonical form.
  const Complex lam1 = lambda_.value();
  const Complex lam2 = other.lambda_.value();
  const DiskPoint c1_rot(c_.value() * std::conj(lam2));
  const auto [u, d] = compose_factors(c1_rot, other.c_);
  return MoebiusAutomorphism(UnimodularConstant(lam1 * lam2 * u.value()), d);
}

MoebiusAutomorphism MoebiusAutomorphism::sharp() const {
  return MoebiusAutomorphism(lambda_.conj(), DiskPoint(std::conj(c_.value())));
}

ExtendedParameter ExtendedParameter::classify(Complex value, double margin) {
  const double m = std::abs(value);
  if (m < 1.0 - margin) return ExtendedParameter(Kind::Disk, value);
  if (m <= 1.0 + margin) return ExtendedParameter(Kind::Circle, value / m);
  return ExtendedParameter(Kind::Exterior, value);
}

ExtendedParameter ExtendedParameter::infinity() {
  return ExtendedParameter(Kind::Infinity, Complex(0.0, 0.0));
}

Complex ExtendedParameter::value() const {
  if (kind_ == Kind::Infinity) {
    throw_domain("ExtendedParameter: the point at infinity has no finite value");
  }
  return value_;
}

double ExtendedParameter::modulus() const {
  if (kind_ == Kind::Infinity) return std::numeric_limits<double>::infinity();
  return std::abs(value_);
}

ExtendedParameter ExtendedParameter::conj_flip() const {
  switch (kind_) {
    case Kind::Infinity:
      return ExtendedParameter(Kind::Disk, Complex(0.0, 0.0));
    case Kind::Circle:
      // 1 / conj(u) = u on the circle.
      return *this;
    default:
      if (std::abs(value_) == 0.0) return infinity();
      return classify(1.0 / std::conj(value_));
  }
}

ExtendedParameter ExtendedParameter::reciprocal() const {
  switch (kind_) {
    case Kind::Infinity:
      return ExtendedParameter(Kind::Disk, Complex(0.0, 0.0));
    default:
      if (std::abs(value_) == 0.0) return infinity();
      return classify(1.0 / value_);
  }
}

bool ExtendedParameter::approx_equal(const ExtendedParameter& other,
                                     double tol) const {
  if (kind_ == Kind::Infinity || other.kind_ == Kind::Infinity) {
    return kind_ == other.kind_;
  }
  return kind_ == other.kind_ && std::abs(value_ - other.value_) <= tol;
}

std::pair<UnimodularConstant, DiskPoint> compose_factors(const DiskPoint& a,
                                                         const DiskPoint& c) {
  const Complex av = a.value();
  const Complex cv = c.value();
  const Complex num = 1.0 + av * std::conj(cv);
  const Complex u = num / (1.0 + std::conj(av) * cv);
  const Complex d = (av + cv) / num;
  return {UnimodularConstant(u), DiskPoint(d)};
}

std::pair<UnimodularConstant, DiskPoint> rotate_inside_factor(
    const DiskPoint& a, const UnimodularConstant& zeta) {
  return {zeta, DiskPoint(a.value() * std::conj(zeta.value()))};
}

ExtendedParameter ell(const DiskPoint& c, const ExtendedParameter& a) {
  return apply_extended(MoebiusAutomorphism::blaschke_factor(c), a);
}

ExtendedParameter apply_extended(const MoebiusAutomorphism& psi,
                                 const ExtendedParameter& a) {
  const Complex lam = psi.lambda().value();
  const Complex cv = psi.c().value();
  if (a.is_infinite()) {
    if (std::abs(cv) == 0.0) return ExtendedParameter::infinity();
    return ExtendedParameter::classify(-lam / std::conj(cv));
  }
  const Complex v = a.value();
  const Complex den = 1.0 - std::conj(cv) * v;
  if (std::abs(den) < 1e-300) return ExtendedParameter::infinity();
  return ExtendedParameter::classify(lam * (v - cv) / den);
}

MoebiusAutomorphism twisted_composition(const DiskPoint& a,
                                        const DiskPoint& a_prime,
                                        const UnimodularConstant& zeta) {
  const Complex av = a.value();
  const Complex pv = a_prime.value();
  const Complex zv = zeta.value();
  const Complex top = zv - av * std::conj(pv);
  const Complex mu = top / (1.0 - std::conj(av) * pv * zv);
  const Complex d = (zv * pv - av) / top;
  return MoebiusAutomorphism(UnimodularConstant(mu), DiskPoint(d));
}

std::pair<UnimodularConstant, DiskPoint> decompose_with_prefix(
    const DiskPoint& a, const MoebiusAutomorphism& psi) {
  const Complex av = a.value();
  const Complex lam = psi.lambda().value();
  const Complex cv = psi.c().value();
  const Complex zeta =
      lam * (1.0 + av * std::conj(lam) * std::conj(cv)) /
      (1.0 + std::conj(av) * lam * cv);
  const Complex a_prime = (av * std::conj(lam) + cv) /
                          (1.0 + std::conj(cv) * av * std::conj(lam));
  const UnimodularConstant z_out(zeta);
  const DiskPoint p_out(a_prime);

  // Reassemble and compare against psi on a few disk samples.
  const MoebiusAutomorphism rebuilt = twisted_composition(a, p_out, z_out);
  double residual = 0.0;
  for (int k = 0; k < 8; ++k) {
    const Complex z = 0.7 * unit_circle_point(2.0 * kPi * (k + 0.3) / 8.0);
    residual = std::max(residual, std::abs(rebuilt.eval(z) - psi.eval(z)));
  }
  if (residual > 1e-12) {
    throw std::runtime_error(
        "decompose_with_prefix: reassembly residual " +
        std::to_string(residual) + " exceeds 1e-12");
  }
  return {z_out, p_out};
}

MoebiusAutomorphism orbit_automorphism(const DiskPoint& a,
                                       const DiskPoint& a_prime,
                                       const UnimodularConstant& zeta) {
  const MoebiusAutomorphism md = twisted_composition(a, a_prime, zeta);
  const Complex mu = md.lambda().value();
  const Complex d = md.c().value();
  // conj(mu) (c + d mu) / (1 + c conj(d mu)) = conj(mu) * b_{-d mu}(c).
  return MoebiusAutomorphism(UnimodularConstant(std::conj(mu)),
                             DiskPoint(-d * mu));
}

ExtendedParameter conj_flip(const ExtendedParameter& a) { return a.conj_flip(); }

}  // namespace ttolab
