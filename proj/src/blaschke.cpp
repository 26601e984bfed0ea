#include "ttolab/blaschke.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace ttolab {

namespace {

// Coefficients of prod_j (z - r_j), lowest degree first.
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> coeffs{Complex(1.0, 0.0)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= r * coeffs[k];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

// Coefficients of prod_j (1 - conj(z_j) z), lowest degree first.
std::vector<Complex> reflected_poly(const std::vector<DiskPoint>& zeros) {
  std::vector<Complex> coeffs{Complex(1.0, 0.0)};
  for (const DiskPoint& z : zeros) {
    std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k] += coeffs[k];
      next[k + 1] -= std::conj(z.value()) * coeffs[k];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

Complex poly_eval(const std::vector<Complex>& coeffs, Complex z) {
  Complex value(0.0, 0.0);
  for (std::size_t k = coeffs.size(); k-- > 0;) value = value * z + coeffs[k];
  return value;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs) {
  std::vector<Complex> deriv;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    deriv.push_back(static_cast<double>(k) * coeffs[k]);
  }
  if (deriv.empty()) deriv.push_back(Complex(0.0, 0.0));
  return deriv;
}

std::vector<Complex> companion_roots(std::vector<Complex> coeffs) {
  // Trim negligible leading coefficients (deflation).
  double scale = 0.0;
  for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-10 * scale) {
    coeffs.pop_back();
  }
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion);
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

void sort_complex(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

double angle_in_turn(Complex z) {
  double t = std::arg(z);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

// Evaluation point where neither theta nor the candidate zero product is
// likely to vanish; scans a short list of generic disk points.
Complex generic_probe(const std::vector<Complex>& avoid) {
  static const Complex candidates[] = {
      Complex(0.171, 0.313), Complex(-0.427, 0.109), Complex(0.553, -0.231),
      Complex(0.049, 0.613), Complex(-0.317, -0.401)};
  for (const Complex& p : candidates) {
    double sep = 2.0;
    for (const Complex& a : avoid) sep = std::min(sep, std::abs(p - a));
    if (sep > 5e-2) return p;
  }
  return candidates[0];
}

}  // namespace

FiniteBlaschkeProduct::FiniteBlaschkeProduct(UnimodularConstant gamma,
                                             std::vector<DiskPoint> zeros)
    : gamma_(gamma), zeros_(std::move(zeros)) {
  if (zeros_.empty()) {
    throw std::invalid_argument(
        "FiniteBlaschkeProduct: at least one zero is required");
  }
}

FiniteBlaschkeProduct FiniteBlaschkeProduct::monomial(int n) {
  if (n < 1) throw std::invalid_argument("monomial: degree must be positive");
  return FiniteBlaschkeProduct(UnimodularConstant(),
                               std::vector<DiskPoint>(n, DiskPoint()));
}

FiniteBlaschkeProduct FiniteBlaschkeProduct::from_zeros(
    const std::vector<Complex>& zeros, Complex gamma) {
  std::vector<DiskPoint> pts;
  pts.reserve(zeros.size());
  for (const Complex& z : zeros) pts.emplace_back(z);
  return FiniteBlaschkeProduct(UnimodularConstant(gamma), std::move(pts));
}

Complex FiniteBlaschkeProduct::eval(Complex z) const {
  Complex out = gamma_.value();
  for (const DiskPoint& zero : zeros_) out *= blaschke_factor_eval(zero, z);
  return out;
}

Complex FiniteBlaschkeProduct::derivative(Complex z) const {
  // Product rule over the factors; safe at the zeros themselves.
  const int n = degree();
  std::vector<Complex> values(n);
  for (int j = 0; j < n; ++j) values[j] = blaschke_factor_eval(zeros_[j], z);
  Complex out(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    Complex term = blaschke_factor_derivative(zeros_[j], z);
    for (int k = 0; k < n; ++k) {
      if (k != j) term *= values[k];
    }
    out += term;
  }
  return gamma_.value() * out;
}

FiniteBlaschkeProduct FiniteBlaschkeProduct::sharp() const {
  std::vector<DiskPoint> conj_zeros;
  conj_zeros.reserve(zeros_.size());
  for (const DiskPoint& z : zeros_) conj_zeros.emplace_back(std::conj(z.value()));
  return FiniteBlaschkeProduct(gamma_.conj(), std::move(conj_zeros));
}

bool FiniteBlaschkeProduct::same_function(const FiniteBlaschkeProduct& other,
                                          double tol) const {
  if (degree() != other.degree()) return false;
  for (int m = 0; m < 128; ++m) {
    const Complex zeta = unit_circle_point(2.0 * kPi * (m + 0.29) / 128.0);
    if (std::abs(eval(zeta) - other.eval(zeta)) > tol) return false;
  }
  return true;
}

std::vector<Complex> level_set(const FiniteBlaschkeProduct& theta, Complex a) {
  const double am = std::abs(a);
  if (am > 1.0 + kBoundaryMargin) {
    throw std::invalid_argument("level_set: |a| must be at most 1");
  }
  const bool on_circle = am >= 1.0 - kBoundaryMargin;
  if (on_circle) a /= am;

  std::vector<Complex> roots;
  if (am == 0.0) {
    roots.reserve(theta.degree());
    for (const DiskPoint& z : theta.zeros()) roots.push_back(z.value());
    sort_complex(roots);
    return roots;
  }

  // theta(z) = a becomes gamma prod(z - z_j) - a prod(1 - conj(z_j) z) = 0.
  std::vector<Complex> zero_values;
  for (const DiskPoint& z : theta.zeros()) zero_values.push_back(z.value());
  std::vector<Complex> p = poly_from_roots(zero_values);
  for (Complex& c : p) c *= theta.gamma().value();
  const std::vector<Complex> q = reflected_poly(theta.zeros());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] -= a * q[k];

  roots = companion_roots(p);

  // Newton refinement on p.  Companion eigenvalues of an m-fold root form a
  // cluster of radius about eps^(1/m), and the plain update only converges
  // linearly inside it, so the step is scaled by the multiplicity estimate
  // p'^2 / (p'^2 - p p'') to keep quadratic convergence at repeated roots.
  const std::vector<Complex> dp = poly_derivative(p);
  const std::vector<Complex> ddp = poly_derivative(dp);
  for (Complex& r : roots) {
    for (int step = 0; step < 16; ++step) {
      const Complex value = poly_eval(p, r);
      const Complex slope = poly_eval(dp, r);
      if (std::abs(slope) == 0.0) break;
      double multiplicity = 1.0;
      const Complex den = slope * slope - value * poly_eval(ddp, r);
      if (std::abs(den) > 0.0) {
        const double estimate = std::round((slope * slope / den).real());
        if (estimate > 1.0 && estimate <= static_cast<double>(theta.degree())) {
          multiplicity = estimate;
        }
      }
      Complex next = r - multiplicity * value / slope;
      if (std::abs(poly_eval(p, next)) > std::abs(value)) {
        next = r - value / slope;
        if (std::abs(poly_eval(p, next)) > std::abs(value)) break;
      }
      const double moved = std::abs(next - r);
      r = next;
      if (moved < 1e-15 * std::max(1.0, std::abs(r))) break;
    }
    if (on_circle && std::abs(std::abs(r) - 1.0) < 1e-8) r /= std::abs(r);
  }

  if (static_cast<int>(roots.size()) != theta.degree()) {
    throw std::runtime_error("level_set: expected " +
                             std::to_string(theta.degree()) + " solutions, got " +
                             std::to_string(roots.size()));
  }
  for (const Complex& r : roots) {
    if (std::abs(theta.eval(r) - a) > 1e-9) {
      throw std::runtime_error("level_set: root refinement failed, residual " +
                               std::to_string(std::abs(theta.eval(r) - a)));
    }
  }
  sort_complex(roots);
  return roots;
}

double ClarkMeasure::total_mass() const {
  double m = 0.0;
  for (const Atom& atom : atoms) m += atom.weight;
  return m;
}

ClarkMeasure clark_measure(const FiniteBlaschkeProduct& theta,
                           const UnimodularConstant& a) {
  ClarkMeasure mu;
  mu.parameter = a;
  for (const Complex& zeta : level_set(theta, a.value())) {
    const double dtheta = std::abs(theta.derivative(zeta));
    if (dtheta < 1e-14) {
      throw std::runtime_error("clark_measure: vanishing boundary derivative");
    }
    mu.atoms.push_back({zeta, 1.0 / dtheta});
  }
  std::sort(mu.atoms.begin(), mu.atoms.end(),
            [](const ClarkMeasure::Atom& x, const ClarkMeasure::Atom& y) {
              return angle_in_turn(x.location) < angle_in_turn(y.location);
            });
  return mu;
}

namespace {

FiniteBlaschkeProduct reassemble(const std::vector<Complex>& zeros,
                                 const std::function<Complex(Complex)>& target,
                                 const std::string& who) {
  std::vector<DiskPoint> pts;
  pts.reserve(zeros.size());
  for (const Complex& z : zeros) pts.emplace_back(z);

  const Complex probe = generic_probe(zeros);
  Complex prod(1.0, 0.0);
  for (const DiskPoint& z : pts) prod *= blaschke_factor_eval(z, probe);
  if (std::abs(prod) < 1e-8) {
    throw std::runtime_error(who + ": degenerate probe for constant recovery");
  }
  const Complex gamma = target(probe) / prod;

  FiniteBlaschkeProduct out(UnimodularConstant(gamma), std::move(pts));
  double residual = 0.0;
  for (int m = 0; m < 64; ++m) {
    const Complex zeta = unit_circle_point(2.0 * kPi * (m + 0.41) / 64.0);
    residual = std::max(residual, std::abs(out.eval(zeta) - target(zeta)));
  }
  if (residual > 1e-10) {
    throw std::runtime_error(who + ": front constant residual " +
                             std::to_string(residual) + " exceeds 1e-10");
  }
  return out;
}

}  // namespace

FiniteBlaschkeProduct post_compose(const FiniteBlaschkeProduct& theta,
                                   const MoebiusAutomorphism& phi) {
  // Zeros of phi(theta) are the preimages of the zero c of phi.
  const std::vector<Complex> zeros = level_set(theta, phi.c().value());
  return reassemble(zeros, [&](Complex z) { return phi.eval(theta.eval(z)); },
                    "post_compose");
}

FiniteBlaschkeProduct pre_compose(const FiniteBlaschkeProduct& theta,
                                  const MoebiusAutomorphism& psi) {
  const MoebiusAutomorphism inv = psi.inverse();
  std::vector<Complex> zeros;
  zeros.reserve(theta.zeros().size());
  for (const DiskPoint& z : theta.zeros()) zeros.push_back(inv.eval(z.value()));
  return reassemble(zeros, [&](Complex z) { return theta.eval(psi.eval(z)); },
                    "pre_compose");
}

namespace {

bool multiset_match(const std::vector<Complex>& left,
                    const std::vector<Complex>& right, double tol) {
  if (left.size() != right.size()) return false;
  std::vector<bool> used(right.size(), false);
  for (const Complex& x : left) {
    bool found = false;
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (!used[j] && std::abs(x - right[j]) <= tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<RotationalSymmetry> rotational_symmetry(
    const FiniteBlaschkeProduct& theta, double tol) {
  const int n = theta.degree();
  std::vector<Complex> zeros;
  for (const DiskPoint& z : theta.zeros()) zeros.push_back(z.value());

  std::vector<Complex> candidates;
  auto push_candidate = [&](Complex u) {
    for (const Complex& seen : candidates) {
      if (std::abs(seen - u) <= tol) return;
    }
    candidates.push_back(u);
  };
  for (int p = 1; p <= n; ++p) {
    for (int k = 0; k < p; ++k) push_candidate(unit_circle_point(2.0 * kPi * k / p));
  }
  for (const Complex& zj : zeros) {
    for (const Complex& zk : zeros) {
      if (std::abs(zj) > tol && std::abs(std::abs(zj) - std::abs(zk)) <= tol) {
        push_candidate(zk / zj);
      }
    }
  }

  const Complex probe = generic_probe(zeros);
  std::vector<RotationalSymmetry> found;
  for (const Complex& u : candidates) {
    std::vector<Complex> rotated;
    rotated.reserve(zeros.size());
    for (const Complex& z : zeros) rotated.push_back(std::conj(u) * z);
    if (!multiset_match(rotated, zeros, 10.0 * tol)) continue;

    const Complex tv = theta.eval(probe);
    if (std::abs(tv) < 1e-8) continue;
    const Complex v = theta.eval(u * probe) / tv;
    double residual = 0.0;
    for (int m = 0; m < 32; ++m) {
      const Complex z = 0.75 * unit_circle_point(2.0 * kPi * (m + 0.17) / 32.0);
      residual = std::max(residual, std::abs(theta.eval(u * z) - v * theta.eval(z)));
    }
    if (residual <= tol) {
      found.push_back({UnimodularConstant(u), UnimodularConstant(v)});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const RotationalSymmetry& x, const RotationalSymmetry& y) {
              return angle_in_turn(x.u.value()) < angle_in_turn(y.u.value());
            });
  return found;
}

std::optional<UnimodularConstant> same_argument_zeros(
    const FiniteBlaschkeProduct& theta, double tol) {
  std::optional<double> axis;  // common argument reduced modulo pi
  for (const DiskPoint& z : theta.zeros()) {
    if (z.modulus() <= tol) continue;  // zeros at the origin fit any line
    double t = std::arg(z.value());
    while (t < 0.0) t += kPi;
    while (t >= kPi) t -= kPi;
    if (!axis) {
      axis = t;
      continue;
    }
    double diff = std::abs(t - *axis);
    diff = std::min(diff, kPi - diff);
    if (diff > tol) return std::nullopt;
  }
  return UnimodularConstant(unit_circle_point(axis.value_or(0.0)));
}

}  // namespace ttolab
