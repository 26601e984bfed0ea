#include "ttolab/tto.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ttolab {

namespace {

constexpr double kDecayTarget = 1e-11;

int decay_band(double rate, double target) {
  if (rate <= 0.0) return 0;
  return static_cast<int>(std::ceil(std::log(target) / std::log(rate)));
}

double basis_decay(const ModelSpaceBasis& basis) {
  double r = 0.0;
  for (const DiskPoint& z : basis.theta().zeros()) r = std::max(r, z.modulus());
  return r < 1e-14 ? 0.0 : r;
}

}  // namespace

BoundarySymbol::BoundarySymbol()
    : eval_([](Complex) { return Complex(0.0, 0.0); }) {}

BoundarySymbol BoundarySymbol::constant(Complex value) {
  BoundarySymbol s;
  s.eval_ = [value](Complex) { return value; };
  return s;
}

BoundarySymbol BoundarySymbol::analytic_polynomial(std::vector<Complex> coeffs) {
  BoundarySymbol s;
  s.exact_band_ = coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1;
  s.eval_ = [c = std::move(coeffs)](Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  return s;
}

BoundarySymbol BoundarySymbol::trig_polynomial(std::map<int, Complex> coeffs) {
  BoundarySymbol s;
  int band = 0;
  for (const auto& [k, v] : coeffs) band = std::max(band, std::abs(k));
  s.exact_band_ = band;
  s.eval_ = [c = std::move(coeffs)](Complex z) {
    Complex acc(0.0, 0.0);
    for (const auto& [k, v] : c) {
      // On the circle z^{-k} = conj(z)^k.
      acc += v * (k >= 0 ? std::pow(z, k) : std::pow(std::conj(z), -k));
    }
    return acc;
  };
  return s;
}

BoundarySymbol BoundarySymbol::monomial(int power) {
  return trig_polynomial({{power, Complex(1.0, 0.0)}});
}

BoundarySymbol BoundarySymbol::model_function(BasisPtr basis, ModelVector coords) {
  BoundarySymbol s;
  const double r = basis_decay(*basis);
  s.exact_band_ = basis->dimension();
  s.decay_rate_ = r;
  s.eval_ = [basis = std::move(basis), coords = std::move(coords)](Complex z) {
    return basis->eval(coords, z);
  };
  return s;
}

BoundarySymbol BoundarySymbol::conjugated_inner(FiniteBlaschkeProduct theta) {
  BoundarySymbol s;
  double r = 0.0;
  for (const DiskPoint& z : theta.zeros()) r = std::max(r, z.modulus());
  s.exact_band_ = theta.degree();
  s.decay_rate_ = r < 1e-14 ? 0.0 : r;
  s.eval_ = [theta = std::move(theta)](Complex z) {
    return std::conj(theta.eval(z));
  };
  return s;
}

BoundarySymbol BoundarySymbol::rational(std::vector<Complex> num,
                                        std::vector<Complex> den) {
  if (den.empty()) throw std::invalid_argument("rational: empty denominator");
  // Poles must stay away from the circle for the boundary values to make
  // sense; probe the modulus on a fine grid.
  auto eval_poly = [](const std::vector<Complex>& c, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  double den_min = 1e300;
  for (int m = 0; m < 1024; ++m) {
    den_min = std::min(den_min,
                       std::abs(eval_poly(den, unit_circle_point(2.0 * kPi * m / 1024.0))));
  }
  if (den_min < 1e-6) {
    throw std::invalid_argument("rational: denominator nearly vanishes on the circle");
  }
  BoundarySymbol s;
  s.exact_band_ = static_cast<int>(num.size() + den.size());
  // The Fourier tail of the symbol decays geometrically with the rate set by
  // the pole closest to the circle, from either side.
  double rate = 0.0;
  {
    std::vector<Complex> coeffs = den;
    double scale = 0.0;
    for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * scale) {
      coeffs.pop_back();
    }
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg > 0) {
      Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
      for (int j = 1; j < deg; ++j) companion(j, j - 1) = 1.0;
      for (int j = 0; j < deg; ++j) {
        companion(j, deg - 1) = -coeffs[j] / coeffs[deg];
      }
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion);
      for (int j = 0; j < deg; ++j) {
        const double modulus = std::abs(eig.eigenvalues()(j));
        rate = std::max(rate, modulus > 1.0 ? 1.0 / modulus : modulus);
      }
    }
  }
  s.decay_rate_ = rate;
  s.eval_ = [num = std::move(num), den = std::move(den), eval_poly](Complex z) {
    return eval_poly(num, z) / eval_poly(den, z);
  };
  return s;
}

Complex BoundarySymbol::eval(Complex zeta) const { return eval_(zeta); }

BoundarySymbol BoundarySymbol::conjugate() const {
  BoundarySymbol s;
  s.exact_band_ = exact_band_;
  s.decay_rate_ = decay_rate_;
  s.eval_ = [f = eval_](Complex z) { return std::conj(f(z)); };
  return s;
}

BoundarySymbol BoundarySymbol::operator+(const BoundarySymbol& other) const {
  BoundarySymbol s;
  s.exact_band_ = std::max(exact_band_, other.exact_band_);
  s.decay_rate_ = std::max(decay_rate_, other.decay_rate_);
  s.eval_ = [f = eval_, g = other.eval_](Complex z) { return f(z) + g(z); };
  return s;
}

BoundarySymbol BoundarySymbol::operator*(const BoundarySymbol& other) const {
  BoundarySymbol s;
  s.exact_band_ = exact_band_ + other.exact_band_;
  s.decay_rate_ = std::max(decay_rate_, other.decay_rate_);
  s.eval_ = [f = eval_, g = other.eval_](Complex z) { return f(z) * g(z); };
  return s;
}

BoundarySymbol BoundarySymbol::scaled(Complex scale) const {
  BoundarySymbol s;
  s.exact_band_ = exact_band_;
  s.decay_rate_ = decay_rate_;
  s.eval_ = [f = eval_, scale](Complex z) { return scale * f(z); };
  return s;
}

namespace {

void require_same_basis(const BasisPtr& a, const BasisPtr& b, const char* who) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_basis(*b)) {
    throw std::invalid_argument(std::string(who) + ": operator bases do not match");
  }
}

}  // namespace

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
  require_same_basis(source, rhs.target, "OperatorMatrix product");
  return {entries * rhs.entries, rhs.source, target};
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& rhs) const {
  require_same_basis(source, rhs.source, "OperatorMatrix sum");
  require_same_basis(target, rhs.target, "OperatorMatrix sum");
  return {entries + rhs.entries, source, target};
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& rhs) const {
  require_same_basis(source, rhs.source, "OperatorMatrix difference");
  require_same_basis(target, rhs.target, "OperatorMatrix difference");
  return {entries - rhs.entries, source, target};
}

OperatorMatrix OperatorMatrix::scaled(Complex s) const {
  return {s * entries, source, target};
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return {entries.adjoint(), target, source};
}

ModelVector OperatorMatrix::apply(const ModelVector& v) const {
  return entries * v;
}

double OperatorMatrix::norm() const {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(entries);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double OperatorMatrix::max_abs() const {
  return entries.size() == 0 ? 0.0 : entries.cwiseAbs().maxCoeff();
}

Eigen::VectorXcd OperatorMatrix::vectorized() const {
  return Eigen::Map<const Eigen::VectorXcd>(entries.data(), entries.size());
}

OperatorMatrix identity_operator(BasisPtr basis) {
  const int n = basis->dimension();
  return {Eigen::MatrixXcd::Identity(n, n), basis, basis};
}

OperatorMatrix zero_operator(BasisPtr basis) {
  const int n = basis->dimension();
  return {Eigen::MatrixXcd::Zero(n, n), basis, basis};
}

OperatorMatrix rank_one(BasisPtr basis, const ModelVector& u, const ModelVector& v) {
  return {u * v.adjoint(), basis, basis};
}

OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y) {
  return x * y - y * x;
}

OperatorMatrix tto_matrix(BasisPtr basis, const BoundarySymbol& phi) {
  const int n = basis->dimension();
  const int points = basis->quadrature_size();

  // Resolution guard: the integrand phi e_l conj(e_k) occupies the symbol
  // band plus twice the basis band exactly, and any geometric tail aliases
  // with weight rate^(M - exact part).
  const int exact_part = phi.exact_band() + 2 * n;
  if (points <= 2 * exact_part) {
    throw std::invalid_argument(
        "tto_matrix: symbol band " + std::to_string(phi.exact_band()) +
        " requires quadrature size above " + std::to_string(2 * exact_part) +
        ", basis has " + std::to_string(points));
  }
  const double rate = std::max(phi.decay_rate(), basis_decay(*basis));
  if (rate > 0.0 &&
      std::pow(rate, points - 2 * exact_part) > kDecayTarget) {
    const int needed = 2 * exact_part + decay_band(rate, kDecayTarget);
    throw std::invalid_argument(
        "tto_matrix: geometric tail with rate " + std::to_string(rate) +
        " requires quadrature size at least " + std::to_string(needed) +
        ", basis has " + std::to_string(points));
  }

  Eigen::VectorXcd values(points);
  for (int m = 0; m < points; ++m) values(m) = phi.eval(basis->node(m));
  const Eigen::MatrixXcd& s = basis->boundary_samples();
  Eigen::MatrixXcd entries = s.conjugate() * values.asDiagonal() * s.transpose() /
                             static_cast<double>(points);
  return {std::move(entries), basis, basis};
}

bool symbol_equivalent(BasisPtr basis, const BoundarySymbol& phi1,
                       const BoundarySymbol& phi2, double tol) {
  const OperatorMatrix a = tto_matrix(basis, phi1);
  const OperatorMatrix b = tto_matrix(basis, phi2);
  return (a - b).max_abs() <= tol;
}

double coanalytic_eigencheck(BasisPtr basis, const BoundarySymbol& phi) {
  const auto& zeros = basis->theta().zeros();
  const int n = basis->dimension();
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (std::abs(zeros[j].value() - zeros[k].value()) < 1e-8) {
        throw std::invalid_argument(
            "coanalytic_eigencheck: zeros must be distinct");
      }
    }
  }
  const OperatorMatrix op = tto_matrix(basis, phi.conjugate());
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const ModelVector kernel = basis->kernel_coords(zeros[j].value());
    const Complex eigenvalue = std::conj(phi.eval(zeros[j].value()));
    const double residual =
        (op.apply(kernel) - eigenvalue * kernel).norm() / kernel.norm();
    worst = std::max(worst, residual);
  }
  return worst;
}

double nehari_distance(const FiniteBlaschkeProduct& theta,
                       const BoundarySymbol& phi) {
  const int resolution = 4096;
  std::vector<Complex> nodes(resolution), phi_values(resolution), g_values(resolution);
  for (int m = 0; m < resolution; ++m) {
    nodes[m] = unit_circle_point(2.0 * kPi * m / resolution);
    phi_values[m] = phi.eval(nodes[m]);
    g_values[m] = phi_values[m] * std::conj(theta.eval(nodes[m]));
  }
  auto coefficient = [&](const std::vector<Complex>& values, int index) {
    Complex acc(0.0, 0.0);
    for (int m = 0; m < resolution; ++m) {
      acc += values[m] * std::pow(nodes[m], -index);
    }
    return acc / static_cast<double>(resolution);
  };

  // The symbol must be analytic for the distance identity to apply.
  for (int m = 1; m <= 8; ++m) {
    if (std::abs(coefficient(phi_values, -m)) > 1e-10) {
      throw std::invalid_argument(
          "nehari_distance: symbol has antianalytic content at index -" +
          std::to_string(m));
    }
  }

  // Collect the negative coefficients of phi conj(theta) until they fall
  // below 1e-14 for good; they decay geometrically for rational data.
  std::vector<Complex> negative;
  int quiet = 0;
  for (int m = 1; m < resolution / 4; ++m) {
    const Complex c = coefficient(g_values, -m);
    negative.push_back(c);
    quiet = std::abs(c) < 1e-14 ? quiet + 1 : 0;
    if (quiet >= 4) break;
  }
  if (quiet < 4) {
    throw std::runtime_error(
        "nehari_distance: negative coefficients do not decay below 1e-14");
  }

  const int size = static_cast<int>(negative.size());
  Eigen::MatrixXcd hankel = Eigen::MatrixXcd::Zero(size, size);
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k < size; ++k) {
      const int index = j + k;  // coefficient at -(j + k + 1)
      if (index < size) hankel(j, k) = negative[index];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hankel);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

}  // namespace ttolab
