#include "ttolab/sedlock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ttolab {

namespace {

std::vector<Complex> simple_level_set(const FiniteBlaschkeProduct& theta,
                                      Complex a, const char* who) {
  const std::vector<Complex> points = level_set(theta, a);
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t k = j + 1; k < points.size(); ++k) {
      if (std::abs(points[j] - points[k]) < 1e-8) {
        throw std::invalid_argument(std::string(who) +
                                    ": the level set has a repeated point");
      }
    }
  }
  return points;
}

}  // namespace

OperatorMatrix sedlock_generator(BasisPtr basis, const ExtendedParameter& a) {
  if (a.is_infinite() || a.kind() == ExtendedParameter::Kind::Exterior) {
    return sedlock_generator(basis, a.conj_flip()).adjoint();
  }
  const Complex av = a.value();
  const Complex t0 = basis->theta().eval(Complex(0.0, 0.0));
  const Complex weight = av / (1.0 - std::conj(t0) * av);
  const OperatorMatrix shift = tto_matrix(basis, BoundarySymbol::monomial(1));
  const ModelVector k0 = basis->kernel_coords(Complex(0.0, 0.0));
  const ModelVector ck0 = basis->conjugate_kernel_coords(Complex(0.0, 0.0));
  return shift + rank_one(basis, k0, ck0).scaled(weight);
}

SedlockAlgebra sedlock_algebra(BasisPtr basis, const ExtendedParameter& a) {
  const int n = basis->dimension();
  const OperatorMatrix generator = sedlock_generator(basis, a);

  Eigen::MatrixXcd powers(n * n, n);
  OperatorMatrix current = identity_operator(basis);
  for (int j = 0; j < n; ++j) {
    powers.col(j) = current.vectorized();
    if (j + 1 < n) current = generator * current;
  }

  const Eigen::MatrixXcd span = orthonormal_span(powers);
  if (span.cols() != n) {
    throw std::runtime_error(
        "sedlock_algebra: power basis is rank deficient (" +
        std::to_string(span.cols()) + " of " + std::to_string(n) +
        "); the generator is derogatory");
  }

  SedlockAlgebra algebra;
  algebra.basis = basis;
  algebra.parameter = a;
  algebra.span = span;
  algebra.elements.reserve(n);
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd entries =
        Eigen::Map<const Eigen::MatrixXcd>(span.col(j).data(), n, n);
    algebra.elements.push_back({entries, basis, basis});
  }
  return algebra;
}

std::vector<OperatorMatrix> commutant(const OperatorMatrix& m) {
  const int n = static_cast<int>(m.entries.rows());
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);
  // vec(MX - XM) = (I (x) M - M^T (x) I) vec(X) with column stacking.
  Eigen::MatrixXcd sylvester = Eigen::MatrixXcd::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      sylvester.block(j * n, k * n, n, n) =
          identity(k, j) * m.entries - m.entries.transpose()(j, k) * identity;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sylvester, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double scale = sigma.size() == 0 ? 0.0 : sigma(0);
  std::vector<OperatorMatrix> out;
  for (int j = static_cast<int>(sigma.size()) - 1; j >= 0; --j) {
    if (sigma(j) > 1e-10 * std::max(1.0, scale)) break;
    Eigen::MatrixXcd entries =
        Eigen::Map<const Eigen::MatrixXcd>(svd.matrixV().col(j).data(), n, n);
    out.push_back({entries, m.source, m.target});
  }
  return out;
}

double membership_residual(const SedlockAlgebra& algebra,
                           const OperatorMatrix& x) {
  return span_residual(algebra.span, x.vectorized());
}

OperatorMatrix symbol_member(BasisPtr basis, Complex a, const ModelVector& phi0,
                             Complex c) {
  const Complex at_zero = basis->eval(phi0, Complex(0.0, 0.0));
  if (std::abs(at_zero) > 1e-10) {
    throw std::invalid_argument(
        "symbol_member: phi0 must vanish at the origin, found modulus " +
        std::to_string(std::abs(at_zero)));
  }
  const BoundarySymbol core = BoundarySymbol::model_function(basis, phi0);
  const BoundarySymbol tail =
      BoundarySymbol::conjugated_inner(basis->theta()).scaled(a) +
      BoundarySymbol::constant(Complex(1.0, 0.0));
  return tto_matrix(basis, core * tail + BoundarySymbol::constant(c));
}

std::vector<OperatorMatrix> sedlock_idempotents(BasisPtr basis,
                                                const DiskPoint& a) {
  const auto& theta = basis->theta();
  const std::vector<Complex> points =
      simple_level_set(theta, a.value(), "sedlock_idempotents");
  std::vector<OperatorMatrix> out;
  out.reserve(points.size());
  for (const Complex& w : points) {
    const ModelVector ck = basis->conjugate_kernel_coords(w);
    const ModelVector k = basis->kernel_coords(w);
    out.push_back(rank_one(basis, ck, k).scaled(1.0 / theta.derivative(w)));
  }
  return out;
}

std::vector<OperatorMatrix> clark_projections(BasisPtr basis,
                                              const UnimodularConstant& a) {
  const auto& theta = basis->theta();
  const std::vector<Complex> points =
      simple_level_set(theta, a.value(), "clark_projections");
  std::vector<OperatorMatrix> out;
  out.reserve(points.size());
  for (const Complex& zeta : points) {
    const ModelVector k = basis->kernel_coords(zeta);
    out.push_back(rank_one(basis, k, k).scaled(1.0 / k.squaredNorm()));
  }
  return out;
}

}  // namespace ttolab
