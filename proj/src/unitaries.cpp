#include "ttolab/unitaries.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ttolab {

namespace {

// Projects the images of the source basis functions into the target basis
// and validates unitarity of the resulting matrix.  The image callback
// evaluates the transformed l-th basis function at a circle point.
OperatorMatrix project_images(
    const BasisPtr& source, const BasisPtr& target, const char* name,
    const std::function<Complex(int, Complex)>& image) {
  const int n = source->dimension();
  const int points = target->quadrature_size();
  Eigen::MatrixXcd entries(n, n);
  Eigen::VectorXcd values(points);
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < points; ++m) {
      values(m) = image(l, target->node(m));
    }
    entries.col(l) = target->project_samples(values);
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const double defect =
      std::max((entries.adjoint() * entries - id).cwiseAbs().maxCoeff(),
               (entries * entries.adjoint() - id).cwiseAbs().maxCoeff());
  if (defect > 1e-9) {
    throw std::runtime_error(std::string(name) +
                             " is not unitary at this quadrature resolution; "
                             "increase the quadrature size");
  }
  return {entries, source, target};
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

// Target space of a transformed product, resolved at least as finely as the
// source space even when the transformed zeros would allow a coarser grid.
BasisPtr make_target(const BasisPtr& source, FiniteBlaschkeProduct theta) {
  const int points =
      std::max(source->quadrature_size(), default_quadrature_size(theta));
  return make_basis(std::move(theta), points);
}

// Norm of lhs minus rhs after expressing both in the basis of lhs's target.
// With sign_free the better of the two square root branches is reported.
double aligned_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs,
                        bool sign_free) {
  const Eigen::MatrixXcd aligned =
      basis_transition(*rhs.target, *lhs.target) * rhs.entries;
  const double direct = spectral_norm(lhs.entries - aligned);
  if (!sign_free) return direct;
  return std::min(direct, spectral_norm(lhs.entries + aligned));
}

}  // namespace

OperatorMatrix SpatialUnitary::conjugate(const OperatorMatrix& m) const {
  return matrix * m * matrix.adjoint();
}

SpatialUnitary crofoot_transform(const BasisPtr& basis, const DiskPoint& a) {
  const FiniteBlaschkeProduct& theta = basis->theta();
  const BasisPtr target = make_target(
      basis, post_compose(theta, MoebiusAutomorphism::blaschke_factor(a)));
  const double scale = std::sqrt(1.0 - a.modulus() * a.modulus());
  const Complex a_conj = std::conj(a.value());
  OperatorMatrix matrix = project_images(
      basis, target, "crofoot transform", [&](int l, Complex z) {
        return scale / (1.0 - a_conj * theta.eval(z)) * basis->basis_eval(l, z);
      });
  return {SpatialUnitary::Kind::Crofoot, std::move(matrix), a,
          MoebiusAutomorphism::identity()};
}

SpatialUnitary composition_unitary(const BasisPtr& basis,
                                   const MoebiusAutomorphism& psi) {
  const BasisPtr target = make_target(basis, pre_compose(basis->theta(), psi));
  const Complex root_lambda = std::sqrt(psi.lambda().value());
  const DiskPoint c = psi.c();
  const double scale = std::sqrt(1.0 - c.modulus() * c.modulus());
  const Complex c_conj = std::conj(c.value());
  OperatorMatrix matrix = project_images(
      basis, target, "composition unitary", [&](int l, Complex z) {
        const Complex root = root_lambda * scale / (1.0 - c_conj * z);
        return root * basis->basis_eval(l, psi.eval(z));
      });
  return {SpatialUnitary::Kind::Composition, std::move(matrix), DiskPoint(),
          psi};
}

SpatialUnitary sharp_unitary(const BasisPtr& basis) {
  const FiniteBlaschkeProduct reflected = basis->theta().sharp();
  const BasisPtr target = make_target(basis, reflected);
  OperatorMatrix matrix = project_images(
      basis, target, "sharp unitary", [&](int l, Complex z) {
        return std::conj(z) * basis->basis_eval(l, std::conj(z)) *
               reflected.eval(z);
      });
  return {SpatialUnitary::Kind::Sharp, std::move(matrix), DiskPoint(),
          MoebiusAutomorphism::identity()};
}

ExtendedParameter lambda_image(const SpatialUnitary& u,
                               const ExtendedParameter& a) {
  switch (u.kind) {
    case SpatialUnitary::Kind::Crofoot:
      return ell(u.crofoot_parameter, a);
    case SpatialUnitary::Kind::Composition:
      return a;
    case SpatialUnitary::Kind::Sharp:
      return a.reciprocal();
  }
  throw std::logic_error("unknown spatial unitary kind");
}

std::array<double, 7> word_relation_residuals(const BasisPtr& basis,
                                              const DiskPoint& a,
                                              const DiskPoint& b,
                                              const MoebiusAutomorphism& psi,
                                              const MoebiusAutomorphism& phi) {
  std::array<double, 7> residuals{};

  const SpatialUnitary ua = crofoot_transform(basis, a);
  const SpatialUnitary ub_after = crofoot_transform(ua.target(), b);
  const Complex pivot = 1.0 + std::conj(b.value()) * a.value();
  const DiskPoint sum_point((a.value() + b.value()) /
                            (1.0 + b.value() * std::conj(a.value())));
  const SpatialUnitary usum = crofoot_transform(basis, sum_point);
  residuals[0] =
      aligned_residual(ub_after.matrix * ua.matrix,
                       usum.matrix.scaled(std::abs(pivot) / pivot), false);

  const SpatialUnitary uneg =
      crofoot_transform(ua.target(), DiskPoint(-a.value()));
  residuals[1] = aligned_residual(ua.matrix.adjoint(), uneg.matrix, false);

  const SpatialUnitary up = composition_unitary(basis, psi);
  const SpatialUnitary uf_after = composition_unitary(up.target(), phi);
  const SpatialUnitary ucomp = composition_unitary(basis, psi.compose(phi));
  residuals[2] =
      aligned_residual(uf_after.matrix * up.matrix, ucomp.matrix, true);

  const SpatialUnitary uinv = composition_unitary(up.target(), psi.inverse());
  residuals[3] = aligned_residual(up.matrix.adjoint(), uinv.matrix, true);

  const SpatialUnitary ub = crofoot_transform(basis, b);
  const SpatialUnitary up_after_b = composition_unitary(ub.target(), psi);
  const SpatialUnitary ub_after_p = crofoot_transform(up.target(), b);
  residuals[4] = aligned_residual(up_after_b.matrix * ub.matrix,
                                  ub_after_p.matrix * up.matrix, false);

  const SpatialUnitary ush = sharp_unitary(basis);
  const SpatialUnitary ush_after_a = sharp_unitary(ua.target());
  const SpatialUnitary uconj =
      crofoot_transform(ush.target(), DiskPoint(std::conj(a.value())));
  residuals[5] = aligned_residual(ush_after_a.matrix * ua.matrix,
                                  uconj.matrix * ush.matrix, false);

  const SpatialUnitary ush_after_p = sharp_unitary(up.target());
  const SpatialUnitary usharp_psi =
      composition_unitary(ush.target(), psi.sharp());
  residuals[6] = aligned_residual(ush_after_p.matrix * up.matrix,
                                  usharp_psi.matrix * ush.matrix, true);

  return residuals;
}

}  // namespace ttolab
