#include "ttolab/pick.hpp"

#include <algorithm>
#include <stdexcept>

namespace ttolab {

PickSpace::PickSpace(std::vector<DiskPoint> nodes) : nodes_(std::move(nodes)) {
  const int n = static_cast<int>(nodes_.size());
  if (n == 0) throw std::invalid_argument("PickSpace: no nodes");
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (std::abs(nodes_[j].value() - nodes_[k].value()) <= 1e-8) {
        throw std::invalid_argument("PickSpace: nodes " + std::to_string(j) +
                                    " and " + std::to_string(k) +
                                    " are not separated");
      }
    }
  }

  gram_.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      gram_(j, k) = 1.0 / (1.0 - nodes_[j].value() * std::conj(nodes_[k].value()));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram_);
  const Eigen::VectorXd& values = eig.eigenvalues();
  if (values(0) <= 1e-14 * n) {
    throw std::runtime_error(
        "PickSpace: Gram matrix is numerically singular, smallest eigenvalue " +
        std::to_string(values(0)));
  }
  condition_ = values(n - 1) / values(0);
  sqrt_ = eig.eigenvectors() *
          values.cwiseSqrt().asDiagonal() * eig.eigenvectors().adjoint();
  sqrt_inv_ = eig.eigenvectors() *
              values.cwiseSqrt().cwiseInverse().asDiagonal() *
              eig.eigenvectors().adjoint();
}

Complex PickSpace::inner(const Eigen::VectorXcd& u,
                         const Eigen::VectorXcd& v) const {
  if (u.size() != dimension() || v.size() != dimension()) {
    throw std::invalid_argument("PickSpace::inner: dimension mismatch");
  }
  return v.dot(gram_ * u);
}

double PickSpace::diagonal_norm(const Eigen::VectorXcd& weights) const {
  if (weights.size() != dimension()) {
    throw std::invalid_argument("PickSpace::diagonal_norm: dimension mismatch");
  }
  if (condition_ > 1e12) {
    throw std::runtime_error(
        "PickSpace: Gram condition number " + std::to_string(condition_) +
        " is too large for a trustworthy norm");
  }
  const Eigen::MatrixXcd similar =
      sqrt_ * weights.asDiagonal() * sqrt_inv_;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(similar).singularValues()(0);
}

PickIdentification sedlock_to_pick(const BasisPtr& basis) {
  const int n = basis->dimension();
  std::vector<DiskPoint> nodes = basis->theta().zeros();
  PickSpace space(std::move(nodes));

  Eigen::MatrixXcd kernels(n, n);
  for (int j = 0; j < n; ++j) {
    kernels.col(j) = basis->kernel_coords(space.nodes()[j].value());
  }
  // At the zeros the model kernels coincide with the Hardy space kernels, so
  // their Gram matrix must reproduce the Pick Gram matrix.
  if ((kernels.adjoint() * kernels - space.gram()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::runtime_error(
        "sedlock_to_pick: kernel Gram mismatch; increase the quadrature size");
  }
  Eigen::MatrixXcd to_pick = kernels.inverse();
  return {std::move(space), basis, std::move(to_pick), std::move(kernels)};
}

Eigen::MatrixXcd to_pick_coordinates(const PickIdentification& id,
                                     const OperatorMatrix& m) {
  if (!m.source->same_basis(*id.source) || !m.target->same_basis(*id.source)) {
    throw std::invalid_argument(
        "to_pick_coordinates: operator does not act on the identified space");
  }
  return id.to_pick * m.entries * id.from_pick;
}

std::vector<double> idempotent_norm_profile(const SedlockAlgebra& algebra) {
  const ExtendedParameter& a = algebra.parameter;
  std::vector<OperatorMatrix> resolution;
  switch (a.kind()) {
    case ExtendedParameter::Kind::Disk:
      resolution = sedlock_idempotents(algebra.basis, DiskPoint(a.value()));
      break;
    case ExtendedParameter::Kind::Circle:
      resolution = clark_projections(algebra.basis, UnimodularConstant(a.value()));
      break;
    case ExtendedParameter::Kind::Exterior:
    case ExtendedParameter::Kind::Infinity: {
      // The resolution consists of the adjoints of the flipped one; adjoints
      // do not change norms.
      const ExtendedParameter flipped = a.conj_flip();
      resolution = sedlock_idempotents(algebra.basis, DiskPoint(flipped.value()));
      break;
    }
  }
  std::vector<double> norms;
  norms.reserve(resolution.size());
  for (const OperatorMatrix& q : resolution) norms.push_back(q.norm());
  std::sort(norms.begin(), norms.end());
  return norms;
}

}  // namespace ttolab
