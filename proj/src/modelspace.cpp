#include "ttolab/modelspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ttolab {

namespace {

// Relative coefficient distance between the monic polynomials vanishing on
// the two zero lists.  Coefficients are the robust way to compare multisets:
// an m-fold zero recovered through root finding splits into a cluster of
// radius about eps^(1/m), but the elementary symmetric functions of the
// cluster still agree with the exact ones to order eps.
double zero_polynomial_gap(const std::vector<DiskPoint>& left,
                           const std::vector<DiskPoint>& right) {
  const auto coefficients = [](const std::vector<DiskPoint>& zeros) {
    std::vector<Complex> coeffs{Complex(1.0, 0.0)};
    for (const DiskPoint& z : zeros) {
      std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        next[k + 1] += coeffs[k];
        next[k] -= z.value() * coeffs[k];
      }
      coeffs = std::move(next);
    }
    return coeffs;
  };
  const std::vector<Complex> lc = coefficients(left);
  const std::vector<Complex> rc = coefficients(right);
  double gap = 0.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < lc.size(); ++k) {
    gap = std::max(gap, std::abs(lc[k] - rc[k]));
    scale = std::max({scale, std::abs(lc[k]), std::abs(rc[k])});
  }
  return gap / scale;
}

}  // namespace

int default_quadrature_size(const FiniteBlaschkeProduct& theta) {
  int points = std::max(256, 16 * theta.degree());
  double radius = 0.0;
  for (const DiskPoint& z : theta.zeros()) radius = std::max(radius, z.modulus());
  if (radius > 0.0) {
    const double needed = std::log(1e-13) / std::log(radius);
    if (needed > points) {
      points = static_cast<int>(std::min(needed + 1.0, 65536.0));
    }
  }
  return points;
}

ModelSpaceBasis::ModelSpaceBasis(FiniteBlaschkeProduct theta, int quadrature_size)
    : theta_(std::move(theta)) {
  const int n = theta_.degree();
  points_ = quadrature_size > 0 ? quadrature_size : default_quadrature_size(theta_);
  if (points_ < 2 * n) {
    throw std::invalid_argument("ModelSpaceBasis: quadrature size " +
                                std::to_string(points_) +
                                " is below twice the dimension");
  }
  nodes_.resize(points_);
  for (int m = 0; m < points_; ++m) {
    nodes_[m] = unit_circle_point(2.0 * kPi * m / points_);
  }
  samples_.resize(n, points_);
  for (int m = 0; m < points_; ++m) {
    samples_.col(m) = basis_values(nodes_[m]);
  }

  const Eigen::MatrixXcd gram =
      samples_ * samples_.adjoint() / static_cast<double>(points_);
  const double deviation =
      (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (deviation > 1e-10) {
    throw std::runtime_error(
        "ModelSpaceBasis: quadrature resolution insufficient, Gram deviation " +
        std::to_string(deviation) + " at M = " + std::to_string(points_) +
        "; increase the quadrature size");
  }
}

Complex ModelSpaceBasis::basis_eval(int k, Complex z) const {
  const auto& zeros = theta_.zeros();
  const Complex zk = zeros[k].value();
  Complex out = std::sqrt(1.0 - std::norm(zk)) / (1.0 - std::conj(zk) * z);
  for (int j = 0; j < k; ++j) out *= blaschke_factor_eval(zeros[j], z);
  return out;
}

ModelVector ModelSpaceBasis::basis_values(Complex z) const {
  const auto& zeros = theta_.zeros();
  const int n = dimension();
  ModelVector out(n);
  Complex prefix(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    const Complex zk = zeros[k].value();
    out(k) = prefix * std::sqrt(1.0 - std::norm(zk)) / (1.0 - std::conj(zk) * z);
    prefix *= blaschke_factor_eval(zeros[k], z);
  }
  return out;
}

Complex ModelSpaceBasis::eval(const ModelVector& coords, Complex z) const {
  return basis_values(z).transpose() * coords;
}

ModelVector ModelSpaceBasis::project_samples(const Eigen::VectorXcd& values) const {
  if (values.size() != points_) {
    throw std::invalid_argument("project_samples: expected one value per node");
  }
  return samples_.conjugate() * values / static_cast<double>(points_);
}

ModelVector ModelSpaceBasis::project(const std::function<Complex(Complex)>& f) const {
  Eigen::VectorXcd values(points_);
  for (int m = 0; m < points_; ++m) values(m) = f(nodes_[m]);
  return project_samples(values);
}

ModelVector ModelSpaceBasis::kernel_coords(Complex lambda) const {
  // <k_lambda, e_j> = conj(e_j(lambda)).
  return basis_values(lambda).conjugate();
}

ModelVector ModelSpaceBasis::conjugate_kernel_coords(Complex lambda) const {
  const Complex tl = theta_.eval(lambda);
  Eigen::VectorXcd values(points_);
  for (int m = 0; m < points_; ++m) {
    const Complex dz = nodes_[m] - lambda;
    values(m) = std::abs(dz) < 1e-8 ? theta_.derivative(lambda)
                                    : (theta_.eval(nodes_[m]) - tl) / dz;
  }
  return project_samples(values);
}

const Eigen::MatrixXcd& ModelSpaceBasis::conjugation_matrix() const {
  if (!conjugation_ready_) {
    const int n = dimension();
    conjugation_.resize(n, n);
    Eigen::VectorXcd values(points_);
    for (int l = 0; l < n; ++l) {
      for (int m = 0; m < points_; ++m) {
        values(m) = std::conj(samples_(l, m) * nodes_[m]) * theta_.eval(nodes_[m]);
      }
      conjugation_.col(l) = project_samples(values);
    }
    const double involution_defect =
        (conjugation_ * conjugation_.conjugate() -
         Eigen::MatrixXcd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (involution_defect > 1e-8) {
      throw std::runtime_error(
          "conjugation_matrix: quadrature resolution insufficient, involution "
          "defect " +
          std::to_string(involution_defect));
    }
    conjugation_ready_ = true;
  }
  return conjugation_;
}

ModelVector ModelSpaceBasis::apply_conjugation(const ModelVector& v) const {
  return conjugation_matrix() * v.conjugate();
}

bool ModelSpaceBasis::same_basis(const ModelSpaceBasis& other, double tol) const {
  if (dimension() != other.dimension() || points_ != other.points_) return false;
  for (int j = 0; j < dimension(); ++j) {
    if (std::abs(theta_.zeros()[j].value() - other.theta_.zeros()[j].value()) > tol) {
      return false;
    }
  }
  return true;
}

bool ModelSpaceBasis::same_space(const ModelSpaceBasis& other, double tol) const {
  if (dimension() != other.dimension()) return false;
  return zero_polynomial_gap(theta_.zeros(), other.theta_.zeros()) <= tol;
}

BasisPtr make_basis(FiniteBlaschkeProduct theta, int quadrature_size) {
  return std::make_shared<const ModelSpaceBasis>(std::move(theta), quadrature_size);
}

Eigen::MatrixXcd basis_transition(const ModelSpaceBasis& from,
                                  const ModelSpaceBasis& to) {
  if (!from.same_space(to)) {
    throw std::invalid_argument(
        "basis_transition: the bases span different spaces");
  }
  const int n = to.dimension();
  const int points = to.quadrature_size();
  // T(k, l) = <e_l^from, e_k^to> via quadrature on the target nodes.
  Eigen::MatrixXcd from_samples(n, points);
  for (int m = 0; m < points; ++m) {
    from_samples.col(m) = from.basis_values(to.node(m));
  }
  Eigen::MatrixXcd transition = to.boundary_samples().conjugate() *
                                from_samples.transpose() /
                                static_cast<double>(points);
  const double defect = (transition.adjoint() * transition -
                         Eigen::MatrixXcd::Identity(n, n))
                            .cwiseAbs()
                            .maxCoeff();
  if (defect > 1e-8) {
    throw std::runtime_error("basis_transition: transition is not unitary, defect " +
                             std::to_string(defect));
  }
  return transition;
}

}  // namespace ttolab
