#include "ttolab/subspace.hpp"

namespace ttolab {

Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& vectors,
                                  double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vectors, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) {
    return Eigen::MatrixXcd(vectors.rows(), 0);
  }
  int rank = 0;
  while (rank < sigma.size() && sigma(rank) > rel_tol * sigma(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

int span_dimension(const Eigen::MatrixXcd& vectors, double rel_tol) {
  return static_cast<int>(orthonormal_span(vectors, rel_tol).cols());
}

double span_residual(const Eigen::MatrixXcd& vectors, const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  const Eigen::MatrixXcd q = orthonormal_span(vectors);
  return (v - q * (q.adjoint() * v)).norm() / norm;
}

double span_gap(const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right) {
  const Eigen::MatrixXcd ql = orthonormal_span(left);
  const Eigen::MatrixXcd qr = orthonormal_span(right);
  const Eigen::MatrixXcd diff = ql * ql.adjoint() - qr * qr.adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

int intersection_dimension(const Eigen::MatrixXcd& left,
                           const Eigen::MatrixXcd& right, double angle_tol) {
  const Eigen::MatrixXcd ql = orthonormal_span(left);
  const Eigen::MatrixXcd qr = orthonormal_span(right);
  if (ql.cols() == 0 || qr.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ql.adjoint() * qr);
  int count = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) >= 1.0 - angle_tol) ++count;
  }
  return count;
}

}  // namespace ttolab
