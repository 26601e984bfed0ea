#pragma once

#include <Eigen/Dense>

namespace ttolab {

// Helpers for comparing linear spans, used for operator algebras through
// their vectorized matrices.  Columns of the input matrices are the spanning
// vectors; none of the helpers require them to be independent.

// Orthonormal basis of the column span, dropping directions whose singular
// value falls below rel_tol times the largest.
Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& vectors,
                                  double rel_tol = 1e-10);

// Numerical rank of the column span.
int span_dimension(const Eigen::MatrixXcd& vectors, double rel_tol = 1e-10);

// Distance of v from the span, relative to |v|.
double span_residual(const Eigen::MatrixXcd& vectors, const Eigen::VectorXcd& v);

// Symmetric gap between two spans: the spectral norm of the difference of
// the orthogonal projections.  Zero iff the spans agree.
double span_gap(const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right);

// Dimension of the intersection, counted through principal angles with
// cosine above 1 - angle_tol.
int intersection_dimension(const Eigen::MatrixXcd& left,
                           const Eigen::MatrixXcd& right,
                           double angle_tol = 1e-8);

}  // namespace ttolab
