#pragma once

#include <map>
#include <vector>

#include "ttolab/modelspace.hpp"

namespace ttolab {

// Function on the unit circle used as a multiplier symbol.  Alongside the
// evaluator it tracks how much trigonometric bandwidth the symbol occupies:
// an exactly banded part plus an optional geometric tail (rational symbols
// and model space functions have coefficients decaying like r^k with r the
// largest zero or pole modulus).  The bandwidth feeds the quadrature
// resolution guard in tto_matrix.
class BoundarySymbol {
 public:
  BoundarySymbol();  // the zero symbol

  static BoundarySymbol constant(Complex value);
  // c_0 + c_1 z + ... + c_K z^K.
  static BoundarySymbol analytic_polynomial(std::vector<Complex> coeffs);
  // Sum of c_k z^k over arbitrary integer k; negative powers are conjugated
  // positive powers on the circle.
  static BoundarySymbol trig_polynomial(std::map<int, Complex> coeffs);
  static BoundarySymbol monomial(int power);
  // Element of the model space with the given coordinates.
  static BoundarySymbol model_function(BasisPtr basis, ModelVector coords);
  // conj(theta) restricted to the circle, equal to 1/theta there.
  static BoundarySymbol conjugated_inner(FiniteBlaschkeProduct theta);
  // num(z)/den(z) with den zero free on the circle.
  static BoundarySymbol rational(std::vector<Complex> num, std::vector<Complex> den);

  Complex eval(Complex zeta) const;
  BoundarySymbol conjugate() const;
  BoundarySymbol operator+(const BoundarySymbol& other) const;
  BoundarySymbol operator*(const BoundarySymbol& other) const;
  BoundarySymbol scaled(Complex s) const;

  int exact_band() const { return exact_band_; }
  double decay_rate() const { return decay_rate_; }

 private:
  std::function<Complex(Complex)> eval_;
  int exact_band_ = 0;
  double decay_rate_ = 0.0;
};

// Matrix of an operator between two model space bases.  All algebra checks
// that the bases of the factors line up.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  BasisPtr source;
  BasisPtr target;

  OperatorMatrix operator*(const OperatorMatrix& rhs) const;
  OperatorMatrix operator+(const OperatorMatrix& rhs) const;
  OperatorMatrix operator-(const OperatorMatrix& rhs) const;
  OperatorMatrix scaled(Complex s) const;
  OperatorMatrix adjoint() const;
  ModelVector apply(const ModelVector& v) const;

  // Largest singular value.
  double norm() const;
  double max_abs() const;
  // Column stacked entries, for span comparisons of operator sets.
  Eigen::VectorXcd vectorized() const;
};

OperatorMatrix identity_operator(BasisPtr basis);
OperatorMatrix zero_operator(BasisPtr basis);

// u (x) v, the map w -> <w, v> u.
OperatorMatrix rank_one(BasisPtr basis, const ModelVector& u, const ModelVector& v);

OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y);

// Compression of multiplication by phi to the model space: entries
// (1/M) sum_m phi(zeta_m) e_l(zeta_m) conj(e_k(zeta_m)).  Throws
// std::invalid_argument when the symbol bandwidth exceeds what the basis
// quadrature resolves; the message names the required quadrature size.
OperatorMatrix tto_matrix(BasisPtr basis, const BoundarySymbol& phi);

// Whether two symbols induce the same operator, which happens exactly when
// their difference lies in theta H^2 + conj(theta H^2).
bool symbol_equivalent(BasisPtr basis, const BoundarySymbol& phi1,
                       const BoundarySymbol& phi2, double tol = 1e-9);

// For theta with distinct zeros z_j, multiplication by conj(phi) has the
// kernels at the zeros as eigenvectors with eigenvalue conj(phi(z_j)).
// Returns the largest relative residual over the zeros.
double coanalytic_eigencheck(BasisPtr basis, const BoundarySymbol& phi);

// Distance from phi / theta to the bounded analytic functions, computed as
// the largest singular value of the Hankel matrix of negative Fourier
// coefficients of phi conj(theta).  Equals the operator norm of the
// compression of phi.
double nehari_distance(const FiniteBlaschkeProduct& theta,
                       const BoundarySymbol& phi);

}  // namespace ttolab
