#include "ttolab/tto.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace ttolab;
using namespace ttolab::testing;

namespace {

BasisPtr random_basis(std::mt19937_64& rng, int degree, double max_radius = 0.7) {
  std::vector<Complex> zeros;
  for (int j = 0; j < degree; ++j) zeros.push_back(random_in_disk(rng, max_radius));
  return make_basis(FiniteBlaschkeProduct::from_zeros(zeros, random_unimodular(rng)));
}

BasisPtr distinct_zero_basis(std::mt19937_64& rng, int degree) {
  std::vector<Complex> zeros;
  while (static_cast<int>(zeros.size()) < degree) {
    const Complex z = random_in_disk(rng, 0.7);
    bool ok = true;
    for (const Complex& w : zeros) ok = ok && std::abs(z - w) > 0.15;
    if (ok) zeros.push_back(z);
  }
  return make_basis(FiniteBlaschkeProduct::from_zeros(zeros));
}

const BoundarySymbol kShift = BoundarySymbol::monomial(1);

}  // namespace

TEST_CASE("compression of the shift on the monomial space") {
  const auto basis = make_basis(FiniteBlaschkeProduct::monomial(3));
  const OperatorMatrix a = tto_matrix(basis, kShift);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
  expected(1, 0) = 1.0;
  expected(2, 1) = 1.0;
  CHECK((a.entries - expected).cwiseAbs().maxCoeff() <= 1e-12);

  const OperatorMatrix id = tto_matrix(basis, BoundarySymbol::constant(1.0));
  CHECK((id.entries - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("adjoint law and linearity") {
  auto rng = make_rng(51);
  for (int k = 0; k < 8; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 4));
    const BoundarySymbol phi = BoundarySymbol::analytic_polynomial(
        {Complex(0.3, 0.1), Complex(-0.2, 0.7), Complex(0.4, 0.0)});
    const BoundarySymbol psi = BoundarySymbol::trig_polynomial(
        {{-1, Complex(0.5, -0.2)}, {2, Complex(0.0, 1.0)}});

    CHECK((tto_matrix(basis, phi.conjugate()) - tto_matrix(basis, phi).adjoint())
              .max_abs() <= 1e-11);
    const Complex s(0.7, -1.1);
    const OperatorMatrix lhs = tto_matrix(basis, phi.scaled(s) + psi);
    const OperatorMatrix rhs = tto_matrix(basis, phi).scaled(s) + tto_matrix(basis, psi);
    CHECK((lhs - rhs).max_abs() <= 1e-11);
  }
}

TEST_CASE("symbols differing by theta H2 or its conjugate collapse to zero") {
  auto rng = make_rng(52);
  for (int k = 0; k < 6; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 3));
    const auto& theta = basis->theta();
    // theta z and conj(theta z) both compress to the zero operator.
    BoundarySymbol analytic_part;
    analytic_part = BoundarySymbol::conjugated_inner(theta).conjugate() * kShift;
    CHECK(tto_matrix(basis, analytic_part).max_abs() <= 1e-10);
    CHECK(tto_matrix(basis, analytic_part.conjugate()).max_abs() <= 1e-10);

    const BoundarySymbol phi = BoundarySymbol::analytic_polynomial(
        {Complex(0.2, 0.0), Complex(1.0, 0.5)});
    CHECK(symbol_equivalent(basis, phi, phi + analytic_part));
    CHECK(!symbol_equivalent(basis, kShift, kShift * kShift));
  }
}

TEST_CASE("matrices are complex symmetric for the space conjugation") {
  auto rng = make_rng(53);
  for (int k = 0; k < 6; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 4));
    const Eigen::MatrixXcd& j = basis->conjugation_matrix();
    const BoundarySymbol phi = BoundarySymbol::trig_polynomial(
        {{-2, Complex(0.3, 0.4)}, {0, Complex(1.0, 0.0)}, {1, Complex(0.0, -0.8)}});
    const Eigen::MatrixXcd a = tto_matrix(basis, phi).entries;
    // Conjugating by the space conjugation gives the adjoint.
    const Eigen::MatrixXcd cac = j * a.conjugate() * j.conjugate();
    CHECK((cac - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("kernels at distinct zeros are coanalytic eigenvectors") {
  auto rng = make_rng(54);
  for (int k = 0; k < 6; ++k) {
    const auto basis = distinct_zero_basis(rng, 3);
    const BoundarySymbol phi = BoundarySymbol::analytic_polynomial(
        {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)});
    CHECK(coanalytic_eigencheck(basis, phi) <= 1e-10);
    CHECK(coanalytic_eigencheck(basis, kShift) <= 1e-10);
  }
  const auto repeated = make_basis(FiniteBlaschkeProduct::monomial(2));
  CHECK_THROWS_AS(coanalytic_eigencheck(repeated, kShift), std::invalid_argument);
}

TEST_CASE("distance identity for hand checked symbols") {
  const auto square = FiniteBlaschkeProduct::monomial(2);
  // phi = z over z^2: the Hankel matrix is the single entry 1.
  CHECK(nehari_distance(square, kShift) == doctest::Approx(1.0).epsilon(1e-12));
  // phi = 1 + z: Hankel [[1, 1], [1, 0]] has the golden ratio as top
  // singular value, matching the operator norm of I + shift.
  const BoundarySymbol one_plus_z =
      BoundarySymbol::analytic_polynomial({Complex(1.0, 0.0), Complex(1.0, 0.0)});
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(nehari_distance(square, one_plus_z) == doctest::Approx(golden).epsilon(1e-10));

  const auto basis = make_basis(square);
  CHECK(tto_matrix(basis, one_plus_z).norm() == doctest::Approx(golden).epsilon(1e-10));
}

TEST_CASE("distance equals the compression norm") {
  auto rng = make_rng(55);
  const BoundarySymbol symbols[] = {
      kShift, kShift * kShift,
      BoundarySymbol::analytic_polynomial({Complex(1.0, 0.0), Complex(1.0, 0.0)})};
  for (int k = 0; k < 5; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 3));
    for (const BoundarySymbol& phi : symbols) {
      const double via_hankel = nehari_distance(basis->theta(), phi);
      const double via_norm = tto_matrix(basis, phi).norm();
      CHECK(via_hankel == doctest::Approx(via_norm).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(
      nehari_distance(FiniteBlaschkeProduct::monomial(2), BoundarySymbol::monomial(-1)),
      std::invalid_argument);
}

TEST_CASE("rank one operators multiply by inner products") {
  auto rng = make_rng(56);
  const auto basis = random_basis(rng, 3);
  std::normal_distribution<double> gauss;
  ModelVector u(3), v(3), w(3);
  for (int j = 0; j < 3; ++j) {
    u(j) = Complex(gauss(rng), gauss(rng));
    v(j) = Complex(gauss(rng), gauss(rng));
    w(j) = Complex(gauss(rng), gauss(rng));
  }
  const OperatorMatrix op = rank_one(basis, u, v);
  // (u (x) v) w = <w, v> u with the conjugation on v.
  const ModelVector expected = v.dot(w) * u;
  CHECK((op.apply(w) - expected).norm() <= 1e-12 * expected.norm());
  CHECK(op.norm() == doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
}

TEST_CASE("resolution guard rejects oversized symbols") {
  const auto basis = make_basis(FiniteBlaschkeProduct::monomial(2));
  CHECK_THROWS_WITH_AS(
      (void)tto_matrix(basis, BoundarySymbol::monomial(200)),
      doctest::Contains("requires quadrature size"), std::invalid_argument);
}

TEST_CASE("basis mismatch is rejected in operator algebra") {
  const auto a = make_basis(FiniteBlaschkeProduct::monomial(2));
  const auto b = make_basis(FiniteBlaschkeProduct::monomial(3));
  CHECK_THROWS_AS(tto_matrix(a, kShift) * tto_matrix(b, kShift),
                  std::invalid_argument);
}

TEST_CASE("rational symbols evaluate and validate poles") {
  // (1 + z) / (1 - z/4) has its pole at 4, well off the circle.
  const BoundarySymbol r = BoundarySymbol::rational(
      {Complex(1.0, 0.0), Complex(1.0, 0.0)}, {Complex(1.0, 0.0), Complex(-0.25, 0.0)});
  const Complex z = unit_circle_point(0.9);
  CHECK(std::abs(r.eval(z) - (1.0 + z) / (1.0 - 0.25 * z)) <= 1e-14);
  CHECK_THROWS_AS(BoundarySymbol::rational({Complex(1.0, 0.0)},
                                           {Complex(1.0, 0.0), Complex(-1.0, 0.0)}),
                  std::invalid_argument);
}
