#include "ttolab/modelspace.hpp"

#include <doctest.h>

#include "ttolab/subspace.hpp"
#include "support.hpp"

using namespace ttolab;
using namespace ttolab::testing;

namespace {

BasisPtr random_basis(std::mt19937_64& rng, int degree, double max_radius = 0.7) {
  std::vector<Complex> zeros;
  for (int j = 0; j < degree; ++j) zeros.push_back(random_in_disk(rng, max_radius));
  return make_basis(FiniteBlaschkeProduct::from_zeros(zeros, random_unimodular(rng)));
}

ModelVector random_coords(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ModelVector v(n);
  for (int j = 0; j < n; ++j) v(j) = Complex(gauss(rng), gauss(rng));
  return v;
}

}  // namespace

TEST_CASE("monomial space has the monomial basis") {
  const auto basis = make_basis(FiniteBlaschkeProduct::monomial(3));
  CHECK(basis->dimension() == 3);
  CHECK(basis->quadrature_size() == 256);
  const Complex z(0.3, -0.2);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(basis->basis_eval(k, z) - std::pow(z, k)) <= 1e-14);
  }
}

TEST_CASE("sampled Gram matrix is the identity") {
  auto rng = make_rng(41);
  for (int k = 0; k < 10; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 5));
    const auto& s = basis->boundary_samples();
    const Eigen::MatrixXcd gram = s * s.adjoint() / double(basis->quadrature_size());
    const int n = basis->dimension();
    CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("insufficient quadrature is rejected") {
  // A zero close to the boundary makes 64 nodes far too coarse.
  const auto theta = FiniteBlaschkeProduct::from_zeros({Complex(0.97, 0.0), Complex(0.0, 0.0)});
  CHECK_THROWS_AS(ModelSpaceBasis(theta, 64), std::runtime_error);
  CHECK_NOTHROW(ModelSpaceBasis(theta, 2048));
}

TEST_CASE("reproducing property at interior points") {
  auto rng = make_rng(42);
  for (int k = 0; k < 12; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 4));
    const ModelVector f = random_coords(rng, basis->dimension());
    for (int t = 0; t < 6; ++t) {
      const Complex lambda = random_in_disk(rng, 0.9);
      const ModelVector ker = basis->kernel_coords(lambda);
      // <f, k_lambda> in coordinates is kernel . f with Eigen's conjugating dot.
      CHECK(std::abs(ker.dot(f) - basis->eval(f, lambda)) <= 1e-10 * (1.0 + f.norm()));
    }
  }
}

TEST_CASE("kernel coordinates match the closed kernel formula") {
  auto rng = make_rng(43);
  const auto basis = random_basis(rng, 4);
  const auto& theta = basis->theta();
  for (int t = 0; t < 8; ++t) {
    const Complex lambda = random_in_disk(rng, 0.85);
    const ModelVector kv = basis->kernel_coords(lambda);
    for (int s = 0; s < 8; ++s) {
      const Complex z = random_in_disk(rng, 0.85);
      const Complex direct = (1.0 - std::conj(theta.eval(lambda)) * theta.eval(z)) /
                             (1.0 - std::conj(lambda) * z);
      CHECK(std::abs(basis->eval(kv, z) - direct) <= 1e-11);
    }
  }
}

TEST_CASE("boundary kernel has squared norm |theta'|") {
  const auto square = make_basis(FiniteBlaschkeProduct::monomial(2));
  const ModelVector k1 = square->kernel_coords(Complex(1.0, 0.0));
  CHECK(k1.squaredNorm() == doctest::Approx(2.0).epsilon(1e-12));

  auto rng = make_rng(44);
  for (int k = 0; k < 8; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 4));
    const Complex zeta = random_unimodular(rng);
    const double norm2 = basis->kernel_coords(zeta).squaredNorm();
    CHECK(norm2 == doctest::Approx(std::abs(basis->theta().derivative(zeta)))
                       .epsilon(1e-8));
  }
}

TEST_CASE("projection annihilates the orthogonal complement") {
  auto rng = make_rng(45);
  const auto basis = random_basis(rng, 3);
  const auto& theta = basis->theta();
  // theta itself spans the complement inside degree bounded functions.
  const ModelVector pt = basis->project([&](Complex z) { return theta.eval(z); });
  CHECK(pt.norm() <= 1e-12);
  // Antianalytic samples project to zero as well.
  const ModelVector pa = basis->project([](Complex z) { return std::conj(z); });
  CHECK(pa.norm() <= 1e-12);
  // Basis functions project to unit coordinate vectors.
  const ModelVector p1 = basis->project([&](Complex z) { return basis->basis_eval(1, z); });
  ModelVector expected = ModelVector::Zero(3);
  expected(1) = 1.0;
  CHECK((p1 - expected).norm() <= 1e-12);
}

TEST_CASE("conjugation of the square space is the antidiagonal") {
  const auto basis = make_basis(FiniteBlaschkeProduct::monomial(2));
  const Eigen::MatrixXcd& j = basis->conjugation_matrix();
  Eigen::MatrixXcd expected(2, 2);
  expected << 0.0, 1.0, 1.0, 0.0;
  CHECK((j - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("conjugation is an isometric involution") {
  auto rng = make_rng(46);
  for (int k = 0; k < 10; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 4));
    const int n = basis->dimension();
    const Eigen::MatrixXcd& j = basis->conjugation_matrix();
    CHECK((j * j.conjugate() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff()
          <= 1e-10);
    const ModelVector f = random_coords(rng, n);
    const ModelVector g = random_coords(rng, n);
    const ModelVector cf = basis->apply_conjugation(f);
    const ModelVector cg = basis->apply_conjugation(g);
    // <Cf, Cg> = <g, f> for a conjugation.
    CHECK(std::abs(cg.dot(cf) - f.dot(g)) <= 1e-10 * f.norm() * g.norm());
    CHECK((basis->apply_conjugation(cf) - f).norm() <= 1e-10 * f.norm());
  }
}

TEST_CASE("conjugated kernels match the difference quotient") {
  auto rng = make_rng(47);
  for (int k = 0; k < 8; ++k) {
    const auto basis = random_basis(rng, 2 + static_cast<int>(k % 4));
    const Complex lambda = random_in_disk(rng, 0.85);
    const ModelVector via_conjugation =
        basis->apply_conjugation(basis->kernel_coords(lambda));
    const ModelVector direct = basis->conjugate_kernel_coords(lambda);
    CHECK((via_conjugation - direct).norm() <= 1e-9);
    // Pointwise check of the difference quotient formula.
    const auto& theta = basis->theta();
    for (int s = 0; s < 6; ++s) {
      const Complex z = random_in_disk(rng, 0.8);
      const Complex expected = (theta.eval(z) - theta.eval(lambda)) / (z - lambda);
      CHECK(std::abs(basis->eval(direct, z) - expected) <= 1e-10);
    }
  }
}

TEST_CASE("basis transition between zero orderings is unitary") {
  auto rng = make_rng(48);
  const std::vector<Complex> zeros{Complex(0.4, 0.1), Complex(-0.3, 0.25), Complex(0.1, -0.5)};
  std::vector<Complex> reversed(zeros.rbegin(), zeros.rend());
  const auto basis_a = make_basis(FiniteBlaschkeProduct::from_zeros(zeros));
  const auto basis_b = make_basis(FiniteBlaschkeProduct::from_zeros(reversed));
  REQUIRE(basis_a->same_space(*basis_b));
  REQUIRE(!basis_a->same_basis(*basis_b));

  const Eigen::MatrixXcd t = basis_transition(*basis_a, *basis_b);
  CHECK((t.adjoint() * t - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff()
        <= 1e-10);
  const ModelVector f = random_coords(rng, 3);
  const ModelVector g = t * f;
  for (int s = 0; s < 8; ++s) {
    const Complex z = random_in_disk(rng, 0.8);
    CHECK(std::abs(basis_a->eval(f, z) - basis_b->eval(g, z)) <= 1e-10 * (1.0 + f.norm()));
  }

  const auto other = make_basis(FiniteBlaschkeProduct::monomial(3));
  CHECK_THROWS_AS(basis_transition(*basis_a, *other), std::invalid_argument);
}

TEST_CASE("span helpers behave on simple data") {
  Eigen::MatrixXcd a(4, 2);
  a << 1, 1, 0, 0, 0, 1e-13, 0, 0;
  CHECK(span_dimension(a) == 1);

  Eigen::MatrixXcd b(4, 2);
  b << 1, 0, 0, 1, 0, 0, 0, 0;
  CHECK(span_dimension(b) == 2);
  CHECK(intersection_dimension(a, b) == 1);
  CHECK(span_gap(b, b) <= 1e-14);

  Eigen::VectorXcd v(4);
  v << 0, 0, 1, 0;
  CHECK(span_residual(b, v) == doctest::Approx(1.0));
  v << 1, 2, 0, 0;
  CHECK(span_residual(b, v) <= 1e-14);
}
