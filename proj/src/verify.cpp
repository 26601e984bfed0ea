#include "ttolab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ttolab/pick.hpp"
#include "ttolab/unitaries.hpp"

namespace ttolab {

namespace {

Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (;;) {
    const Complex z(dist(rng), dist(rng));
    if (std::abs(z) <= 1.0) return radius * z;
  }
}

ModelVector random_coords(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ModelVector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  return v;
}

void add_check(VerifyReport& report, const std::string& name, double residual,
               double tolerance) {
  report.checks.push_back({name, residual, tolerance, residual <= tolerance});
}

bool distinct_zeros(const FiniteBlaschkeProduct& theta) {
  const auto& zeros = theta.zeros();
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (std::size_t j = i + 1; j < zeros.size(); ++j) {
      if (std::abs(zeros[i].value() - zeros[j].value()) <= 1e-8) return false;
    }
  }
  return true;
}

// Worst distance between the two spectra under greedy nearest matching.  A
// lexicographic sort would be unstable for eigenvalue pairs whose real parts
// tie only up to rounding.
double spectrum_match_residual(const Eigen::MatrixXcd& m,
                               const std::vector<Complex>& expected) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(m);
  std::vector<bool> used(expected.size(), false);
  double worst = 0.0;
  for (int j = 0; j < eig.eigenvalues().size(); ++j) {
    const Complex e = eig.eigenvalues()(j);
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (!used[k] && std::abs(e - expected[k]) < best) {
        best = std::abs(e - expected[k]);
        pick = k;
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

bool VerifyReport::all_passed() const {
  for (const VerifyCheck& check : checks) {
    if (!check.passed) return false;
  }
  return true;
}

VerifyReport run_verify(const FiniteBlaschkeProduct& theta, std::uint64_t seed,
                        int quadrature_size, int max_degree) {
  if (theta.degree() > max_degree) {
    throw std::invalid_argument("degree exceeds verify limit");
  }

  VerifyReport report;
  report.degree = theta.degree();
  report.seed = seed;
  std::mt19937_64 rng(seed);

  const BasisPtr basis = make_basis(theta, quadrature_size);
  const int n = basis->dimension();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);

  // Reproducing kernels in coordinates.
  {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ModelVector f = random_coords(rng, n);
      const Complex lambda = random_in_disk(rng, 0.8);
      const ModelVector k = basis->kernel_coords(lambda);
      worst = std::max(worst, std::abs(k.dot(f) - basis->eval(f, lambda)));
    }
    add_check(report, "kernel-reproducing", worst, 1e-9);
  }

  // Conjugation is an isometric involution and maps kernels to conjugate
  // kernels.
  {
    double involution = 0.0;
    double isometry = 0.0;
    for (int t = 0; t < 10; ++t) {
      const ModelVector v = random_coords(rng, n);
      const ModelVector cv = basis->apply_conjugation(v);
      involution = std::max(
          involution, (basis->apply_conjugation(cv) - v).norm() / v.norm());
      isometry = std::max(isometry, std::abs(cv.norm() - v.norm()) / v.norm());
    }
    add_check(report, "conjugation-involution", involution, 1e-10);
    add_check(report, "conjugation-isometry", isometry, 1e-10);

    double kernel = 0.0;
    for (int t = 0; t < 5; ++t) {
      const Complex lambda = random_in_disk(rng, 0.8);
      const ModelVector lhs =
          basis->apply_conjugation(basis->kernel_coords(lambda));
      const ModelVector rhs = basis->conjugate_kernel_coords(lambda);
      kernel = std::max(kernel, (lhs - rhs).norm() / rhs.norm());
    }
    add_check(report, "conjugate-kernel", kernel, 1e-9);
  }

  // Algebra structure at a representative disk parameter.
  const ExtendedParameter inner_param =
      ExtendedParameter::classify(Complex(0.3, 0.0));
  const SedlockAlgebra algebra = sedlock_algebra(basis, inner_param);
  {
    const ExtendedParameter params[] = {
        ExtendedParameter::classify(Complex(0.0, 0.0)), inner_param,
        ExtendedParameter::classify(Complex(0.0, 0.5)),
        ExtendedParameter::classify(Complex(1.0, 0.0)),
        ExtendedParameter::classify(Complex(2.0, 0.0)),
        ExtendedParameter::infinity()};
    double dimension_gap = 0.0;
    for (const ExtendedParameter& a : params) {
      dimension_gap =
          std::max(dimension_gap,
                   std::abs(double(sedlock_algebra(basis, a).dimension() - n)));
    }
    add_check(report, "sedlock-dimension", dimension_gap, 0.1);

    double abelian = 0.0;
    for (int i = 0; i < algebra.dimension(); ++i) {
      for (int j = i + 1; j < algebra.dimension(); ++j) {
        abelian = std::max(
            abelian,
            commutator(algebra.elements[i], algebra.elements[j]).norm());
      }
    }
    add_check(report, "sedlock-abelian", abelian, 1e-9);

    const auto commutant_basis =
        commutant(sedlock_generator(basis, inner_param));
    Eigen::MatrixXcd commutant_span(n * n,
                                    static_cast<int>(commutant_basis.size()));
    for (std::size_t i = 0; i < commutant_basis.size(); ++i) {
      commutant_span.col(static_cast<int>(i)) = commutant_basis[i].vectorized();
    }
    add_check(report, "sedlock-commutant",
              span_gap(orthonormal_span(commutant_span), algebra.span), 1e-8);
  }

  // Clark case at a = 1.
  {
    const OperatorMatrix s =
        sedlock_generator(basis, ExtendedParameter::classify(Complex(1.0, 0.0)));
    add_check(report, "clark-unitary",
              (s.entries.adjoint() * s.entries - identity).cwiseAbs().maxCoeff(),
              1e-10);
    add_check(report, "clark-eigenvalues",
              spectrum_match_residual(s.entries,
                                      level_set(theta, Complex(1.0, 0.0))),
              1e-8);

    const ClarkMeasure measure = clark_measure(theta, UnimodularConstant());
    const Complex at_zero = theta.eval(Complex(0.0, 0.0));
    const double expected_mass =
        (1.0 - std::norm(at_zero)) / std::norm(Complex(1.0, 0.0) - at_zero);
    add_check(report, "clark-mass",
              std::abs(measure.total_mass() - expected_mass), 1e-8);
  }

  // Word identities of the three unitaries and the generator conjugation law.
  {
    const MoebiusAutomorphism psi(UnimodularConstant::from_angle(0.6),
                                  DiskPoint(Complex(0.25, -0.15)));
    const MoebiusAutomorphism phi(UnimodularConstant::from_angle(-0.9),
                                  DiskPoint(Complex(-0.1, 0.2)));
    const auto residuals = word_relation_residuals(
        basis, DiskPoint(Complex(0.3, 0.0)), DiskPoint(Complex(0.0, 0.2)), psi,
        phi);
    add_check(report, "word-relations",
              *std::max_element(residuals.begin(), residuals.end()), 1e-9);

    const DiskPoint a(Complex(0.3, 0.1));
    const SpatialUnitary u = crofoot_transform(basis, a);
    const OperatorMatrix conjugated =
        u.conjugate(sedlock_generator(basis, ExtendedParameter::classify(a.value())));
    const OperatorMatrix target = sedlock_generator(
        u.target(), ExtendedParameter::classify(Complex(0.0, 0.0)));
    add_check(report, "sarason-crofoot", (conjugated - target).norm(), 1e-9);
  }

  // Idempotent resolutions on both sides of the circle.
  {
    const DiskPoint a(Complex(0.3, 0.0));
    const auto idempotents = sedlock_idempotents(basis, a);
    double laws = 0.0;
    double norm_floor = std::numeric_limits<double>::infinity();
    OperatorMatrix sum = zero_operator(basis);
    for (std::size_t i = 0; i < idempotents.size(); ++i) {
      laws = std::max(laws,
                      (idempotents[i] * idempotents[i] - idempotents[i]).norm());
      for (std::size_t j = 0; j < idempotents.size(); ++j) {
        if (i != j) {
          laws = std::max(laws, (idempotents[i] * idempotents[j]).norm());
        }
      }
      norm_floor = std::min(norm_floor, idempotents[i].norm());
      sum = sum + idempotents[i];
    }
    laws = std::max(laws, (sum - identity_operator(basis)).norm());
    add_check(report, "idempotent-laws", laws, 1e-9);
    add_check(report, "idempotent-norms",
              std::max(0.0, 1.0 + 1e-6 - norm_floor), 0.0);

    const auto projections = clark_projections(basis, UnimodularConstant());
    double ortho = 0.0;
    OperatorMatrix psum = zero_operator(basis);
    for (const OperatorMatrix& p : projections) {
      ortho = std::max(ortho, (p * p - p).norm());
      ortho = std::max(ortho, (p - p.adjoint()).norm());
      ortho = std::max(ortho, std::abs(p.norm() - 1.0));
      psum = psum + p;
    }
    ortho = std::max(ortho, (psum - identity_operator(basis)).norm());
    add_check(report, "clark-projections", ortho, 1e-9);
  }

  // Compression norms against the Hankel distance.
  {
    const BoundarySymbol symbols[] = {
        BoundarySymbol::monomial(1),
        BoundarySymbol::analytic_polynomial({Complex(1.0, 0.0),
                                             Complex(1.0, 0.0)})};
    double worst = 0.0;
    for (const BoundarySymbol& phi : symbols) {
      worst = std::max(worst, std::abs(tto_matrix(basis, phi).norm() -
                                       nehari_distance(theta, phi)));
    }
    add_check(report, "nehari-identity", worst, 1e-8);
  }

  // Pick coordinates diagonalize coanalytic compressions; needs distinct
  // zeros.
  if (distinct_zeros(theta)) {
    const PickIdentification id = sedlock_to_pick(basis);
    const Eigen::MatrixXcd diagonal = to_pick_coordinates(
        id, tto_matrix(basis, BoundarySymbol::monomial(-1)));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      expected(j, j) = std::conj(theta.zeros()[j].value());
    }
    add_check(report, "pick-diagonal",
              (diagonal - expected).cwiseAbs().maxCoeff(), 1e-8);
  }

  return report;
}

std::string format_report(const VerifyReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "verify: degree %d, seed %llu\n",
                report.degree,
                static_cast<unsigned long long>(report.seed));
  out += line;
  std::snprintf(line, sizeof(line), "%-24s %-14s %-10s %s\n", "check",
                "residual", "tolerance", "status");
  out += line;
  int passed = 0;
  for (const VerifyCheck& check : report.checks) {
    std::snprintf(line, sizeof(line), "%-24s %-14.6e %-10.1e %s\n",
                  check.name.c_str(), check.residual, check.tolerance,
                  check.passed ? "pass" : "FAIL");
    out += line;
    if (check.passed) ++passed;
  }
  std::snprintf(line, sizeof(line), "result: %s (%d/%d checks passed)\n",
                report.all_passed() ? "pass" : "FAIL", passed,
                static_cast<int>(report.checks.size()));
  out += line;
  return out;
}

}  // namespace ttolab
