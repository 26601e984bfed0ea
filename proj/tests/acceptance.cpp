// End to end acceptance checks.  Each criterion prints a single pass/fail
// line; the exit status is the number of failed criteria.  The binary links
// the library alone so it exercises exactly what a consumer would see.
//
// Fixtures: z^2, z^3, two pinned degree three products, one degree five
// product with distinct zeros.  Sphere parameters: 0, 0.3, 0.5i, 1,
// e^{i pi/4}, 2, infinity.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ttolab/isodecider.hpp"
#include "ttolab/pick.hpp"
#include "ttolab/subspace.hpp"
#include "ttolab/verify.hpp"

using namespace ttolab;

namespace {

// Worst residual-over-tolerance ratio across all conditions of a criterion;
// a ratio above one fails, and boolean conditions count as ratio infinity.
struct Result {
  double worst_ratio = 0.0;

  void fold(double residual, double tol) {
    worst_ratio = std::max(worst_ratio, residual / tol);
  }
  void expect(bool condition) {
    if (!condition) {
      worst_ratio = std::numeric_limits<double>::infinity();
    }
  }
  bool passed() const { return worst_ratio <= 1.0; }
};

std::vector<FiniteBlaschkeProduct> fixtures() {
  return {
      FiniteBlaschkeProduct::monomial(2),
      FiniteBlaschkeProduct::monomial(3),
      FiniteBlaschkeProduct::from_zeros(
          {Complex(0.5, 0.0), Complex(-0.3, 0.35), Complex(0.1, -0.45)}),
      FiniteBlaschkeProduct::from_zeros(
          {Complex(-0.15, -0.2), Complex(0.35, 0.4), Complex(0.05, -0.55)},
          unit_circle_point(0.77)),
      FiniteBlaschkeProduct::from_zeros(
          {Complex(0.4, 0.1), Complex(-0.2, 0.3), Complex(0.1, -0.5),
           Complex(-0.45, -0.15), Complex(0.6, 0.2)}),
  };
}

std::vector<ExtendedParameter> sphere_parameters() {
  return {ExtendedParameter::classify(Complex(0.0, 0.0)),
          ExtendedParameter::classify(Complex(0.3, 0.0)),
          ExtendedParameter::classify(Complex(0.0, 0.5)),
          ExtendedParameter::classify(Complex(1.0, 0.0)),
          ExtendedParameter::classify(unit_circle_point(kPi / 4.0)),
          ExtendedParameter::classify(Complex(2.0, 0.0)),
          ExtendedParameter::infinity()};
}

Complex random_in_disk(std::mt19937_64& rng, double max_radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = max_radius * std::sqrt(unit(rng));
  return r * unit_circle_point(2.0 * kPi * unit(rng));
}

ModelVector random_coords(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  ModelVector v(n);
  for (int j = 0; j < n; ++j) v(j) = Complex(gauss(rng), gauss(rng));
  return v;
}

// psi(z) = lambda (z - c)/(1 - conj(c) z) as a rational boundary symbol.
BoundarySymbol automorphism_symbol(const MoebiusAutomorphism& psi) {
  const Complex lambda = psi.lambda().value();
  const Complex c = psi.c().value();
  return BoundarySymbol::rational({-lambda * c, lambda}, {1.0, -std::conj(c)});
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return std::max((u.adjoint() * u - id).cwiseAbs().maxCoeff(),
                  (u * u.adjoint() - id).cwiseAbs().maxCoeff());
}

// Worst distance between the spectrum of m and the expected values under
// greedy nearest matching.
double spectrum_match(const Eigen::MatrixXcd& m,
                      const std::vector<Complex>& expected) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(m);
  std::vector<bool> used(expected.size(), false);
  double worst = 0.0;
  for (int j = 0; j < eig.eigenvalues().size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const double d = std::abs(eig.eigenvalues()(j) - expected[k]);
      if (!used[k] && d < best) {
        best = d;
        pick = k;
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

Eigen::MatrixXcd stacked_span(const std::vector<OperatorMatrix>& ops) {
  Eigen::MatrixXcd span(ops.front().entries.size(),
                        static_cast<int>(ops.size()));
  for (std::size_t j = 0; j < ops.size(); ++j) {
    span.col(static_cast<int>(j)) = ops[j].vectorized();
  }
  return span;
}

Result kernel_calculus() {
  Result r;
  std::mt19937_64 rng(2026);
  for (const auto& theta : fixtures()) {
    const BasisPtr basis = make_basis(theta);
    for (int t = 0; t < 20; ++t) {
      const ModelVector f = random_coords(rng, basis->dimension());
      const Complex lambda = random_in_disk(rng, 0.85);
      const ModelVector k = basis->kernel_coords(lambda);
      r.fold(std::abs(k.dot(f) - basis->eval(f, lambda)), 1e-9);
    }
  }
  return r;
}

Result conjugation() {
  Result r;
  std::mt19937_64 rng(2027);
  for (const auto& theta : fixtures()) {
    const BasisPtr basis = make_basis(theta);
    for (int t = 0; t < 10; ++t) {
      const ModelVector v = random_coords(rng, basis->dimension());
      const ModelVector cv = basis->apply_conjugation(v);
      r.fold((basis->apply_conjugation(cv) - v).norm() / v.norm(), 1e-10);
      r.fold(std::abs(cv.norm() - v.norm()) / v.norm(), 1e-10);
    }
    for (int t = 0; t < 5; ++t) {
      const Complex lambda = random_in_disk(rng, 0.85);
      const ModelVector lhs =
          basis->apply_conjugation(basis->kernel_coords(lambda));
      const ModelVector rhs = basis->conjugate_kernel_coords(lambda);
      r.fold((lhs - rhs).norm() / rhs.norm(), 1e-9);
    }
  }
  return r;
}

Result sedlock_structure() {
  Result r;
  const auto params = sphere_parameters();
  for (const auto& theta : fixtures()) {
    const BasisPtr basis = make_basis(theta);
    const int n = basis->dimension();
    std::vector<SedlockAlgebra> algebras;
    for (const auto& a : params) algebras.push_back(sedlock_algebra(basis, a));

    for (std::size_t i = 0; i < algebras.size(); ++i) {
      const SedlockAlgebra& algebra = algebras[i];
      r.expect(algebra.dimension() == n);
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          r.fold(commutator(algebra.elements[x], algebra.elements[y]).norm(),
                 1e-9);
        }
      }
      const auto comm = commutant(sedlock_generator(basis, params[i]));
      r.expect(static_cast<int>(comm.size()) == n);
      r.fold(span_gap(orthonormal_span(stacked_span(comm)), algebra.span),
             1e-9);

      std::vector<OperatorMatrix> adjoints;
      for (const auto& m : algebra.elements) adjoints.push_back(m.adjoint());
      const SedlockAlgebra flipped =
          sedlock_algebra(basis, conj_flip(params[i]));
      r.fold(span_gap(orthonormal_span(stacked_span(adjoints)), flipped.span),
             1e-9);

      for (std::size_t j = i + 1; j < algebras.size(); ++j) {
        r.expect(intersection_dimension(algebras[i].span, algebras[j].span) ==
                 1);
      }
    }
  }
  return r;
}

Result clark_case() {
  Result r;
  const Complex circle_values[] = {Complex(1.0, 0.0),
                                   unit_circle_point(kPi / 4.0)};
  for (const auto& theta : fixtures()) {
    const BasisPtr basis = make_basis(theta);
    for (const Complex& a : circle_values) {
      const OperatorMatrix s =
          sedlock_generator(basis, ExtendedParameter::classify(a));
      r.fold(unitarity_defect(s.entries), 1e-10);
      r.fold(spectrum_match(s.entries, level_set(theta, a)), 1e-8);

      const ClarkMeasure measure =
          clark_measure(theta, UnimodularConstant(a));
      const Complex at_zero = theta.eval(Complex(0.0, 0.0));
      const double herglotz =
          (1.0 - std::norm(at_zero)) / std::norm(a - at_zero);
      r.fold(std::abs(measure.total_mass() - herglotz), 1e-8);
    }
  }
  return r;
}

Result unitary_identities() {
  Result r;
  const MoebiusAutomorphism psi(UnimodularConstant::from_angle(0.6),
                                DiskPoint(Complex(0.25, -0.15)));
  const MoebiusAutomorphism phi(UnimodularConstant::from_angle(-0.9),
                                DiskPoint(Complex(-0.1, 0.2)));
  for (const auto& theta : fixtures()) {
    const BasisPtr basis = make_basis(theta);
    const auto residuals = word_relation_residuals(
        basis, DiskPoint(Complex(0.3, 0.0)), DiskPoint(Complex(0.0, 0.2)), psi,
        phi);
    for (double w : residuals) r.fold(w, 1e-9);

    const DiskPoint a(Complex(0.3, 0.1));
    const SpatialUnitary u = crofoot_transform(basis, a);
    const OperatorMatrix conjugated = u.conjugate(
        sedlock_generator(basis, ExtendedParameter::classify(a.value())));
    const OperatorMatrix plain = sedlock_generator(
        u.target(), ExtendedParameter::classify(Complex(0.0, 0.0)));
    r.fold((conjugated - plain).norm(), 1e-9);

    const SpatialUnitary uc = composition_unitary(basis, psi);
    const BoundarySymbol substituted = automorphism_symbol(psi);
    r.fold((uc.conjugate(tto_matrix(basis, BoundarySymbol::monomial(1))) -
            tto_matrix(uc.target(), substituted))
               .norm(),
           1e-9);
    r.fold((uc.conjugate(tto_matrix(basis, BoundarySymbol::monomial(2))) -
            tto_matrix(uc.target(), substituted * substituted))
               .norm(),
           1e-9);

    const SpatialUnitary us = sharp_unitary(basis);
    for (int k = 1; k <= 2; ++k) {
      const BoundarySymbol reflected =
          BoundarySymbol::trig_polynomial({{-k, Complex(1.0, 0.0)}});
      r.fold((us.conjugate(tto_matrix(basis, BoundarySymbol::monomial(k))) -
              tto_matrix(us.target(), reflected))
                 .norm(),
             1e-9);
    }
  }
  return r;
}

Result sedlock_images() {
  Result r;
  const MoebiusAutomorphism psi(UnimodularConstant::from_angle(0.6),
                                DiskPoint(Complex(0.25, -0.15)));
  for (const auto& theta : fixtures()) {
    const BasisPtr basis = make_basis(theta);
    const int n = basis->dimension();
    std::vector<SpatialUnitary> unitaries;
    unitaries.push_back(
        crofoot_transform(basis, DiskPoint(Complex(0.25, -0.1))));
    unitaries.push_back(composition_unitary(basis, psi));
    unitaries.push_back(sharp_unitary(basis));

    for (const SpatialUnitary& u : unitaries) {
      for (const auto& a : sphere_parameters()) {
        const SedlockAlgebra source = sedlock_algebra(basis, a);
        Eigen::MatrixXcd conjugated(n * n, n);
        for (int j = 0; j < n; ++j) {
          conjugated.col(j) = u.conjugate(source.elements[j]).vectorized();
        }
        const SedlockAlgebra image =
            sedlock_algebra(u.target(), lambda_image(u, a));
        r.fold(span_gap(orthonormal_span(conjugated), image.span), 1e-8);
      }
    }
  }
  return r;
}

Result decision_theory() {
  Result r;
  const DeciderOptions options;
  using Verdict = IsoDecision::Verdict;

  const auto check_witness = [&r](const IsoQuery& query,
                                  const IsoDecision& decision) {
    r.expect(decision.witness.has_value());
    if (decision.witness.has_value()) {
      r.fold(witness_equation_residual(query, *decision.witness), 1e-8);
      r.fold(witness_span_residual(query, *decision.witness), 1e-8);
    }
  };

  // Monomial modulus law on the cube.
  const auto cube = FiniteBlaschkeProduct::monomial(3);
  {
    const IsoQuery query{cube, ExtendedParameter::classify(Complex(0.3, 0.0)),
                         cube, ExtendedParameter::classify(Complex(0.0, 0.3))};
    const IsoDecision d = decide(query, options);
    r.expect(d.verdict == Verdict::Equivalent);
    check_witness(query, d);
  }
  {
    const IsoDecision d = decide(
        {cube, ExtendedParameter::classify(Complex(0.3, 0.0)), cube,
         ExtendedParameter::classify(Complex(0.5, 0.0))},
        options);
    r.expect(d.verdict == Verdict::NotEquivalent);
  }

  for (const auto& theta : fixtures()) {
    // Circle pair and circle against disk.
    const IsoDecision circle_pair = decide(
        {theta, ExtendedParameter::classify(Complex(1.0, 0.0)), theta,
         ExtendedParameter::classify(unit_circle_point(kPi / 4.0))},
        options);
    r.expect(circle_pair.verdict == Verdict::Equivalent);

    const IsoDecision mixed = decide(
        {theta, ExtendedParameter::classify(Complex(1.0, 0.0)), theta,
         ExtendedParameter::classify(Complex(0.3, 0.0))},
        options);
    r.expect(mixed.verdict == Verdict::NotEquivalent);
  }

  // Odd product: negating the parameter is implemented by psi(z) = -z.
  {
    const auto odd = FiniteBlaschkeProduct::from_zeros(
        {Complex(0.0, 0.0), Complex(0.45, 0.0), Complex(-0.45, 0.0)});
    const IsoQuery query{odd, ExtendedParameter::classify(Complex(0.35, 0.0)),
                         odd,
                         ExtendedParameter::classify(Complex(-0.35, 0.0))};
    const IsoDecision d = decide(query, options);
    r.expect(d.verdict == Verdict::Equivalent);
    check_witness(query, d);
  }

  // Zeros on a common ray: 0 and infinity are linked through the reflection.
  {
    const auto ray = FiniteBlaschkeProduct::from_zeros(
        {Complex(0.0, 0.3), Complex(0.0, 0.7)});
    const IsoQuery query{ray, ExtendedParameter::classify(Complex(0.0, 0.0)),
                         ray, ExtendedParameter::infinity()};
    const IsoDecision d = decide(query, options);
    r.expect(d.verdict == Verdict::Equivalent);
    check_witness(query, d);
  }
  return r;
}

Result idempotents() {
  Result r;
  const auto theta = fixtures()[2];
  const BasisPtr basis = make_basis(theta);
  const int n = basis->dimension();

  const auto spectral = sedlock_idempotents(basis, DiskPoint(Complex(0.3, 0.0)));
  OperatorMatrix sum = zero_operator(basis);
  for (std::size_t i = 0; i < spectral.size(); ++i) {
    r.fold((spectral[i] * spectral[i] - spectral[i]).norm(), 1e-9);
    for (std::size_t j = 0; j < spectral.size(); ++j) {
      if (i != j) r.fold((spectral[i] * spectral[j]).norm(), 1e-9);
    }
    r.expect(spectral[i].norm() > 1.0 + 1e-6);
    sum = sum + spectral[i];
  }
  r.fold((sum - identity_operator(basis)).norm(), 1e-9);
  r.expect(static_cast<int>(spectral.size()) == n);

  const Complex circle_values[] = {Complex(1.0, 0.0),
                                   unit_circle_point(kPi / 4.0)};
  for (const Complex& a : circle_values) {
    const auto projections = clark_projections(basis, UnimodularConstant(a));
    OperatorMatrix psum = zero_operator(basis);
    for (const OperatorMatrix& p : projections) {
      r.fold((p * p - p).norm(), 1e-9);
      r.fold((p - p.adjoint()).norm(), 1e-9);
      r.fold(std::abs(p.norm() - 1.0), 1e-9);
      psum = psum + p;
    }
    r.fold((psum - identity_operator(basis)).norm(), 1e-9);
  }
  return r;
}

Result nehari_identity() {
  Result r;
  const BoundarySymbol symbols[] = {
      BoundarySymbol::monomial(1), BoundarySymbol::monomial(2),
      BoundarySymbol::analytic_polynomial(
          {Complex(1.0, 0.0), Complex(1.0, 0.0)})};
  for (const auto& theta : fixtures()) {
    const BasisPtr basis = make_basis(theta);
    for (const BoundarySymbol& phi : symbols) {
      r.fold(std::abs(tto_matrix(basis, phi).norm() -
                      nehari_distance(theta, phi)),
             1e-8);
    }
  }
  return r;
}

Result pick_model() {
  Result r;
  const auto all = fixtures();
  for (std::size_t f = 0; f < all.size(); ++f) {
    const FiniteBlaschkeProduct& theta = all[f];
    const BasisPtr basis = make_basis(theta);
    const bool distinct = f >= 2;

    if (distinct) {
      const PickIdentification id = sedlock_to_pick(basis);
      const int n = basis->dimension();
      const Eigen::MatrixXcd gram = id.space.gram();
      r.fold((id.to_pick.adjoint() * gram * id.to_pick -
              Eigen::MatrixXcd::Identity(n, n))
                 .cwiseAbs()
                 .maxCoeff(),
             1e-9);
      r.fold((id.to_pick * id.from_pick -
              Eigen::MatrixXcd::Identity(n, n))
                 .cwiseAbs()
                 .maxCoeff(),
             1e-9);

      const Eigen::MatrixXcd diagonal = to_pick_coordinates(
          id, tto_matrix(basis, BoundarySymbol::monomial(-1)));
      Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        expected(j, j) = std::conj(id.space.nodes()[j].value());
      }
      r.fold((diagonal - expected).cwiseAbs().maxCoeff(), 1e-8);
    }

    // Norm profiles: all ones exactly on the circle, all above one off it.
    // The resolution needs a simple level set, so the monomial fixtures skip
    // the 0 and infinity columns.
    for (const auto& a : sphere_parameters()) {
      const bool degenerate =
          !distinct && (a.is_infinite() ||
                        (a.kind() == ExtendedParameter::Kind::Disk &&
                         a.modulus() == 0.0));
      if (degenerate) continue;
      const auto profile = idempotent_norm_profile(sedlock_algebra(basis, a));
      r.expect(static_cast<int>(profile.size()) == basis->dimension());
      if (a.kind() == ExtendedParameter::Kind::Circle) {
        for (double p : profile) r.fold(std::abs(p - 1.0), 1e-6);
      } else {
        for (double p : profile) r.expect(p > 1.0 + 1e-6);
      }
    }
  }
  return r;
}

Result determinism() {
  Result r;
  const auto theta = FiniteBlaschkeProduct::monomial(3);
  const std::string first = format_report(run_verify(theta, 12345, 0, 8));
  const std::string second = format_report(run_verify(theta, 12345, 0, 8));
  r.expect(!first.empty() && first == second);

  // When the driver binary is reachable, compare its two reports bytewise as
  // well.
  const char* cli = std::getenv("TTOLAB_CLI");
  if (cli != nullptr) {
    const char* tmpdir = std::getenv("TTOLAB_TMPDIR");
    const std::string dir = tmpdir != nullptr ? tmpdir : "/tmp";
    const std::string input = dir + "/acceptance_cube.json";
    {
      std::ofstream out(input);
      out << "{\"zeros\":[[0.0,0.0],[0.0,0.0],[0.0,0.0]]}\n";
    }
    std::array<std::string, 2> outputs;
    for (int run = 0; run < 2; ++run) {
      const std::string path =
          dir + "/acceptance_verify_" + std::to_string(run) + ".txt";
      const std::string command = std::string(cli) + " verify --seed 12345 " +
                                  "--input " + input + " --output " + path;
      r.expect(std::system(command.c_str()) == 0);
      std::ifstream in(path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      outputs[run] = buffer.str();
    }
    r.expect(!outputs[0].empty() && outputs[0] == outputs[1]);
  }
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Result (*run)();
  };
  const Criterion criteria[] = {
      {"kernel-calculus", kernel_calculus},
      {"conjugation", conjugation},
      {"sedlock-structure", sedlock_structure},
      {"clark-case", clark_case},
      {"unitary-identities", unitary_identities},
      {"sedlock-images", sedlock_images},
      {"decision-theory", decision_theory},
      {"idempotents", idempotents},
      {"nehari-identity", nehari_identity},
      {"pick-model", pick_model},
      {"determinism", determinism},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Result result;
    try {
      result = criterion.run();
    } catch (const std::exception& error) {
      result.expect(false);
      std::fprintf(stderr, "criterion %2d threw: %s\n", index, error.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("criterion %2d  %-20s %s  (worst residual/tol %.3e, %.2f s)\n",
                index, criterion.name, result.passed() ? "pass" : "FAIL",
                result.worst_ratio, seconds);
    if (!result.passed()) ++failures;
  }
  std::printf("acceptance: %s (%d/11 criteria passed)\n",
              failures == 0 ? "pass" : "FAIL", 11 - failures);
  return failures;
}
