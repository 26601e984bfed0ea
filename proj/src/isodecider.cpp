#include "ttolab/isodecider.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ttolab {

namespace {

// Search parameters stay strictly inside the disk; anything at or beyond this
// radius is rejected with a penalty well above any feasible equation error.
constexpr double kRadiusLimit = 0.999;
constexpr double kPenaltyBase = 4.0;

void validate_options(const DeciderOptions& options) {
  if (options.tol_accept <= 0.0 || options.tol_reject <= options.tol_accept) {
    throw std::invalid_argument(
        "DeciderOptions: need 0 < tol_accept < tol_reject");
  }
  if (options.equation_samples < 8 || options.grid_angles < 1 ||
      options.grid_offsets.empty() || options.max_iterations < 1) {
    throw std::invalid_argument("DeciderOptions: degenerate search controls");
  }
}

std::vector<Complex> circle_samples(int count, double offset) {
  std::vector<Complex> xi(count);
  for (int m = 0; m < count; ++m) {
    xi[m] = unit_circle_point(2.0 * kPi * (m + offset) / count);
  }
  return xi;
}

// b_{-a1}(zeta * b_{a2}(w)), the twisted factor pair of the equation.
Complex twisted_eval(const DiskPoint& a1, const DiskPoint& a2, Complex zeta,
                     Complex w) {
  const Complex inner = zeta * blaschke_factor_eval(a2, w);
  return (inner + a1.value()) / (1.0 + std::conj(a1.value()) * inner);
}

double equation_max_error(const FiniteBlaschkeProduct& theta2,
                          const DiskPoint& a1, const DiskPoint& a2,
                          Complex zeta, const MoebiusAutomorphism& psi,
                          const std::vector<Complex>& xi,
                          const std::vector<Complex>& theta1_values) {
  double worst = 0.0;
  for (std::size_t m = 0; m < xi.size(); ++m) {
    const Complex w = theta2.eval(psi.eval(xi[m]));
    const double err =
        std::abs(theta1_values[m] - twisted_eval(a1, a2, zeta, w));
    if (err > worst) worst = err;
  }
  return std::isfinite(worst) ? worst : kPenaltyBase;
}

// ---------------------------------------------------------------------------
// Downhill simplex with the standard reflection 1, expansion 2, contraction
// and shrink 1/2 schedule.  Vertices are ordered by value with lexicographic
// ties, so runs are reproducible.  Starts that have collapsed onto a local
// minimum far above the rejection threshold are abandoned early; a start is
// only abandoned once its simplex is too small to travel anywhere else.

struct SimplexResult {
  Eigen::VectorXd point;
  double value = 0.0;
};

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start,
                          const Eigen::VectorXd& steps, int max_iterations,
                          double tol, double hopeless_above) {
  const int dim = static_cast<int>(start.size());
  struct Vertex {
    Eigen::VectorXd x;
    double fx;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({start, f(start)});
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd x = start;
    x[i] += steps[i];
    simplex.push_back({x, f(x)});
  }

  auto less = [](const Vertex& l, const Vertex& r) {
    if (l.fx != r.fx) return l.fx < r.fx;
    for (int i = 0; i < l.x.size(); ++i) {
      if (l.x[i] != r.x[i]) return l.x[i] < r.x[i];
    }
    return false;
  };
  std::stable_sort(simplex.begin(), simplex.end(), less);

  for (int iter = 0; iter < max_iterations; ++iter) {
    double diameter = 0.0;
    for (int i = 1; i <= dim; ++i) {
      diameter = std::max(diameter,
                          (simplex[i].x - simplex[0].x).cwiseAbs().maxCoeff());
    }
    const double spread = simplex[dim].fx - simplex[0].fx;
    if (diameter <= tol && spread <= tol) break;
    if (diameter <= 1e-4 && simplex[0].fx > hopeless_above) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += simplex[i].x;
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[dim].x);
    const double f_reflected = f(reflected);
    if (f_reflected < simplex[0].fx) {
      const Eigen::VectorXd expanded =
          centroid + 2.0 * (centroid - simplex[dim].x);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[dim] = {expanded, f_expanded};
      } else {
        simplex[dim] = {reflected, f_reflected};
      }
    } else if (f_reflected < simplex[dim - 1].fx) {
      simplex[dim] = {reflected, f_reflected};
    } else {
      const bool outside = f_reflected < simplex[dim].fx;
      const Eigen::VectorXd contracted =
          outside ? centroid + 0.5 * (reflected - centroid)
                  : centroid + 0.5 * (simplex[dim].x - centroid);
      const double f_contracted = f(contracted);
      if (f_contracted < (outside ? f_reflected : simplex[dim].fx)) {
        simplex[dim] = {contracted, f_contracted};
      } else {
        for (int i = 1; i <= dim; ++i) {
          simplex[i].x = simplex[0].x + 0.5 * (simplex[i].x - simplex[0].x);
          simplex[i].fx = f(simplex[i].x);
        }
      }
    }
    std::stable_sort(simplex.begin(), simplex.end(), less);
  }
  return {simplex[0].x, simplex[0].fx};
}

// ---------------------------------------------------------------------------
// Reduction of one query side to the disk form of the equation.

struct ReducedSide {
  FiniteBlaschkeProduct theta;
  DiskPoint a;
  bool sharped = false;
};

ReducedSide reduce_side(const FiniteBlaschkeProduct& theta,
                        const ExtendedParameter& a) {
  switch (a.kind()) {
    case ExtendedParameter::Kind::Disk:
      return {theta, DiskPoint(a.value()), false};
    case ExtendedParameter::Kind::Exterior:
      return {theta.sharp(), DiskPoint(Complex(1.0, 0.0) / a.value()), true};
    case ExtendedParameter::Kind::Infinity:
      return {theta.sharp(), DiskPoint(), true};
    case ExtendedParameter::Kind::Circle:
      break;
  }
  throw std::logic_error("reduce_side: circle parameter has no disk form");
}

bool is_monomial_like(const FiniteBlaschkeProduct& theta) {
  for (const DiskPoint& z : theta.zeros()) {
    if (z.modulus() > kParamTol) return false;
  }
  return true;
}

// Closed law for theta_i = gamma_i z^n with n >= 2: equivalent exactly when
// the parameter moduli agree, with witness zeta = a1/a2 and a rotation psi.
std::optional<IsoDecision> monomial_decision(const FiniteBlaschkeProduct& t1,
                                             const FiniteBlaschkeProduct& t2,
                                             const DiskPoint& a1,
                                             const DiskPoint& a2,
                                             const DeciderOptions& options) {
  const int n = t1.degree();
  if (n < 2 || !is_monomial_like(t1) || !is_monomial_like(t2)) {
    return std::nullopt;
  }

  IsoDecision decision;
  if (std::abs(a1.modulus() - a2.modulus()) > kParamTol) {
    decision.verdict = IsoDecision::Verdict::NotEquivalent;
    decision.reason = "modulus-invariant";
    return decision;
  }

  const Complex g1 = t1.gamma().value();
  const Complex g2 = t2.gamma().value();
  Complex zeta_value(1.0, 0.0);
  Complex rotation_power = g1 / g2;
  if (a1.modulus() > kParamTol) {
    zeta_value = a1.value() / a2.value();
    rotation_power = g1 * a2.value() / (g2 * a1.value());
  }
  MoebiusWitness witness;
  witness.zeta = UnimodularConstant(zeta_value);
  witness.psi = MoebiusAutomorphism::rotation(
      UnimodularConstant::from_angle(std::arg(rotation_power) / n));

  const auto fresh = circle_samples(256, 0.25);
  std::vector<Complex> t1_values(fresh.size());
  for (std::size_t m = 0; m < fresh.size(); ++m) t1_values[m] = t1.eval(fresh[m]);
  witness.residual = equation_max_error(t2, a1, a2, witness.zeta.value(),
                                        witness.psi, fresh, t1_values);
  if (witness.residual >= options.tol_accept) return std::nullopt;

  decision.verdict = IsoDecision::Verdict::Equivalent;
  decision.reason = "monomial-law";
  decision.best_residual = witness.residual;
  decision.witness = witness;
  return decision;
}

// Deterministic start list: the full grid is evaluated once and sorted by
// initial objective value (ties by grid index), so promising basins are
// explored first and trivial solutions return immediately.
struct GridStart {
  Eigen::VectorXd point;
  double value = 0.0;
  int index = 0;
};

std::vector<GridStart> ranked_starts(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const DeciderOptions& options, bool with_zeta) {
  std::vector<GridStart> starts;
  const int angles = options.grid_angles;
  const int zeta_count = with_zeta ? angles : 1;
  starts.reserve(static_cast<std::size_t>(zeta_count) * angles *
                 options.grid_offsets.size() * options.grid_offsets.size());
  int index = 0;
  for (int i = 0; i < zeta_count; ++i) {
    const double theta0 = 2.0 * kPi * i / angles;
    for (int j = 0; j < angles; ++j) {
      const double alpha0 = 2.0 * kPi * j / angles;
      for (double cr : options.grid_offsets) {
        for (double ci : options.grid_offsets) {
          if (std::hypot(cr, ci) >= kRadiusLimit) continue;
          GridStart start;
          start.point = with_zeta ? (Eigen::VectorXd(4) << theta0, alpha0, cr,
                                     ci).finished()
                                  : (Eigen::VectorXd(3) << alpha0, cr, ci)
                                        .finished();
          start.value = objective(start.point);
          start.index = index++;
          starts.push_back(std::move(start));
        }
      }
    }
  }
  std::stable_sort(starts.begin(), starts.end(),
                   [](const GridStart& l, const GridStart& r) {
                     if (l.value != r.value) return l.value < r.value;
                     return l.index < r.index;
                   });
  return starts;
}

}  // namespace

KappaInvariant kappa(const ClarkMeasure& measure) {
  KappaInvariant invariant;
  invariant.continuous_components = 0;
  invariant.atom_count = static_cast<int>(measure.atoms.size());
  return invariant;
}

IsoDecision functional_equation_solve(const FiniteBlaschkeProduct& theta1,
                                      const FiniteBlaschkeProduct& theta2,
                                      const DiskPoint& a1, const DiskPoint& a2,
                                      const DeciderOptions& options) {
  validate_options(options);
  if (theta1.degree() != theta2.degree()) {
    throw std::invalid_argument(
        "functional_equation_solve: degrees must agree");
  }

  if (auto closed = monomial_decision(theta1, theta2, a1, a2, options)) {
    return *closed;
  }

  const auto xi = circle_samples(options.equation_samples, 0.5);
  std::vector<Complex> theta1_values(xi.size());
  for (std::size_t m = 0; m < xi.size(); ++m) {
    theta1_values[m] = theta1.eval(xi[m]);
  }

  const auto objective = [&](const Eigen::VectorXd& x) -> double {
    const double radius = std::hypot(x[2], x[3]);
    if (radius >= kRadiusLimit) return kPenaltyBase + (radius - kRadiusLimit);
    const Complex zeta = unit_circle_point(x[0]);
    const MoebiusAutomorphism psi(UnimodularConstant::from_angle(x[1]),
                                  DiskPoint(Complex(x[2], x[3])));
    return equation_max_error(theta2, a1, a2, zeta, psi, xi, theta1_values);
  };

  const auto fresh = circle_samples(256, 0.25);
  std::vector<Complex> fresh_values(fresh.size());
  for (std::size_t m = 0; m < fresh.size(); ++m) {
    fresh_values[m] = theta1.eval(fresh[m]);
  }

  // Converged candidates are re-polished and then re-verified on samples the
  // optimizer never saw; only a verified witness produces Equivalent.
  const auto try_accept =
      [&](const Eigen::VectorXd& point) -> std::optional<MoebiusWitness> {
    Eigen::VectorXd steps(4);
    steps << 1e-3, 1e-3, 5e-4, 5e-4;
    const SimplexResult polished =
        nelder_mead(objective, point, steps, 200,
                    std::min(options.convergence_tol, 1e-14), kPenaltyBase);
    if (std::hypot(polished.point[2], polished.point[3]) >= kRadiusLimit) {
      return std::nullopt;
    }
    MoebiusWitness witness;
    witness.zeta = UnimodularConstant::from_angle(polished.point[0]);
    witness.psi = MoebiusAutomorphism(
        UnimodularConstant::from_angle(polished.point[1]),
        DiskPoint(Complex(polished.point[2], polished.point[3])));
    witness.residual =
        equation_max_error(theta2, a1, a2, witness.zeta.value(), witness.psi,
                           fresh, fresh_values);
    if (witness.residual >= options.tol_accept) return std::nullopt;
    return witness;
  };

  IsoDecision decision;
  decision.best_residual = std::numeric_limits<double>::infinity();

  Eigen::VectorXd steps(4);
  steps << 0.35, 0.35, 0.12, 0.12;
  const auto starts = ranked_starts(objective, options, true);
  for (const GridStart& start : starts) {
    ++decision.starts_used;
    const SimplexResult run =
        nelder_mead(objective, start.point, steps, options.max_iterations,
                    options.convergence_tol, 10.0 * options.tol_reject);
    decision.best_residual = std::min(decision.best_residual, run.value);
    if (run.value < options.tol_accept) {
      if (auto witness = try_accept(run.point)) {
        decision.verdict = IsoDecision::Verdict::Equivalent;
        decision.reason = "functional-equation";
        decision.best_residual = witness->residual;
        decision.witness = *witness;
        return decision;
      }
    }
  }

  decision.verdict = IsoDecision::Verdict::Undetermined;
  decision.reason = "search-exhausted";
  return decision;
}

namespace {

Rigidity plain_equation_rigidity(const FiniteBlaschkeProduct& theta,
                                 const DeciderOptions& options);

}  // namespace

IsoDecision decide(const IsoQuery& query, const DeciderOptions& options) {
  validate_options(options);
  const bool circle1 = query.a1.on_circle();
  const bool circle2 = query.a2.on_circle();

  if (circle1 && circle2) {
    IsoDecision decision;
    const KappaInvariant k1 =
        kappa(clark_measure(query.theta1, UnimodularConstant(query.a1.value())));
    const KappaInvariant k2 =
        kappa(clark_measure(query.theta2, UnimodularConstant(query.a2.value())));
    decision.verdict = (k1 == k2) ? IsoDecision::Verdict::Equivalent
                                  : IsoDecision::Verdict::NotEquivalent;
    decision.reason = "clark-kappa";
    return decision;
  }
  if (circle1 != circle2) {
    IsoDecision decision;
    decision.verdict = IsoDecision::Verdict::NotEquivalent;
    decision.reason = "normal-vs-nonnormal";
    return decision;
  }

  const ReducedSide side1 = reduce_side(query.theta1, query.a1);
  const ReducedSide side2 = reduce_side(query.theta2, query.a2);
  if (side1.theta.degree() != side2.theta.degree()) {
    IsoDecision decision;
    decision.verdict = IsoDecision::Verdict::NotEquivalent;
    decision.reason = "degree-mismatch";
    return decision;
  }

  IsoDecision decision = functional_equation_solve(side1.theta, side2.theta,
                                                   side1.a, side2.a, options);
  if (decision.witness) {
    decision.witness->sharp1 = side1.sharped;
    decision.witness->sharp2 = side2.sharped;
  }

  // Same function, distinct parameters: an exhausted search upgrades to a
  // rejection when the function has no symmetry that could ever move the
  // parameter.  Only the plain equation matters here: a transport witness
  // between distinct parameters of one function composes with the parameter
  // shifts into a symmetry phi o theta = theta o psi whose phi moves one
  // parameter to the other, hence is not the identity.  The reflected
  // equation only produces identifications across the circle and cannot
  // block or enable a disk to disk transport.
  if (decision.verdict == IsoDecision::Verdict::Undetermined &&
      side1.theta.same_function(side2.theta) &&
      std::abs(side1.a.value() - side2.a.value()) > kParamTol) {
    bool rigid = false;
    try {
      rigid = plain_equation_rigidity(side1.theta, options) == Rigidity::Rigid;
    } catch (const std::runtime_error&) {
      rigid = false;
    }
    if (rigid) {
      decision.verdict = IsoDecision::Verdict::NotEquivalent;
      decision.reason = "rigid-theta";
    }
  }
  return decision;
}

namespace {

// Moebius map as a coefficient quadruple, for the three point fit used by the
// rigidity search.
struct MobiusCoefficients {
  Complex a, b, c, d;

  Complex eval(Complex z) const {
    const Complex den = c * z + d;
    if (std::abs(den) < 1e-14) return Complex(1e14, 0.0);
    return (a * z + b) / den;
  }
};

// Map sending v1, v2, v3 to 0, 1, infinity.
MobiusCoefficients standard_triple(Complex v1, Complex v2, Complex v3) {
  MobiusCoefficients m;
  m.a = v2 - v3;
  m.b = -v1 * (v2 - v3);
  m.c = v2 - v1;
  m.d = -v3 * (v2 - v1);
  return m;
}

std::optional<MobiusCoefficients> mobius_through(Complex v1, Complex v2,
                                                 Complex v3, Complex w1,
                                                 Complex w2, Complex w3) {
  const MobiusCoefficients mv = standard_triple(v1, v2, v3);
  const MobiusCoefficients mw = standard_triple(w1, w2, w3);
  const Complex det = mw.a * mw.d - mw.b * mw.c;
  if (std::abs(det) < 1e-12) return std::nullopt;
  MobiusCoefficients inv;
  inv.a = mw.d / det;
  inv.b = -mw.b / det;
  inv.c = -mw.c / det;
  inv.d = mw.a / det;
  MobiusCoefficients composed;
  composed.a = inv.a * mv.a + inv.b * mv.c;
  composed.b = inv.a * mv.b + inv.b * mv.d;
  composed.c = inv.c * mv.a + inv.d * mv.c;
  composed.d = inv.c * mv.b + inv.d * mv.d;
  return composed;
}

double identity_deviation(const MobiusCoefficients& phi) {
  const Complex probes[3] = {Complex(0.0, 0.0), Complex(0.5, 0.0),
                             Complex(-0.3, 0.4)};
  double deviation = 0.0;
  for (const Complex p : probes) {
    deviation = std::max(deviation, std::abs(phi.eval(p) - p));
  }
  return deviation;
}

// Circle samples of theta plus three anchors with pairwise separated values;
// the symmetry phi is the unique Moebius map matching a candidate equation at
// the anchors.  The anchor angles are deliberately unevenly spaced, since any
// fixed spacing of 2 pi / n collapses under a degree n rotation symmetry.
struct RigidityProbe {
  std::vector<Complex> xi;
  std::vector<Complex> theta_values;
  std::array<Complex, 3> anchors{};
  std::array<Complex, 3> anchor_values{};
};

RigidityProbe make_rigidity_probe(const FiniteBlaschkeProduct& theta,
                                  const DeciderOptions& options) {
  RigidityProbe probe;
  probe.xi = circle_samples(options.equation_samples, 0.5);
  probe.theta_values.resize(probe.xi.size());
  for (std::size_t m = 0; m < probe.xi.size(); ++m) {
    probe.theta_values[m] = theta.eval(probe.xi[m]);
  }

  constexpr double kAnchorAngles[3] = {0.17, 1.31, 2.93};
  bool separated = false;
  for (int attempt = 0; attempt < 64 && !separated; ++attempt) {
    for (int k = 0; k < 3; ++k) {
      probe.anchors[k] =
          unit_circle_point(kAnchorAngles[k] + 0.05 * attempt * (k + 1));
      probe.anchor_values[k] = theta.eval(probe.anchors[k]);
    }
    separated =
        std::abs(probe.anchor_values[0] - probe.anchor_values[1]) > 1e-3 &&
        std::abs(probe.anchor_values[1] - probe.anchor_values[2]) > 1e-3 &&
        std::abs(probe.anchor_values[0] - probe.anchor_values[2]) > 1e-3;
  }
  if (!separated) {
    throw std::runtime_error(
        "rigidity_check: could not separate anchor values");
  }
  return probe;
}

// Searches phi o theta = target o psi over automorphism pairs.  With the
// identity barrier, solutions with phi near the identity are pushed away and
// do not count.
Rigidity rigidity_against(const RigidityProbe& probe,
                          const FiniteBlaschkeProduct& target,
                          bool identity_barrier, const DeciderOptions& options) {
  const auto objective = [&](const Eigen::VectorXd& x) -> double {
    const double radius = std::hypot(x[1], x[2]);
    if (radius >= kRadiusLimit) return kPenaltyBase + (radius - kRadiusLimit);
    const MoebiusAutomorphism psi(UnimodularConstant::from_angle(x[0]),
                                  DiskPoint(Complex(x[1], x[2])));
    std::array<Complex, 3> targets{};
    for (int k = 0; k < 3; ++k) {
      targets[k] = target.eval(psi.eval(probe.anchors[k]));
    }
    const auto phi = mobius_through(probe.anchor_values[0],
                                    probe.anchor_values[1],
                                    probe.anchor_values[2], targets[0],
                                    targets[1], targets[2]);
    if (!phi) return kPenaltyBase - 1.0;

    // The fit passes through three circle value pairs, so it maps the unit
    // circle to itself.  That leaves two classes: disk automorphisms and
    // maps swapping the inside with the outside.  Only automorphisms are
    // admissible symmetries, and a fit whose origin image drifts to the
    // circle is degenerate, so both are cut off at the same radius used for
    // the psi search box.
    if (std::abs(phi->eval(Complex(0.0, 0.0))) >= kRadiusLimit) {
      return kPenaltyBase - 1.0;
    }

    double worst = 0.0;
    for (std::size_t m = 0; m < probe.xi.size(); ++m) {
      const double err = std::abs(phi->eval(probe.theta_values[m]) -
                                  target.eval(psi.eval(probe.xi[m])));
      if (err > worst) worst = err;
    }
    if (!std::isfinite(worst)) return kPenaltyBase - 1.0;

    if (identity_barrier) {
      const double deviation = identity_deviation(*phi);
      if (deviation < 0.02) worst += (0.02 - deviation) * 50.0;
    }
    return worst;
  };

  Eigen::VectorXd steps(3);
  steps << 0.35, 0.12, 0.12;
  double best = std::numeric_limits<double>::infinity();
  const auto starts = ranked_starts(objective, options, false);
  for (const GridStart& start : starts) {
    const SimplexResult run =
        nelder_mead(objective, start.point, steps, options.max_iterations,
                    options.convergence_tol, 10.0 * options.tol_reject);
    best = std::min(best, run.value);
    if (run.value < options.tol_accept) return Rigidity::NotRigid;
  }
  if (best >= options.tol_reject) return Rigidity::Rigid;
  return Rigidity::Unknown;
}

Rigidity plain_equation_rigidity(const FiniteBlaschkeProduct& theta,
                                 const DeciderOptions& options) {
  const RigidityProbe probe = make_rigidity_probe(theta, options);
  return rigidity_against(probe, theta, true, options);
}

}  // namespace

Rigidity rigidity_check(const FiniteBlaschkeProduct& theta,
                        const DeciderOptions& options) {
  validate_options(options);
  const RigidityProbe probe = make_rigidity_probe(theta, options);

  // The plain equation always has the trivial solution, so only symmetries
  // away from the identity count there.  A reflected match at the identity is
  // already a genuine conjugation symmetry, so that search runs unbarred.
  const Rigidity plain = rigidity_against(probe, theta, true, options);
  if (plain == Rigidity::NotRigid) return Rigidity::NotRigid;
  const Rigidity reflected =
      rigidity_against(probe, theta.sharp(), false, options);
  if (reflected == Rigidity::NotRigid) return Rigidity::NotRigid;
  if (plain == Rigidity::Rigid && reflected == Rigidity::Rigid) {
    return Rigidity::Rigid;
  }
  return Rigidity::Unknown;
}

namespace {

std::pair<ReducedSide, ReducedSide> reduce_query(const IsoQuery& query,
                                                 const MoebiusWitness& witness) {
  if (query.a1.on_circle() || query.a2.on_circle()) {
    throw std::invalid_argument(
        "witness checks: circle parameters have no equation witness");
  }
  const ReducedSide side1 = reduce_side(query.theta1, query.a1);
  const ReducedSide side2 = reduce_side(query.theta2, query.a2);
  if (side1.sharped != witness.sharp1 || side2.sharped != witness.sharp2) {
    throw std::invalid_argument(
        "witness checks: sharp flags disagree with the parameter classes");
  }
  return {side1, side2};
}

}  // namespace

double witness_equation_residual(const IsoQuery& query,
                                 const MoebiusWitness& witness, int samples) {
  const auto [side1, side2] = reduce_query(query, witness);
  if (side1.theta.degree() != side2.theta.degree()) {
    throw std::invalid_argument("witness checks: degrees must agree");
  }
  const auto xi = circle_samples(samples, 0.25);
  std::vector<Complex> theta1_values(xi.size());
  for (std::size_t m = 0; m < xi.size(); ++m) {
    theta1_values[m] = side1.theta.eval(xi[m]);
  }
  return equation_max_error(side2.theta, side1.a, side2.a,
                            witness.zeta.value(), witness.psi, xi,
                            theta1_values);
}

double witness_span_residual(const IsoQuery& query,
                             const MoebiusWitness& witness) {
  const auto [side1, side2] = reduce_query(query, witness);
  const int n = side1.theta.degree();
  if (n != side2.theta.degree()) {
    throw std::invalid_argument("witness checks: degrees must agree");
  }

  const BasisPtr basis1 = make_basis(side1.theta);
  const BasisPtr basis2 = make_basis(side2.theta);
  const SedlockAlgebra algebra1 =
      sedlock_algebra(basis1, ExtendedParameter::classify(side1.a.value()));
  const SedlockAlgebra algebra2 =
      sedlock_algebra(basis2, ExtendedParameter::classify(side2.a.value()));

  // The witness equation makes the two Crofoot images spellings of one middle
  // space: Crofoot(a1) lands there directly, Crofoot(a2) followed by the
  // composition unitary of psi lands there from the other side.  The chain
  // descends through the second spelling, so no zero recovery is needed on
  // the way back.
  const SpatialUnitary u1 = crofoot_transform(basis1, side1.a);
  const SpatialUnitary u2 = crofoot_transform(basis2, side2.a);
  const SpatialUnitary u_psi = composition_unitary(u2.target(), witness.psi);
  const Eigen::MatrixXcd align =
      basis_transition(*u1.target(), *u_psi.target());

  const Eigen::MatrixXcd chain = u2.matrix.entries.adjoint() *
                                 u_psi.matrix.entries.adjoint() * align *
                                 u1.matrix.entries;

  Eigen::MatrixXcd conjugated(n * n, algebra1.dimension());
  for (int i = 0; i < algebra1.dimension(); ++i) {
    Eigen::MatrixXcd image =
        chain * algebra1.elements[i].entries * chain.adjoint();
    conjugated.col(i) =
        Eigen::Map<Eigen::VectorXcd>(image.data(), image.size());
  }
  return span_gap(orthonormal_span(conjugated), algebra2.span);
}

MoebiusWitness compose_witnesses(const MoebiusWitness& first,
                                 const MoebiusWitness& second) {
  if (first.sharp2 != second.sharp1) {
    throw std::invalid_argument(
        "compose_witnesses: middle reductions disagree");
  }
  MoebiusWitness composed;
  composed.zeta =
      UnimodularConstant(first.zeta.value() * second.zeta.value());
  composed.psi = second.psi.compose(first.psi);
  composed.residual = std::max(first.residual, second.residual);
  composed.sharp1 = first.sharp1;
  composed.sharp2 = second.sharp2;
  return composed;
}

}  // namespace ttolab
