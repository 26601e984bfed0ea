#pragma once

// Shared oracles for the unit tests: deterministic random sampling, finite
// difference derivatives, and direct circle quadrature.  These stay
// independent of the library internals so they can vouch for them.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "ttolab/core.hpp"

namespace ttolab::testing {

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline Complex random_in_disk(std::mt19937_64& rng, double max_radius = 0.8) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = max_radius * std::sqrt(unit(rng));
  const double t = 2.0 * kPi * unit(rng);
  return r * unit_circle_point(t);
}

inline Complex random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit_circle_point(2.0 * kPi * unit(rng));
}

// Central difference derivative of an analytic function.
inline Complex finite_difference(const std::function<Complex(Complex)>& f,
                                 Complex z, double h = 1e-6) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Plain M point mean of f * conj(g) over the unit circle.
inline Complex quadrature_inner(const std::function<Complex(Complex)>& f,
                                const std::function<Complex(Complex)>& g,
                                int points = 512) {
  Complex acc(0.0, 0.0);
  for (int m = 0; m < points; ++m) {
    const Complex zeta = unit_circle_point(2.0 * kPi * m / points);
    acc += f(zeta) * std::conj(g(zeta));
  }
  return acc / static_cast<double>(points);
}

// Largest pointwise deviation of two functions over uniformly spread circle
// samples, offset to avoid hitting symmetric special points.
inline double max_circle_difference(const std::function<Complex(Complex)>& f,
                                    const std::function<Complex(Complex)>& g,
                                    int samples = 64) {
  double worst = 0.0;
  for (int m = 0; m < samples; ++m) {
    const Complex zeta = unit_circle_point(2.0 * kPi * (m + 0.37) / samples);
    worst = std::max(worst, std::abs(f(zeta) - g(zeta)));
  }
  return worst;
}

inline double max_disk_difference(const std::function<Complex(Complex)>& f,
                                  const std::function<Complex(Complex)>& g,
                                  int samples = 48) {
  double worst = 0.0;
  for (int m = 0; m < samples; ++m) {
    const double r = 0.15 + 0.8 * ((m * 7) % samples) / static_cast<double>(samples);
    const Complex z = r * unit_circle_point(2.0 * kPi * (m + 0.21) / samples);
    worst = std::max(worst, std::abs(f(z) - g(z)));
  }
  return worst;
}

}  // namespace ttolab::testing
