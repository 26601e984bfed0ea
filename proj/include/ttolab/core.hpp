#pragma once

#include <complex>
#include <numbers>

namespace ttolab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Margin that separates the open unit disk from its boundary.  Points with
// modulus in [1 - kBoundaryMargin, 1 + kBoundaryMargin] are treated as lying
// on the unit circle.
inline constexpr double kBoundaryMargin = 1e-12;

// Tolerance for comparing automorphism and algebra parameters.
inline constexpr double kParamTol = 1e-10;

// Acceptable deviation from unit modulus for inputs that are known to be
// unimodular up to rounding.
inline constexpr double kUnimodularSlack = 1e-6;

inline Complex unit_circle_point(double angle) {
  return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace ttolab
