#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttolab/blaschke.hpp"

namespace ttolab {

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Result of the invariant suite on one function.  The check list and its
// order are fixed; residuals depend only on theta, the seed and the
// quadrature size, so the formatted report is reproducible byte for byte.
struct VerifyReport {
  int degree = 0;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool all_passed() const;
};

// Runs the named checks: kernel calculus, conjugation laws, algebra
// structure and commutant, the Clark case, the seven word identities with
// the generator conjugation law, idempotent resolutions, the Hankel norm
// identity and the Pick diagonal model (the latter only for distinct zeros).
// quadrature_size 0 means the adaptive default; degrees above max_degree are
// refused with std::invalid_argument("degree exceeds verify limit").
VerifyReport run_verify(const FiniteBlaschkeProduct& theta, std::uint64_t seed,
                        int quadrature_size = 0, int max_degree = 8);

// Fixed width table with one line per check and a closing summary line.
std::string format_report(const VerifyReport& report);

}  // namespace ttolab
