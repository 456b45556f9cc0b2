#pragma once

#include <string>
#include <vector>

#include "glc/grid_fn.hpp"

namespace glc {

/// One discrete-calculus identity evaluated on pseudorandom fields:
/// max absolute residual between the two sides, plus the field scale the
/// residual should be compared against.
struct IdentityResidual {
  std::string name;
  double max_residual = 0.0;
  double scale = 1.0;

  double relative() const { return scale > 0 ? max_residual / scale : 0.0; }
};

/// Evaluates both sides of the exact product-rule, expansion and
/// summation-by-parts identities of the staggered calculus on pseudorandom
/// complex fields. All residuals are pure roundoff.
std::vector<IdentityResidual> check_identities(int M, int N, double T,
                                               uint64_t seed);

}  // namespace glc
