#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ym/algebra.hpp"

namespace ym {

struct IdentityResidual {
  std::string name;
  double residual = 0;
};

// Exact plane-wave residuals of the null-form identities, the Gamma decomposition and the equivalence
// of the assembled system with the expanded equations, for Lorenz-compatible A and a random phi.
std::vector<IdentityResidual> planeWaveIdentities(const Algebra& alg, std::uint64_t seed, int modeCount = 2,
                                                  double scale = 0.5);

}  // namespace ym
