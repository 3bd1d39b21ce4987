#pragma once

#include <string>
#include <vector>

#include "tpo/irreps.hpp"

namespace tpo {

struct CheckResult {
  std::string suite;
  std::string check;
  int L = 0;
  double max_err = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Named self-check suites, each a battery of randomized comparisons at the
// given band limit:
//   equivariance    rotate-then-apply vs apply-then-rotate, every product
//   oracle-equality sparse/naive, fourier/grid, grid/Gaunt-contraction,
//                   mtp vs weighted sum of CG paths
//   selection-rules parity zeros and the antisymmetric [1,1,1] couplings
//   roundtrip       sphere analysis/synthesis and Fourier encode/decode
//   expressivity    counts, ranks and interactability tables
//   scaling         op-count slopes against their asymptotic exponents
const std::vector<std::string>& verify_suites();

std::vector<CheckResult> run_verify(const std::string& suite, int L,
                                    std::uint64_t seed = 20240901);

}  // namespace tpo
