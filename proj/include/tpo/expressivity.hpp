#pragma once

#include <cstdint>

namespace tpo {

enum class Kind { cgtp, gtp, mtp };

const char* kind_name(Kind k);

// Number of independent tunable couplings in the MIMO setting
// (0..L) x (0..L) -> (0..2L):
//   cgtp: one weight per valid path, sum over l1,l2 <= L of (2 min(l1,l2)+1)
//   gtp/mtp: per-degree input/output scales minus the two global
//            redundancies, (L+1) + (L+1) + (2L+1) - 2 = 4L+1.
long expressivity_count(Kind kind, int L);

struct RankResult {
  int rank = 0;
  bool stable = true;  // same rank across all trials
};

// Numeric rank of the Jacobian of theta -> B_theta (the weighted bilinear
// map, flattened).  Singular values below 1e-8 * sigma_max are treated as
// zero; the result is the maximum over `trials` random draws, with
// disagreement between draws flagged as unstable.
RankResult expressivity_rank(Kind kind, int L, int trials = 3,
                             std::uint64_t seed = 20240901);

// Whether degrees l1 and l2 can interact to produce l3 under the given
// product, decided by driving a basis of the (l1, l2) input slices through
// the actual kernel and checking the l3 output block.
bool interactable(Kind kind, int l1, int l2, int l3);

}  // namespace tpo
