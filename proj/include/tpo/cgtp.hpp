#pragma once

#include <Eigen/Core>
#include <vector>

#include "tpo/irreps.hpp"
#include "tpo/wigner.hpp"

namespace tpo {

// One coupling (l1, l2) -> l3.  Valid iff the triangle inequality
// |l1-l2| <= l3 <= l1+l2 holds (all degrees >= 0).
struct Path {
  int l1 = 0, l2 = 0, l3 = 0;

  bool valid() const;
  friend bool operator==(const Path&, const Path&) = default;
};

// All valid paths for inputs of degree <= L1, <= L2 and outputs <= L3,
// lexicographic in (l1, l2, l3).  Each path keeps its origin (l1, l2), so
// repeated output degrees stay distinguishable.
struct PathTable {
  std::vector<Path> paths;

  // Output descriptor: one l3 copy per path, in path order.
  Irreps output_irreps() const;
};

PathTable valid_paths(int L1, int L2, int L3);

// Single-path Clebsch-Gordan product, dense reference kernel: the full
// (2l1+1)(2l2+1)(2l3+1) triple loop against the densified real CG table.
// An invalid path yields zeros.  x, y, out are bare degree slices.
void cgtp_path_naive(const Path& p, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y,
                     Eigen::Ref<Eigen::VectorXd> out, OpCounter* ops = nullptr);

// Same contraction exploiting the real-basis sparsity pattern
// m3 = ±m1 ± m2: four passes, each a 2D loop over (m3, m1) with m2 read at
// a fixed offset.  Every table entry is claimed by exactly one pass, so the
// passes sum to the dense result.
void cgtp_path_sparse(const Path& p, const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      Eigen::Ref<Eigen::VectorXd> out, OpCounter* ops = nullptr);

enum class CgtpImpl { naive, sparse };

// Full tensor product of two single-copy towers: every valid path up to the
// inputs' degrees, outputs concatenated in path order (l3 <= l1 + l2 caps
// the output band).  Inputs may be any single-copy-per-entry descriptors.
IrrepVector cgtp_mimo(const IrrepVector& x, const IrrepVector& y,
                      CgtpImpl impl = CgtpImpl::sparse,
                      OpCounter* ops = nullptr);

}  // namespace tpo
