#pragma once

#include <Eigen/Core>
#include <vector>

#include "tpo/irreps.hpp"

namespace tpo {

enum class MtpImpl { naive, sparse };

// Smallest carrier degree: V^ltilde ⊗ V^ltilde contains every l <= 2*ltilde,
// so ceil(max(L1,L2,L3)/2) suffices to embed inputs and recover outputs.
int mtp_l_tilde(int L1, int L2, int L3);

// Embed a coefficient vector into a (2*ltilde+1)^2 matrix:
// X_{m1,m2} = sum_{l,m3} cg_real(ltilde, ltilde, l)[m1,m2,m3] * x^{(l)}_{m3}.
// naive runs the dense triple loop per degree; sparse walks table entries.
Eigen::MatrixXd mtp_embed(const IrrepVector& x, int l_tilde,
                          MtpImpl impl = MtpImpl::sparse,
                          OpCounter* ops = nullptr);

// Adjoint of the embedding: out^{(l3)}_{m3} = <cg_real(lt,lt,l3)[.,.,m3], Z>.
IrrepVector mtp_extract(const Eigen::MatrixXd& Z, int L3, int l_tilde,
                        MtpImpl impl = MtpImpl::sparse,
                        OpCounter* ops = nullptr);

// Extraction of an arbitrary degree list, concatenated in the given order.
IrrepVector mtp_extract_select(const Eigen::MatrixXd& Z,
                               const std::vector<int>& degrees, int l_tilde,
                               MtpImpl impl = MtpImpl::sparse,
                               OpCounter* ops = nullptr);

// Classical cubic matrix product, with the (2lt+1)^3 multiplies counted.
Eigen::MatrixXd mtp_matmul(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           OpCounter* ops = nullptr);

// Matrix tensor product: embed both inputs, multiply the matrices (classical
// cubic matmul), extract degrees 0..L3.  l_tilde_override > default is
// allowed; -1 picks the minimal carrier.
IrrepVector mtp(const IrrepVector& x, const IrrepVector& y, int L3,
                MtpImpl impl = MtpImpl::sparse, OpCounter* ops = nullptr,
                int l_tilde_override = -1);

// Weight of path (l1,l2,l3) inside the matrix product: the matrix tensor
// product equals sum over valid paths of w(l1,l2,l3) * cgtp_path.  Computed
// as <K, C>/<C, C> with K the composed embed/matmul/extract kernel and C
// the path's CG tensor; invalid paths give 0.
double mtp_path_weights(int l1, int l2, int l3, int l_tilde);

}  // namespace tpo
