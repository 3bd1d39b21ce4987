#include "tpo/mtp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tpo/cgtp.hpp"
#include "tpo/wigner.hpp"

namespace tpo {

namespace {

int max_degree(const Irreps& irreps) {
  int lmax = 0;
  for (const auto& e : irreps.entries()) lmax = std::max(lmax, e.l);
  return lmax;
}

void embed_one(Eigen::MatrixXd& X, const Eigen::Ref<const Eigen::VectorXd>& coeffs, int l,
               int lt, MtpImpl impl, OpCounter* ops) {
  const CGTable& table = cg_real(lt, lt, l);
  if (impl == MtpImpl::sparse) {
    for (const CGEntry& e : table.entries) X(e.m1 + lt, e.m2 + lt) += e.value * coeffs[e.m3 + l];
    count_muls(ops, table.entries.size());
    return;
  }
  static thread_local std::vector<double> dense;
  densify_into(table, dense);
  const int dt = 2 * lt + 1, d3 = 2 * l + 1;
  for (int i1 = 0; i1 < dt; ++i1)
    for (int i2 = 0; i2 < dt; ++i2) {
      const double* row = dense.data() + (static_cast<size_t>(i1) * dt + i2) * d3;
      double acc = 0.0;
      for (int i3 = 0; i3 < d3; ++i3) acc += row[i3] * coeffs[i3];
      X(i1, i2) += acc;
    }
  count_muls(ops, static_cast<std::uint64_t>(dt) * dt * d3);
}

}  // namespace

int mtp_l_tilde(int L1, int L2, int L3) {
  const int m = std::max({L1, L2, L3});
  return (m + 1) / 2;
}

Eigen::MatrixXd mtp_embed(const IrrepVector& x, int l_tilde, MtpImpl impl, OpCounter* ops) {
  if (l_tilde < 0) throw std::invalid_argument("mtp_embed: l_tilde must be >= 0");
  if (max_degree(x.irreps) > 2 * l_tilde)
    throw std::invalid_argument("mtp_embed: carrier too small for input degrees");
  const int dt = 2 * l_tilde + 1;
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(dt, dt);
  for (int e = 0; e < x.irreps.num_entries(); ++e)
    for (int c = 0; c < x.irreps.entries()[e].mul; ++c)
      embed_one(X, x.slice(e, c), x.irreps.l_of(e), l_tilde, impl, ops);
  return X;
}

IrrepVector mtp_extract_select(const Eigen::MatrixXd& Z, const std::vector<int>& degrees,
                               int l_tilde, MtpImpl impl, OpCounter* ops) {
  const int dt = 2 * l_tilde + 1;
  if (Z.rows() != dt || Z.cols() != dt)
    throw std::invalid_argument("mtp_extract: matrix does not match the carrier degree");

  std::vector<Irreps::Entry> entries;
  int dim = 0;
  for (int l : degrees) {
    entries.push_back({1, l});
    dim += 2 * l + 1;
  }
  IrrepVector out{Irreps(std::move(entries)), Eigen::VectorXd::Zero(dim)};
  int off = 0;
  for (int l3 : degrees) {
    if (l3 <= 2 * l_tilde) {  // beyond the carrier band everything is zero
      const CGTable& table = cg_real(l_tilde, l_tilde, l3);
      const int d3 = 2 * l3 + 1;
      if (impl == MtpImpl::sparse) {
        for (const CGEntry& e : table.entries)
          out.data[off + e.m3 + l3] += e.value * Z(e.m1 + l_tilde, e.m2 + l_tilde);
        count_muls(ops, table.entries.size());
      } else {
        static thread_local std::vector<double> dense;
        densify_into(table, dense);
        for (int i1 = 0; i1 < dt; ++i1)
          for (int i2 = 0; i2 < dt; ++i2) {
            const double z = Z(i1, i2);
            const double* row = dense.data() + (static_cast<size_t>(i1) * dt + i2) * d3;
            for (int i3 = 0; i3 < d3; ++i3) out.data[off + i3] += row[i3] * z;
          }
        count_muls(ops, static_cast<std::uint64_t>(dt) * dt * d3);
      }
    }
    off += 2 * l3 + 1;
  }
  return out;
}

IrrepVector mtp(const IrrepVector& x, const IrrepVector& y, int L3, MtpImpl impl,
                OpCounter* ops, int l_tilde_override) {
  const int lt_min = mtp_l_tilde(max_degree(x.irreps), max_degree(y.irreps), L3);
  int lt = lt_min;
  if (l_tilde_override >= 0) {
    if (l_tilde_override < lt_min)
      throw std::invalid_argument("mtp: l_tilde below the minimal carrier degree");
    lt = l_tilde_override;
  }
  const Eigen::MatrixXd X = mtp_embed(x, lt, impl, ops);
  const Eigen::MatrixXd Y = mtp_embed(y, lt, impl, ops);
  const Eigen::MatrixXd Z = mtp_matmul(X, Y, ops);

  std::vector<int> degrees(L3 + 1);
  for (int l = 0; l <= L3; ++l) degrees[l] = l;
  IrrepVector out = mtp_extract_select(Z, degrees, lt, impl, ops);
  out.irreps = Irreps::single_copies(L3);
  return out;
}

Eigen::MatrixXd mtp_matmul(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, OpCounter* ops) {
  if (X.rows() != X.cols() || Y.rows() != Y.cols() || X.rows() != Y.rows())
    throw std::invalid_argument("mtp_matmul: carriers do not match");
  // Classical cubic product; sub-cubic shortcuts would defeat the cost
  // model this operation is built around.
  const int dt = static_cast<int>(X.rows());
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(dt, dt);
  for (int i = 0; i < dt; ++i)
    for (int k = 0; k < dt; ++k) {
      const double xik = X(i, k);
      for (int j = 0; j < dt; ++j) Z(i, j) += xik * Y(k, j);
    }
  count_muls(ops, static_cast<std::uint64_t>(dt) * dt * dt);
  return Z;
}

IrrepVector mtp_extract(const Eigen::MatrixXd& Z, int L3, int l_tilde, MtpImpl impl,
                        OpCounter* ops) {
  std::vector<int> degrees(L3 + 1);
  for (int l = 0; l <= L3; ++l) degrees[l] = l;
  IrrepVector out = mtp_extract_select(Z, degrees, l_tilde, impl, ops);
  out.irreps = Irreps::single_copies(L3);
  return out;
}

double mtp_path_weights(int l1, int l2, int l3, int l_tilde) {
  const Path check{l1, l2, l3};
  if (!check.valid() || l1 > 2 * l_tilde || l2 > 2 * l_tilde || l3 > 2 * l_tilde) return 0.0;

  const CGTable& c1 = cg_real(l_tilde, l_tilde, l1);
  const CGTable& c2 = cg_real(l_tilde, l_tilde, l2);
  const CGTable& c3 = cg_real(l_tilde, l_tilde, l3);
  const int dt = 2 * l_tilde + 1;

  // Buckets for the joins over the shared carrier indices.
  std::vector<std::vector<const CGEntry*>> c2_by_row(dt);
  for (const CGEntry& e : c2.entries) c2_by_row[e.m1 + l_tilde].push_back(&e);
  std::vector<std::vector<const CGEntry*>> c3_by_cell(static_cast<size_t>(dt) * dt);
  for (const CGEntry& e : c3.entries)
    c3_by_cell[(e.m1 + l_tilde) * dt + (e.m2 + l_tilde)].push_back(&e);

  // K[p,q,r] = sum_{a,k,b} C1[a,k,p] C2[k,b,q] C3[a,b,r]: the kernel of
  // embed/matmul/extract restricted to this path.
  const int d1 = 2 * l1 + 1, d2 = 2 * l2 + 1, d3 = 2 * l3 + 1;
  std::vector<double> K(static_cast<size_t>(d1) * d2 * d3, 0.0);
  for (const CGEntry& e1 : c1.entries)
    for (const CGEntry* e2 : c2_by_row[e1.m2 + l_tilde])
      for (const CGEntry* e3 : c3_by_cell[(e1.m1 + l_tilde) * dt + (e2->m2 + l_tilde)])
        K[((e1.m3 + l1) * d2 + (e2->m3 + l2)) * d3 + (e3->m3 + l3)] +=
            e1.value * e2->value * e3->value;

  // The path kernel is proportional to the CG tensor (Schur again); the
  // ratio <K,C>/<C,C> is that proportionality constant.
  const CGTable& c = cg_real(l1, l2, l3);
  double kc = 0.0, cc = 0.0;
  for (const CGEntry& e : c.entries) {
    const double k = K[((e.m1 + l1) * d2 + (e.m2 + l2)) * d3 + (e.m3 + l3)];
    kc += k * e.value;
    cc += e.value * e.value;
  }
  return cc == 0.0 ? 0.0 : kc / cc;
}

}  // namespace tpo
