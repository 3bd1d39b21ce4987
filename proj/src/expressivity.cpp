#include "tpo/expressivity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "tpo/cgtp.hpp"
#include "tpo/gtp.hpp"
#include "tpo/mtp.hpp"

namespace tpo {

namespace {

constexpr double kProbeTol = 1e-10;

// Degree of each flat component of single_copies(L).
std::vector<int> degree_of_index(int L) {
  std::vector<int> deg;
  deg.reserve((L + 1) * (L + 1));
  for (int l = 0; l <= L; ++l)
    for (int m = -l; m <= l; ++m) deg.push_back(l);
  return deg;
}

IrrepVector basis_vector(const Irreps& irreps, int flat_index) {
  IrrepVector v = IrrepVector::zeros(irreps);
  v.data[flat_index] = 1.0;
  return v;
}

// Flattened base tensor T0[i,j,k] = kernel(e_i, e_j)_k for the unweighted
// product, X = Y = single_copies(L), Z = single_copies(2L).
std::vector<double> probe_base_tensor(Kind kind, int L) {
  const Irreps in = Irreps::single_copies(L);
  const int nx = in.dim(), nz = Irreps::single_copies(2 * L).dim();
  std::vector<double> t0(static_cast<size_t>(nx) * nx * nz);
  for (int i = 0; i < nx; ++i) {
    const IrrepVector ei = basis_vector(in, i);
    for (int j = 0; j < nx; ++j) {
      const IrrepVector ej = basis_vector(in, j);
      IrrepVector out;
      if (kind == Kind::gtp)
        out = gtp_grid(ei, ej, 2 * L);
      else
        out = mtp(ei, ej, 2 * L);
      for (int k = 0; k < nz; ++k) t0[(static_cast<size_t>(i) * nx + j) * nz + k] = out.data[k];
    }
  }
  return t0;
}

int matrix_rank(const Eigen::MatrixXd& J) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-8 * sv[0]) ++r;
  return r;
}

// Jacobian rank for GTP/MTP: B[i,j,k] = a_{l(i)} b_{l(j)} c_{l(k)} T0[i,j,k]
// with independent per-degree scales; the two global scaling redundancies
// drop the rank below the raw 4L+3 parameter count.
int rank_scaled(Kind kind, int L, std::mt19937_64& rng) {
  const std::vector<double> t0 = probe_base_tensor(kind, L);
  const std::vector<int> deg_in = degree_of_index(L);
  const std::vector<int> deg_out = degree_of_index(2 * L);
  const int nx = static_cast<int>(deg_in.size());
  const int nz = static_cast<int>(deg_out.size());

  std::normal_distribution<double> gauss;
  Eigen::VectorXd a(L + 1), b(L + 1), c(2 * L + 1);
  for (int l = 0; l <= L; ++l) a[l] = gauss(rng);
  for (int l = 0; l <= L; ++l) b[l] = gauss(rng);
  for (int l = 0; l <= 2 * L; ++l) c[l] = gauss(rng);

  const int n_params = (L + 1) + (L + 1) + (2 * L + 1);
  Eigen::MatrixXd J(static_cast<Eigen::Index>(nx) * nx * nz, n_params);
  Eigen::Index row = 0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      for (int k = 0; k < nz; ++k, ++row) {
        const double t = t0[(static_cast<size_t>(i) * nx + j) * nz + k];
        J.row(row).setZero();
        if (t == 0.0) continue;
        const int li = deg_in[i], lj = deg_in[j], lk = deg_out[k];
        J(row, li) = b[lj] * c[lk] * t;
        J(row, (L + 1) + lj) = a[li] * c[lk] * t;
        J(row, 2 * (L + 1) + lk) = a[li] * b[lj] * t;
      }
  return matrix_rank(J);
}

// Jacobian rank for CGTP: parameters are per-degree input scales plus one
// weight per path; the path tensors span the whole tangent space, so the
// rank lands on the path count.
int rank_cgtp(int L, std::mt19937_64& rng) {
  const PathTable table = valid_paths(L, L, 2 * L);
  const int n_paths = static_cast<int>(table.paths.size());
  const std::vector<int> deg_in = degree_of_index(L);
  const int nx = static_cast<int>(deg_in.size());
  const int nz = Irreps::single_copies(2 * L).dim();

  // Sparse path tensors embedded in the (i,j,k) flat layout.
  struct Elem {
    Eigen::Index row;
    double value;
  };
  std::vector<std::vector<Elem>> path_elems(n_paths);
  std::vector<int> off_in(L + 1, 0), off_out(2 * L + 1, 0);
  for (int l = 1; l <= L; ++l) off_in[l] = off_in[l - 1] + (2 * (l - 1) + 1);
  for (int l = 1; l <= 2 * L; ++l) off_out[l] = off_out[l - 1] + (2 * (l - 1) + 1);
  for (int p = 0; p < n_paths; ++p) {
    const Path& path = table.paths[p];
    for (const CGEntry& e : cg_real(path.l1, path.l2, path.l3).entries) {
      const Eigen::Index i = off_in[path.l1] + e.m1 + path.l1;
      const Eigen::Index j = off_in[path.l2] + e.m2 + path.l2;
      const Eigen::Index k = off_out[path.l3] + e.m3 + path.l3;
      path_elems[p].push_back({(i * nx + j) * nz + k, e.value});
    }
  }

  std::normal_distribution<double> gauss;
  Eigen::VectorXd a(L + 1), b(L + 1), w(n_paths);
  for (int l = 0; l <= L; ++l) a[l] = gauss(rng);
  for (int l = 0; l <= L; ++l) b[l] = gauss(rng);
  for (int p = 0; p < n_paths; ++p) w[p] = gauss(rng);

  const int n_params = 2 * (L + 1) + n_paths;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nx) * nx * nz, n_params);
  for (int p = 0; p < n_paths; ++p) {
    const Path& path = table.paths[p];
    for (const Elem& el : path_elems[p]) {
      J(el.row, path.l1) += b[path.l2] * w[p] * el.value;
      J(el.row, (L + 1) + path.l2) += a[path.l1] * w[p] * el.value;
      J(el.row, 2 * (L + 1) + p) += a[path.l1] * b[path.l2] * el.value;
    }
  }
  return matrix_rank(J);
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::cgtp: return "cgtp";
    case Kind::gtp: return "gtp";
    default: return "mtp";
  }
}

long expressivity_count(Kind kind, int L) {
  if (L < 0) throw std::invalid_argument("expressivity_count: L must be >= 0");
  if (kind == Kind::cgtp) {
    long n = 0;
    for (int l1 = 0; l1 <= L; ++l1)
      for (int l2 = 0; l2 <= L; ++l2) n += 2 * std::min(l1, l2) + 1;
    return n;
  }
  // Per-degree scales on X, Y, Z minus the two global rescalings.
  return static_cast<long>(4) * L + 1;
}

RankResult expressivity_rank(Kind kind, int L, int trials, std::uint64_t seed) {
  if (L < 0) throw std::invalid_argument("expressivity_rank: L must be >= 0");
  if (trials < 1) throw std::invalid_argument("expressivity_rank: trials must be >= 1");
  std::mt19937_64 rng(seed);
  RankResult res;
  for (int t = 0; t < trials; ++t) {
    const int r = kind == Kind::cgtp ? rank_cgtp(L, rng) : rank_scaled(kind, L, rng);
    if (t == 0)
      res.rank = r;
    else if (r != res.rank) {
      res.stable = false;
      res.rank = std::max(res.rank, r);
    }
  }
  return res;
}

bool interactable(Kind kind, int l1, int l2, int l3) {
  if (l1 < 0 || l2 < 0 || l3 < 0) return false;
  if (kind == Kind::cgtp) {
    // The path map is nonzero iff its table has entries; probe it anyway so
    // the decision runs through the actual kernel.
    const Path p{l1, l2, l3};
    Eigen::VectorXd out(2 * l3 + 1);
    for (int m1 = 0; m1 < 2 * l1 + 1; ++m1)
      for (int m2 = 0; m2 < 2 * l2 + 1; ++m2) {
        Eigen::VectorXd x = Eigen::VectorXd::Unit(2 * l1 + 1, m1);
        Eigen::VectorXd y = Eigen::VectorXd::Unit(2 * l2 + 1, m2);
        cgtp_path_naive(p, x, y, out);
        if (out.cwiseAbs().maxCoeff() > kProbeTol) return true;
      }
    return false;
  }

  const Irreps in1 = Irreps::single_copies(l1);
  const Irreps in2 = Irreps::single_copies(l2);
  const int off1 = in1.offset(l1), off2 = in2.offset(l2);
  for (int m1 = 0; m1 < 2 * l1 + 1; ++m1)
    for (int m2 = 0; m2 < 2 * l2 + 1; ++m2) {
      // Only the top degree is populated, so the l3 block of the output is
      // exactly the (l1,l2,l3) restriction.
      IrrepVector x = IrrepVector::zeros(in1);
      x.data[off1 + m1] = 1.0;
      IrrepVector y = IrrepVector::zeros(in2);
      y.data[off2 + m2] = 1.0;
      const IrrepVector out =
          kind == Kind::gtp ? gtp_grid(x, y, l3) : mtp(x, y, l3);
      const auto block = out.slice(l3);
      if (block.cwiseAbs().maxCoeff() > kProbeTol) return true;
    }
  return false;
}

}  // namespace tpo
