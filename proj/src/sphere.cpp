#include "tpo/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace tpo {

namespace {

int max_degree(const Irreps& irreps) {
  int lmax = 0;
  for (const auto& e : irreps.entries()) lmax = std::max(lmax, e.l);
  return lmax;
}

bool same_shape(const S2Grid& a, const S2Grid& b) {
  return a.L_max == b.L_max && a.n_phi == b.n_phi && a.n_theta() == b.n_theta();
}

}  // namespace

Eigen::MatrixXd legendre_lambda_table(int l_max, const Eigen::VectorXd& cos_theta) {
  const int rows = (l_max + 1) * (l_max + 2) / 2;
  const int n = static_cast<int>(cos_theta.size());
  Eigen::MatrixXd lam(rows, n);
  const double sqrt2 = std::sqrt(2.0);
  std::vector<double> pbar(rows);
  for (int j = 0; j < n; ++j) {
    const double x = cos_theta[j];
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    // Diagonal, first off-diagonal, then upward in l at fixed m.  All in
    // the fully normalized basis (int Pbar^2 dx = 1/(2pi)), which keeps
    // every intermediate O(1) out to large l.
    pbar[LegendreCache::idx(0, 0)] = std::sqrt(1.0 / (4.0 * M_PI));
    for (int m = 1; m <= l_max; ++m)
      pbar[LegendreCache::idx(m, m)] =
          pbar[LegendreCache::idx(m - 1, m - 1)] * s * std::sqrt((2.0 * m + 1) / (2.0 * m));
    for (int m = 0; m < l_max; ++m)
      pbar[LegendreCache::idx(m + 1, m)] =
          x * std::sqrt(2.0 * m + 3) * pbar[LegendreCache::idx(m, m)];
    for (int m = 0; m <= l_max; ++m)
      for (int l = m + 2; l <= l_max; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1) / (static_cast<double>(l) * l - m * m));
        const double a_prev = std::sqrt((4.0 * (l - 1.0) * (l - 1) - 1) /
                                        (static_cast<double>(l - 1) * (l - 1) - m * m));
        pbar[LegendreCache::idx(l, m)] =
            a * (x * pbar[LegendreCache::idx(l - 1, m)] -
                 pbar[LegendreCache::idx(l - 2, m)] / a_prev);
      }
    for (int l = 0; l <= l_max; ++l)
      for (int m = 0; m <= l; ++m)
        lam(LegendreCache::idx(l, m), j) = (m == 0 ? 1.0 : sqrt2) * pbar[LegendreCache::idx(l, m)];
  }
  return lam;
}

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration from the Chebyshev-like initial guess; the roots come
  // out pairwise symmetric, so only half are solved for.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x starts near +1 for i=0; store ascending.
    nodes[n - 1 - i] = x;
    nodes[i] = -x;
    weights[n - 1 - i] = w;
    weights[i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;  // exact center for odd counts
  return;
}

GridPtr make_grid(int L) {
  if (L < 0) throw std::invalid_argument("make_grid: L must be >= 0");
  auto g = std::make_shared<S2Grid>();
  g->L_max = L;
  gauss_legendre(L + 1, g->theta_nodes, g->theta_weights);
  g->n_phi = 2 * L + 1;
  g->leg = LegendreCache{L, legendre_lambda_table(L, g->theta_nodes)};
  g->cs.resize(2 * L + 1, g->n_phi);
  for (int m = -L; m <= L; ++m)
    for (int k = 0; k < g->n_phi; ++k) {
      const double phi = 2.0 * M_PI * k / g->n_phi;
      g->cs(m + L, k) = m < 0 ? std::sin(-m * phi) : (m == 0 ? 1.0 : std::cos(m * phi));
    }
  return g;
}

SphereSignal to_sphere(const IrrepVector& x, const GridPtr& grid, OpCounter* ops) {
  if (!grid) throw std::invalid_argument("to_sphere: null grid");
  const int lmax = max_degree(x.irreps);
  if (lmax > grid->L_max)
    throw std::invalid_argument("to_sphere: grid band limit " + std::to_string(grid->L_max) +
                                " below input degree " + std::to_string(lmax));
  const int nt = grid->n_theta();
  const int n_m = 2 * lmax + 1;

  // Separable synthesis: collapse theta first, then expand along phi.
  Eigen::MatrixXd g_m = Eigen::MatrixXd::Zero(n_m, nt);
  for (int e = 0; e < x.irreps.num_entries(); ++e) {
    const int l = x.irreps.l_of(e);
    for (int c = 0; c < x.irreps.entries()[e].mul; ++c) {
      const auto coeffs = x.slice(e, c);
      for (int m = -l; m <= l; ++m) {
        g_m.row(m + lmax) +=
            coeffs[m + l] * grid->leg.lambda.row(LegendreCache::idx(l, std::abs(m)));
        count_muls(ops, nt);
      }
    }
  }

  SphereSignal f{grid, Eigen::MatrixXd(nt, grid->n_phi)};
  // F(j,k) = sum_m G(m,j) cs_m(phi_k)
  f.values.noalias() =
      g_m.transpose() * grid->cs.middleRows(grid->L_max - lmax, n_m);
  count_muls(ops, static_cast<std::uint64_t>(n_m) * nt * grid->n_phi);
  return f;
}

IrrepVector from_sphere(const SphereSignal& f, int L_out, OpCounter* ops) {
  if (L_out < 0) throw std::invalid_argument("from_sphere: L_out must be >= 0");
  std::vector<int> degrees(L_out + 1);
  for (int l = 0; l <= L_out; ++l) degrees[l] = l;
  IrrepVector out = detail::from_sphere_select(f, degrees, ops);
  out.irreps = Irreps::single_copies(L_out);
  return out;
}

SphereSignal pointwise_mul(const SphereSignal& a, const SphereSignal& b, OpCounter* ops) {
  if (!a.grid || !b.grid || !same_shape(*a.grid, *b.grid))
    throw std::invalid_argument("pointwise_mul: signals live on different grids");
  SphereSignal out{a.grid, a.values.cwiseProduct(b.values)};
  count_muls(ops, static_cast<std::uint64_t>(a.values.size()));
  return out;
}

namespace detail {

IrrepVector from_sphere_select(const SphereSignal& f, const std::vector<int>& degrees,
                               OpCounter* ops) {
  if (!f.grid) throw std::invalid_argument("from_sphere: null grid");
  const S2Grid& grid = *f.grid;
  int lmax = 0;
  for (int l : degrees) lmax = std::max(lmax, l);
  if (lmax > grid.L_max)
    throw std::invalid_argument("from_sphere: grid band limit too small for requested degree");

  const int nt = grid.n_theta();
  const int n_m = 2 * lmax + 1;
  const double phi_scale = 2.0 * M_PI / grid.n_phi;

  // Phi transform: H(m,j) = (2pi/n_phi) sum_k F(j,k) cs_m(phi_k), then fold
  // the quadrature weights in before the Legendre dot products.
  Eigen::MatrixXd h = grid.cs.middleRows(grid.L_max - lmax, n_m) * f.values.transpose();
  count_muls(ops, static_cast<std::uint64_t>(n_m) * grid.n_phi * nt);
  h *= phi_scale;
  count_muls(ops, static_cast<std::uint64_t>(n_m) * nt);
  h = h.array().rowwise() * grid.theta_weights.transpose().array();
  count_muls(ops, static_cast<std::uint64_t>(n_m) * nt);

  std::vector<Irreps::Entry> entries;
  entries.reserve(degrees.size());
  int dim = 0;
  for (int l : degrees) {
    entries.push_back({1, l});
    dim += 2 * l + 1;
  }
  IrrepVector out{Irreps(std::move(entries)), Eigen::VectorXd(dim)};
  int off = 0;
  for (int l : degrees) {
    for (int m = -l; m <= l; ++m) {
      out.data[off + m + l] =
          h.row(m + lmax).dot(grid.leg.lambda.row(LegendreCache::idx(l, std::abs(m))));
      count_muls(ops, nt);
    }
    off += 2 * l + 1;
  }
  return out;
}

}  // namespace detail

}  // namespace tpo
