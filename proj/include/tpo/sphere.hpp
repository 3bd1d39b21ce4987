#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "tpo/irreps.hpp"

namespace tpo {

// Normalized associated Legendre values.  With x = cos(theta), row idx(l,m)
// holds Lambda_{l,m}(theta) = sqrt(2 - delta_{m0}) * Pbar_l^m(x) for m >= 0,
// where Pbar carries the orthonormalization int Pbar^2 dx = 1/(2pi) and no
// Condon-Shortley phase.  The real spherical harmonic of degree l, order m
// is then Lambda_{l,|m|}(theta) times cos(m phi) (m>0), 1 (m=0), or
// sin(|m| phi) (m<0).
struct LegendreCache {
  int l_max = 0;
  Eigen::MatrixXd lambda;  // ((l_max+1)(l_max+2)/2) x n_points

  static int idx(int l, int m_abs) { return l * (l + 1) / 2 + m_abs; }
};

// Lambda_{l,m} columns for arbitrary colatitudes, row layout as above.
// Stable recurrences in the normalized basis; good to l = 32 and beyond.
Eigen::MatrixXd legendre_lambda_table(int l_max, const Eigen::VectorXd& cos_theta);

// Gauss-Legendre nodes (ascending, in (-1,1)) and weights (sum 2) on [-1,1].
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

// Quadrature grid on S^2: Gauss-Legendre in cos(theta) crossed with a
// uniform phi circle.  make_grid(L) is exact for integrands of theta-degree
// <= 2L+1 and phi-frequency <= 2L, which covers analysis of a band-L signal
// and triple products Y_l1 Y_l2 Y_l3 with l1+l2+l3 <= 2L.
struct S2Grid {
  int L_max = 0;
  Eigen::VectorXd theta_nodes;    // cos(theta_j), ascending
  Eigen::VectorXd theta_weights;  // Gauss-Legendre weights, sum 2
  int n_phi = 0;                  // phi_k = 2 pi k / n_phi
  LegendreCache leg;              // Lambda over the theta nodes, l <= L_max
  Eigen::MatrixXd cs;             // (2L_max+1) x n_phi; row m+L_max holds cs_m(phi_k)

  int n_theta() const { return static_cast<int>(theta_nodes.size()); }
};

using GridPtr = std::shared_ptr<const S2Grid>;

// n_theta = L+1, n_phi = 2L+1, Legendre cache to L.
GridPtr make_grid(int L);

// Pointwise samples F(theta_j, phi_k) of a function on the sphere.
struct SphereSignal {
  GridPtr grid;
  Eigen::MatrixXd values;  // n_theta x n_phi
};

// Synthesis: F = sum_{copies (l,m)} x_{l,m} Y_{l,m}.  Requires
// grid->L_max >= max degree in x.
SphereSignal to_sphere(const IrrepVector& x, const GridPtr& grid,
                       OpCounter* ops = nullptr);

// Analysis by quadrature: x_{l,m} = sum_j w_j Lambda_{l,m}(theta_j)
// * (2pi/n_phi) sum_k F(j,k) cs_m(phi_k), for l = 0..L_out (single copies).
// Exact for band-limited F when the grid is large enough.
IrrepVector from_sphere(const SphereSignal& f, int L_out,
                        OpCounter* ops = nullptr);

// Sample-wise product; both signals must live on the same grid shape.
SphereSignal pointwise_mul(const SphereSignal& a, const SphereSignal& b,
                           OpCounter* ops = nullptr);

namespace detail {

// Analysis restricted to a chosen set of degrees, concatenated in the given
// order.  from_sphere is the special case degrees = {0..L_out}.
IrrepVector from_sphere_select(const SphereSignal& f,
                               const std::vector<int>& degrees,
                               OpCounter* ops = nullptr);

}  // namespace detail

}  // namespace tpo
