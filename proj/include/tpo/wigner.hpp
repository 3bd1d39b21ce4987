#pragma once

#include <Eigen/Core>
#include <complex>
#include <random>
#include <vector>

#include "tpo/irreps.hpp"

namespace tpo {

// A rotation of R^3, stored as its 3x3 matrix.
struct Rotation {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();

  static Rotation identity() { return {}; }
  static Rotation from_axis_angle(const Eigen::Vector3d& axis, double angle);

  // Validates orthogonality and det=+1 to 1e-12; throws otherwise.
  static Rotation from_matrix(const Eigen::Matrix3d& M);

  // Haar-uniform, via a normalized random quaternion.
  static Rotation random(std::mt19937_64& rng);

  // (this * other) acts as: first other, then this.
  Rotation compose(const Rotation& other) const;
};

// One nonzero Clebsch-Gordan coefficient in the real basis.
struct CGEntry {
  int m1, m2, m3;
  double value;
};

// Sparse table of real-basis coupling coefficients for (l1, l2) -> l3.
struct CGTable {
  int l1 = 0, l2 = 0, l3 = 0;
  std::vector<CGEntry> entries;

  int dim1() const { return 2 * l1 + 1; }
  int dim2() const { return 2 * l2 + 1; }
  int dim3() const { return 2 * l3 + 1; }
};

// Complex-basis (Condon-Shortley) Clebsch-Gordan coefficients
// <l1 m1 l2 m2 | l3 m3>, which are real numbers.  Dense array indexed
// [(m1+l1)*dim2 + (m2+l2)]*dim3 + (m3+l3); zero unless m1+m2=m3 and
// |l1-l2| <= l3 <= l1+l2.
std::vector<double> cg_complex(int l1, int l2, int l3);

// Unitary change of basis U^l from complex to real spherical harmonics:
// a coefficient vector transforms as b = conj(U) a.  Rows/cols ordered
// m = -l..+l.
Eigen::MatrixXcd real_basis_change(int l);

// Real-basis CG table, memoized per (l1,l2,l3); safe for concurrent reads.
// Entries are sparse: nonzero only when m3 = ±m1 ± m2 (at most 8 slots per
// complex entry survive the basis change).
const CGTable& cg_real(int l1, int l2, int l3);

// Real Gaunt coefficients: integrals of triple products of real spherical
// harmonics over the sphere.  Memoized like cg_real.  Identically zero when
// l1+l2+l3 is odd or the triangle inequality fails.
const CGTable& gaunt_real(int l1, int l2, int l3);

// Densify a sparse table into row-major [(m1)(m2)(m3)] layout.
std::vector<double> densify(const CGTable& table);

// Same, into a reusable buffer (cleared and resized as needed).
void densify_into(const CGTable& table, std::vector<double>& dense);

// Real Wigner-D matrix of degree l: Y_l(R r) = D^l(R) Y_l(r) componentwise
// for the real spherical harmonics.  Orthogonal, and D(RS) = D(R) D(S).
Eigen::MatrixXd wigner_d(int l, const Rotation& rot);

// Rotate every copy of x by its degree's Wigner-D matrix.
IrrepVector rotate(const IrrepVector& x, const Rotation& rot);

}  // namespace tpo
