#include "tpo/wigner.hpp"

#include <Eigen/Geometry>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace tpo {

namespace {

// Entries with magnitude below this are structural zeros of the sparse
// tables; residues of the discarded real/imaginary part may reach it too.
constexpr double kStructuralZero = 1e-12;
// A discarded part larger than this means the basis change went wrong.
constexpr double kResidueLimit = 1e-10;

// log(n!) in long double; the Racah sum needs factorials up to
// l1+l2+l3+1 and suffers cancellation, so keep the extra mantissa bits.
long double log_factorial(int n) {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(512);
    t[0] = 0.0L;
    for (size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<long double>(i));
    return t;
  }();
  return table.at(n);
}

bool triangle(int l1, int l2, int l3) {
  return l3 >= std::abs(l1 - l2) && l3 <= l1 + l2;
}

// Racah's closed form for <l1 m1 l2 m2 | l3 m3> (see e.g. Varshalovich,
// "Quantum Theory of Angular Momentum", eq. 8.2.1(3)).
double cg_coefficient(int l1, int m1, int l2, int m2, int l3, int m3) {
  if (m1 + m2 != m3 || !triangle(l1, l2, l3)) return 0.0;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;

  const long double log_pref =
      0.5L * (std::log(2.0L * l3 + 1.0L) + log_factorial(l1 + l2 - l3) +
              log_factorial(l1 - l2 + l3) + log_factorial(-l1 + l2 + l3) -
              log_factorial(l1 + l2 + l3 + 1) + log_factorial(l3 + m3) +
              log_factorial(l3 - m3) + log_factorial(l1 + m1) + log_factorial(l1 - m1) +
              log_factorial(l2 + m2) + log_factorial(l2 - m2));

  const int z_lo = std::max({0, -(l3 - l2 + m1), -(l3 - l1 - m2)});
  const int z_hi = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
  long double sum = 0.0L;
  for (int z = z_lo; z <= z_hi; ++z) {
    const long double log_den = log_factorial(z) + log_factorial(l1 + l2 - l3 - z) +
                                log_factorial(l1 - m1 - z) + log_factorial(l2 + m2 - z) +
                                log_factorial(l3 - l2 + m1 + z) +
                                log_factorial(l3 - l1 - m2 + z);
    const long double term = std::exp(log_pref - log_den);
    sum += (z % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

using Key = std::array<int, 3>;
using TableCache = std::map<Key, std::unique_ptr<const CGTable>>;

std::mutex cache_mutex;

const CGTable& cache_lookup(TableCache& cache, int l1, int l2, int l3,
                            CGTable (*build)(int, int, int)) {
  const Key key{l1, l2, l3};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<const CGTable>(build(l1, l2, l3));
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.try_emplace(key, std::move(built));
  return *it->second;
}

// Shared core of cg_real / gaunt_real: accumulate a complex-basis table
// into the real basis and split off the part that must vanish.
//
// The basis change of a coupling tensor is purely real when l1+l2+l3 is
// even and purely imaginary when it is odd (the U matrices contribute a
// phase i^{parity}).  In the odd case the table is multiplied by -i, i.e.
// the imaginary part is kept; either way the discarded part is checked.
CGTable collect_real_table(int l1, int l2, int l3,
                           const std::vector<std::complex<double>>& dense,
                           const char* what) {
  const int d1 = 2 * l1 + 1, d2 = 2 * l2 + 1, d3 = 2 * l3 + 1;
  const bool odd = (l1 + l2 + l3) % 2 != 0;
  double residue = 0.0;
  CGTable out{l1, l2, l3, {}};
  for (int n1 = -l1; n1 <= l1; ++n1)
    for (int n2 = -l2; n2 <= l2; ++n2)
      for (int n3 = -l3; n3 <= l3; ++n3) {
        const std::complex<double> v =
            dense[((n1 + l1) * d2 + (n2 + l2)) * d3 + (n3 + l3)];
        const double keep = odd ? v.imag() : v.real();
        const double drop = odd ? v.real() : v.imag();
        residue = std::max(residue, std::abs(drop));
        if (std::abs(keep) > kStructuralZero) out.entries.push_back({n1, n2, n3, keep});
      }
  if (residue > kResidueLimit)
    throw std::runtime_error(std::string(what) + ": basis change left a mixed table (" +
                             std::to_string(l1) + "," + std::to_string(l2) + "," +
                             std::to_string(l3) + "), residue " + std::to_string(residue));
  return out;
}

CGTable build_cg_real(int l1, int l2, int l3) {
  CGTable out{l1, l2, l3, {}};
  if (!triangle(l1, l2, l3)) return out;

  const std::vector<double> cg = cg_complex(l1, l2, l3);
  const Eigen::MatrixXcd U1 = real_basis_change(l1);
  const Eigen::MatrixXcd U2 = real_basis_change(l2);
  const Eigen::MatrixXcd U3 = real_basis_change(l3);
  const int d1 = 2 * l1 + 1, d2 = 2 * l2 + 1, d3 = 2 * l3 + 1;

  // Scatter each complex entry (m3 = m1+m2) into the <= 8 real slots
  // (n_i = ±m_i) it can reach; the output slot takes conj(U3).
  std::vector<std::complex<double>> dense(static_cast<size_t>(d1) * d2 * d3);
  for (int m1 = -l1; m1 <= l1; ++m1)
    for (int m2 = -l2; m2 <= l2; ++m2) {
      const int m3 = m1 + m2;
      if (std::abs(m3) > l3) continue;
      const double c = cg[((m1 + l1) * d2 + (m2 + l2)) * d3 + (m3 + l3)];
      if (c == 0.0) continue;
      for (int n1 : {-std::abs(m1), std::abs(m1)}) {
        const std::complex<double> u1 = U1(n1 + l1, m1 + l1);
        if (u1 == 0.0) continue;
        for (int n2 : {-std::abs(m2), std::abs(m2)}) {
          const std::complex<double> u12 = u1 * U2(n2 + l2, m2 + l2);
          if (u12 == 0.0) continue;
          for (int n3 : {-std::abs(m3), std::abs(m3)}) {
            const std::complex<double> u3 = U3(n3 + l3, m3 + l3);
            if (u3 == 0.0) continue;
            dense[((n1 + l1) * d2 + (n2 + l2)) * d3 + (n3 + l3)] += u12 * std::conj(u3) * c;
            if (n3 == 0) break;  // ±0 is one slot
          }
          if (n2 == 0) break;
        }
        if (n1 == 0) break;
      }
    }
  return collect_real_table(l1, l2, l3, dense, "cg_real");
}

CGTable build_gaunt_real(int l1, int l2, int l3) {
  CGTable out{l1, l2, l3, {}};
  // Parity selection: the integrand is odd under point reflection unless
  // l1+l2+l3 is even; triangle violations integrate to zero as well.
  if (!triangle(l1, l2, l3) || (l1 + l2 + l3) % 2 != 0) return out;

  const int d1 = 2 * l1 + 1, d2 = 2 * l2 + 1, d3 = 2 * l3 + 1;
  const double pref = std::sqrt((2.0 * l1 + 1) * (2.0 * l2 + 1) /
                                (4.0 * M_PI * (2.0 * l3 + 1)));
  const double c000 = cg_coefficient(l1, 0, l2, 0, l3, 0);

  const Eigen::MatrixXcd U1 = real_basis_change(l1);
  const Eigen::MatrixXcd U2 = real_basis_change(l2);
  const Eigen::MatrixXcd U3 = real_basis_change(l3);

  // Complex Gaunt integral of three unconjugated harmonics:
  //   (-1)^{m3} pref C(l3 0; l1 0 l2 0) C(l3 -m3; l1 m1 l2 m2),
  // nonzero only when m1+m2+m3 = 0.  All three slots transform with U
  // (no conjugation) since the integrand has no conjugate factor.
  std::vector<std::complex<double>> dense(static_cast<size_t>(d1) * d2 * d3);
  for (int m1 = -l1; m1 <= l1; ++m1)
    for (int m2 = -l2; m2 <= l2; ++m2) {
      const int m3 = -(m1 + m2);
      if (std::abs(m3) > l3) continue;
      const double sign = (m3 % 2 == 0) ? 1.0 : -1.0;
      const double g = sign * pref * c000 * cg_coefficient(l1, m1, l2, m2, l3, -m3);
      if (g == 0.0) continue;
      for (int n1 : {-std::abs(m1), std::abs(m1)}) {
        const std::complex<double> u1 = U1(n1 + l1, m1 + l1);
        if (u1 == 0.0) continue;
        for (int n2 : {-std::abs(m2), std::abs(m2)}) {
          const std::complex<double> u12 = u1 * U2(n2 + l2, m2 + l2);
          if (u12 == 0.0) continue;
          for (int n3 : {-std::abs(m3), std::abs(m3)}) {
            const std::complex<double> u3 = U3(n3 + l3, m3 + l3);
            if (u3 == 0.0) continue;
            dense[((n1 + l1) * d2 + (n2 + l2)) * d3 + (n3 + l3)] += u12 * u3 * g;
            if (n3 == 0) break;
          }
          if (n2 == 0) break;
        }
        if (n1 == 0) break;
      }
    }
  return collect_real_table(l1, l2, l3, dense, "gaunt_real");
}

}  // namespace

Rotation Rotation::from_axis_angle(const Eigen::Vector3d& axis, double angle) {
  const double n = axis.norm();
  if (n == 0.0) throw std::invalid_argument("rotation: zero axis");
  Rotation r;
  r.R = Eigen::AngleAxisd(angle, axis / n).toRotationMatrix();
  return r;
}

Rotation Rotation::from_matrix(const Eigen::Matrix3d& M) {
  const double ortho = (M.transpose() * M - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (ortho > 1e-12 || std::abs(M.determinant() - 1.0) > 1e-12)
    throw std::invalid_argument("rotation: matrix is not a proper rotation");
  Rotation r;
  r.R = M;
  return r;
}

Rotation Rotation::random(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  q.normalize();
  Rotation r;
  r.R = q.toRotationMatrix();
  return r;
}

Rotation Rotation::compose(const Rotation& other) const {
  Rotation r;
  r.R = R * other.R;
  return r;
}

std::vector<double> cg_complex(int l1, int l2, int l3) {
  if (l1 < 0 || l2 < 0 || l3 < 0) throw std::invalid_argument("cg_complex: negative degree");
  const int d1 = 2 * l1 + 1, d2 = 2 * l2 + 1, d3 = 2 * l3 + 1;
  std::vector<double> out(static_cast<size_t>(d1) * d2 * d3, 0.0);
  if (!triangle(l1, l2, l3)) return out;
  for (int m1 = -l1; m1 <= l1; ++m1)
    for (int m2 = -l2; m2 <= l2; ++m2) {
      const int m3 = m1 + m2;
      if (std::abs(m3) > l3) continue;
      out[((m1 + l1) * d2 + (m2 + l2)) * d3 + (m3 + l3)] =
          cg_coefficient(l1, m1, l2, m2, l3, m3);
    }
  return out;
}

Eigen::MatrixXcd real_basis_change(int l) {
  const int d = 2 * l + 1;
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(d, d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> i_unit(0.0, 1.0);
  U(l, l) = 1.0;  // m = 0
  for (int m = 1; m <= l; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    U(l + m, l + m) = sign * inv_sqrt2;           // cos row, +m column
    U(l + m, l - m) = inv_sqrt2;                  // cos row, -m column
    U(l - m, l + m) = -i_unit * sign * inv_sqrt2; // sin row, +m column
    U(l - m, l - m) = i_unit * inv_sqrt2;         // sin row, -m column
  }
  return U;
}

const CGTable& cg_real(int l1, int l2, int l3) {
  static TableCache cache;
  return cache_lookup(cache, l1, l2, l3, build_cg_real);
}

const CGTable& gaunt_real(int l1, int l2, int l3) {
  static TableCache cache;
  return cache_lookup(cache, l1, l2, l3, build_gaunt_real);
}

std::vector<double> densify(const CGTable& t) {
  std::vector<double> dense;
  densify_into(t, dense);
  return dense;
}

void densify_into(const CGTable& t, std::vector<double>& dense) {
  const int d2 = t.dim2(), d3 = t.dim3();
  dense.assign(static_cast<size_t>(t.dim1()) * d2 * d3, 0.0);
  for (const CGEntry& e : t.entries)
    dense[((e.m1 + t.l1) * d2 + (e.m2 + t.l2)) * d3 + (e.m3 + t.l3)] = e.value;
}

Eigen::MatrixXd wigner_d(int l, const Rotation& rot) {
  if (l < 0) throw std::invalid_argument("wigner_d: negative degree");
  if (l == 0) return Eigen::MatrixXd::Ones(1, 1);

  // Degree 1 in the real basis is the rotation matrix itself, permuted to
  // the (y, z, x) component order of the l=1 harmonics.
  const std::array<Eigen::Vector3d, 3> u = {Eigen::Vector3d::UnitY(),
                                            Eigen::Vector3d::UnitZ(),
                                            Eigen::Vector3d::UnitX()};
  Eigen::MatrixXd D1(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) D1(i, j) = u[i].dot(rot.R * u[j]);
  if (l == 1) return D1;

  // D^l = Q (D^1 ⊗ D^{l-1}) Q^T with Q = cg_real(1, l-1, l); the rows of Q
  // are orthonormal, so the recursion is exact.
  Eigen::MatrixXd prev = wigner_d(l - 1, rot);
  const CGTable& q = cg_real(1, l - 1, l);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * l + 1, 2 * l + 1);
  for (const CGEntry& a : q.entries)
    for (const CGEntry& b : q.entries)
      D(a.m3 + l, b.m3 + l) +=
          a.value * b.value * D1(a.m1 + 1, b.m1 + 1) * prev(a.m2 + l - 1, b.m2 + l - 1);
  return D;
}

IrrepVector rotate(const IrrepVector& x, const Rotation& rot) {
  IrrepVector out = IrrepVector::zeros(x.irreps);
  std::map<int, Eigen::MatrixXd> d_by_l;
  for (int e = 0; e < x.irreps.num_entries(); ++e) {
    const int l = x.irreps.l_of(e);
    auto it = d_by_l.find(l);
    if (it == d_by_l.end()) it = d_by_l.emplace(l, wigner_d(l, rot)).first;
    for (int c = 0; c < x.irreps.entries()[e].mul; ++c)
      out.slice(e, c) = it->second * x.slice(e, c);
  }
  return out;
}

}  // namespace tpo
