#include "tpo/gtp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>

#include "tpo/sphere.hpp"

namespace tpo {

namespace {

int max_degree(const Irreps& irreps) {
  int lmax = 0;
  for (const auto& e : irreps.entries()) lmax = std::max(lmax, e.l);
  return lmax;
}

// Grids are shared between calls at the same product band; building the
// quadrature rule is table work, not part of the product itself.
GridPtr product_grid(int L_product) {
  static std::map<int, GridPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.try_emplace(L_product);
  if (inserted) it->second = make_grid(L_product);
  return it->second;
}

IrrepVector scale_degrees(const IrrepVector& x, const Eigen::VectorXd& s, OpCounter* ops) {
  IrrepVector out = x;
  for (int e = 0; e < x.irreps.num_entries(); ++e) {
    const int l = x.irreps.l_of(e);
    if (l >= s.size())
      throw std::invalid_argument("weighted_gtp: weight vector shorter than input degrees");
    for (int c = 0; c < x.irreps.entries()[e].mul; ++c) out.slice(e, c) *= s[l];
    count_muls(ops, static_cast<std::uint64_t>(x.irreps.entries()[e].mul) * (2 * l + 1));
  }
  return out;
}

// Sample the antipodally extended real spherical harmonic on the torus:
// for theta in (pi, 2pi) the value at (2pi - theta, phi + pi) is used.  The
// extension of Y_{l,m} is a trig polynomial of degree l in theta and |m| in
// phi, so the 4L+2 point grid resolves products of two band-L factors.
double extended_sh(int l, int m, double phi, const Eigen::MatrixXd& lambda_cols, int j) {
  const double lam = lambda_cols(LegendreCache::idx(l, std::abs(m)), j);
  const double ang = m < 0 ? std::sin(-m * phi) : (m == 0 ? 1.0 : std::cos(m * phi));
  return lam * ang;
}

FourierTables build_fourier_tables(int L) {
  const int L2 = 2 * L;           // decode band (products of two band-L inputs)
  const int n = 4 * L + 2;        // torus resolution, exact for degree <= 2L spectra
  FourierTables tables;
  tables.L = L;
  tables.encode.L = L;
  tables.encode.modes.resize(static_cast<size_t>(L + 1) * (L + 1));
  tables.decode.L = L2;
  tables.decode.modes.resize(static_cast<size_t>(L2 + 1) * (L2 + 1));

  // Colatitudes of the doubled grid; theta_j > pi maps to the antipode.
  Eigen::VectorXd cosines(n);
  std::vector<double> phis(n), thetas(n);
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * M_PI * j / n;
    thetas[j] = theta;
    phis[j] = theta;  // same uniform circle for both axes
    cosines[j] = std::cos(theta <= M_PI ? theta : 2.0 * M_PI - theta);
  }
  const Eigen::MatrixXd lambda_cols = legendre_lambda_table(L2, cosines);

  // Encode side for every degree up to 2L: the decode least squares needs
  // the full product band even though the public encode stops at L.
  std::vector<std::vector<FourierModeEntry>> enc_all(static_cast<size_t>(L2 + 1) * (L2 + 1));
  Eigen::MatrixXcd samples(n, n), by_v(n, n);
  const std::complex<double> mi(0.0, -1.0);
  for (int l = 0; l <= L2; ++l)
    for (int m = -l; m <= l; ++m) {
      for (int j = 0; j < n; ++j) {
        const bool flip = thetas[j] > M_PI;
        for (int k = 0; k < n; ++k) {
          const double phi = flip ? phis[k] + M_PI : phis[k];
          samples(j, k) = extended_sh(l, m, phi, lambda_cols, j);
        }
      }
      // Exact 2D DFT, phi axis first.
      for (int j = 0; j < n; ++j)
        for (int v = -n / 2; v < n - n / 2; ++v) {
          std::complex<double> acc = 0.0;
          for (int k = 0; k < n; ++k) acc += samples(j, k) * std::exp(mi * (v * phis[k]));
          by_v(j, v + n / 2) = acc / static_cast<double>(n);
        }
      std::vector<FourierModeEntry>& slot = enc_all[static_cast<size_t>(l) * l + (m + l)];
      for (int v = -n / 2; v < n - n / 2; ++v) {
        for (int u = -n / 2; u < n - n / 2; ++u) {
          std::complex<double> acc = 0.0;
          for (int j = 0; j < n; ++j) acc += by_v(j, v + n / 2) * std::exp(mi * (u * thetas[j]));
          acc /= static_cast<double>(n);
          if (std::abs(acc) < 1e-13) continue;
          if (std::abs(v) != std::abs(m) || std::abs(u) > l)
            throw std::runtime_error("fourier_tables: spectrum outside the expected band");
          slot.push_back({u, v, acc});
        }
      }
    }
  for (int l = 0; l <= L; ++l)
    for (int m = -l; m <= l; ++m)
      tables.encode.modes[static_cast<size_t>(l) * l + (m + l)] =
          enc_all[static_cast<size_t>(l) * l + (m + l)];

  // Decode: invert the encode map per |m| block.  The extension couples m
  // with -m only, so each block stacks the v = ±|m| mode rows of all l >= |m|
  // and a complex pseudo-inverse gives the recovery weights.
  for (int m_abs = 0; m_abs <= L2; ++m_abs) {
    std::vector<int> cols;  // (l, m) flattened, l >= |m|
    for (int l = m_abs; l <= L2; ++l) {
      cols.push_back(l * l + (m_abs + l));
      if (m_abs > 0) cols.push_back(l * l + (-m_abs + l));
    }
    std::vector<std::pair<int, int>> rows;  // (u, v) modes
    for (int u = -L2; u <= L2; ++u) {
      rows.emplace_back(u, m_abs);
      if (m_abs > 0) rows.emplace_back(u, -m_abs);
    }
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(rows.size(), cols.size());
    for (size_t c = 0; c < cols.size(); ++c)
      for (const FourierModeEntry& e : enc_all[cols[c]])
        for (size_t r = 0; r < rows.size(); ++r)
          if (rows[r].first == e.u && rows[r].second == e.v) E(r, c) = e.w;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(E);
    if (cod.rank() < static_cast<Eigen::Index>(cols.size()))
      throw std::runtime_error("fourier_tables: encode block is rank deficient");
    const Eigen::MatrixXcd pinv = cod.pseudoInverse();
    for (size_t c = 0; c < cols.size(); ++c) {
      std::vector<FourierModeEntry>& slot = tables.decode.modes[cols[c]];
      for (size_t r = 0; r < rows.size(); ++r)
        if (std::abs(pinv(c, r)) > 1e-13)
          slot.push_back({rows[r].first, rows[r].second, pinv(c, r)});
    }
  }

  // Self-check: decode(encode(x)) must reproduce x across the full decode
  // band; anything worse than 1e-8 means the tables are unusable.
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  const Irreps band = Irreps::single_copies(L2);
  Eigen::VectorXd coeffs(band.dim());
  for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = gauss(rng);
  Fourier2DCoeffs spec;
  spec.band = L2;
  spec.c = Eigen::MatrixXcd::Zero(2 * L2 + 1, 2 * L2 + 1);
  int off = 0;
  for (int l = 0; l <= L2; ++l) {
    for (int m = -l; m <= l; ++m)
      for (const FourierModeEntry& e : enc_all[static_cast<size_t>(l) * l + (m + l)])
        spec.at(e.u, e.v) += coeffs[off + m + l] * e.w;
    off += 2 * l + 1;
  }
  off = 0;
  double err = 0.0;
  for (int l = 0; l <= L2; ++l) {
    for (int m = -l; m <= l; ++m) {
      std::complex<double> acc = 0.0;
      for (const FourierModeEntry& e : tables.decode.at(l, m)) acc += e.w * spec.at(e.u, e.v);
      err = std::max(err, std::abs(acc - coeffs[off + m + l]));
    }
    off += 2 * l + 1;
  }
  if (err > 1e-8)
    throw std::runtime_error("fourier_tables: encode/decode round trip failed, residual " +
                             std::to_string(err));
  return tables;
}

}  // namespace

const FourierTables& fourier_tables(int L) {
  static std::map<int, std::unique_ptr<const FourierTables>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<const FourierTables>(build_fourier_tables(L));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.try_emplace(L, std::move(built));
  return *it->second;
}

IrrepVector gtp_grid(const IrrepVector& x, const IrrepVector& y, int L3, OpCounter* ops) {
  if (L3 < 0) throw std::invalid_argument("gtp_grid: L3 must be >= 0");
  std::vector<int> degrees(L3 + 1);
  for (int l = 0; l <= L3; ++l) degrees[l] = l;
  IrrepVector out = detail::gtp_grid_select(x, y, degrees, ops);
  out.irreps = Irreps::single_copies(L3);
  return out;
}

IrrepVector weighted_gtp(const IrrepVector& x, const IrrepVector& y,
                         const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c, int L3, OpCounter* ops) {
  if (c.size() != L3 + 1)
    throw std::invalid_argument("weighted_gtp: c must have L3+1 entries");
  const IrrepVector xs = scale_degrees(x, a, ops);
  const IrrepVector ys = scale_degrees(y, b, ops);
  IrrepVector out = gtp_grid(xs, ys, L3, ops);
  return scale_degrees(out, c, ops);
}

IrrepVector gtp_fourier(const IrrepVector& x, const IrrepVector& y, int L3, OpCounter* ops) {
  if (L3 < 0) throw std::invalid_argument("gtp_fourier: L3 must be >= 0");
  std::vector<int> degrees(L3 + 1);
  for (int l = 0; l <= L3; ++l) degrees[l] = l;
  IrrepVector out = detail::gtp_fourier_select(x, y, degrees, ops);
  out.irreps = Irreps::single_copies(L3);
  return out;
}

namespace detail {

IrrepVector gtp_grid_select(const IrrepVector& x, const IrrepVector& y,
                            const std::vector<int>& degrees, OpCounter* ops) {
  const int L1 = max_degree(x.irreps), L2 = max_degree(y.irreps);
  const int band = L1 + L2;
  const GridPtr grid = product_grid(band);
  const SphereSignal fx = to_sphere(x, grid, ops);
  const SphereSignal fy = to_sphere(y, grid, ops);
  const SphereSignal fz = pointwise_mul(fx, fy, ops);

  // Degrees beyond the product band vanish identically (and sit outside
  // the quadrature's exactness), so they are zero blocks.
  std::vector<int> inside;
  for (int l : degrees)
    if (l <= band) inside.push_back(l);
  const IrrepVector low = from_sphere_select(fz, inside, ops);

  std::vector<Irreps::Entry> entries;
  int dim = 0;
  for (int l : degrees) {
    entries.push_back({1, l});
    dim += 2 * l + 1;
  }
  IrrepVector out{Irreps(std::move(entries)), Eigen::VectorXd::Zero(dim)};
  int off = 0, off_low = 0;
  for (int l : degrees) {
    if (l <= band) {
      out.data.segment(off, 2 * l + 1) = low.data.segment(off_low, 2 * l + 1);
      off_low += 2 * l + 1;
    }
    off += 2 * l + 1;
  }
  return out;
}

IrrepVector gtp_fourier_select(const IrrepVector& x, const IrrepVector& y,
                               const std::vector<int>& degrees, OpCounter* ops) {
  const int L = std::max(max_degree(x.irreps), max_degree(y.irreps));
  const FourierTables& tabs = fourier_tables(L);

  // Encode: scatter real coefficients onto the sparse torus modes.
  auto encode = [&](const IrrepVector& v) {
    Fourier2DCoeffs spec;
    spec.band = L;
    spec.c = Eigen::MatrixXcd::Zero(2 * L + 1, 2 * L + 1);
    for (int e = 0; e < v.irreps.num_entries(); ++e) {
      const int l = v.irreps.l_of(e);
      for (int cp = 0; cp < v.irreps.entries()[e].mul; ++cp) {
        const auto coeffs = v.slice(e, cp);
        for (int m = -l; m <= l; ++m) {
          for (const FourierModeEntry& me : tabs.encode.at(l, m)) {
            spec.at(me.u, me.v) += coeffs[m + l] * me.w;
            count_muls(ops, 2);  // real * complex
          }
        }
      }
    }
    return spec;
  };
  const Fourier2DCoeffs cx = encode(x);
  const Fourier2DCoeffs cy = encode(y);

  // Convolution on the torus = product of the extended functions.
  Fourier2DCoeffs cz;
  cz.band = 2 * L;
  cz.c = Eigen::MatrixXcd::Zero(4 * L + 1, 4 * L + 1);
  for (int u1 = -L; u1 <= L; ++u1)
    for (int v1 = -L; v1 <= L; ++v1) {
      const std::complex<double> a = cx.at(u1, v1);
      for (int u2 = -L; u2 <= L; ++u2)
        for (int v2 = -L; v2 <= L; ++v2) {
          cz.at(u1 + u2, v1 + v2) += a * cy.at(u2, v2);
          count_muls(ops, 4);  // complex * complex
        }
    }

  // Decode the product band back to sphere coefficients; degrees beyond
  // the decode band stay zero.
  std::vector<Irreps::Entry> entries;
  int dim = 0;
  for (int l : degrees) {
    entries.push_back({1, l});
    dim += 2 * l + 1;
  }
  IrrepVector out{Irreps(std::move(entries)), Eigen::VectorXd::Zero(dim)};
  int off = 0;
  for (int l : degrees) {
    if (l <= 2 * L) {
      for (int m = -l; m <= l; ++m) {
        std::complex<double> acc = 0.0;
        for (const FourierModeEntry& me : tabs.decode.at(l, m)) {
          acc += me.w * cz.at(me.u, me.v);
          count_muls(ops, 4);
        }
        out.data[off + m + l] = acc.real();
      }
    }
    off += 2 * l + 1;
  }
  return out;
}

}  // namespace detail

}  // namespace tpo
