#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "tpo/irreps.hpp"

namespace tpo {

// Gaunt tensor product on a quadrature grid: multiply the inputs pointwise
// as functions on the sphere and re-expand.  Output degrees run 0..L3;
// degrees beyond the product band L1+L2 are exactly zero.  Equals the
// contraction of gaunt_real tables with the inputs.
IrrepVector gtp_grid(const IrrepVector& x, const IrrepVector& y, int L3,
                     OpCounter* ops = nullptr);

// Gaunt product with per-degree weights: c ⊙ gtp(a ⊙ x, b ⊙ y), where
// (a ⊙ x)_l = a_l x_l.  a, b must cover the input degrees and c has L3+1
// entries.
IrrepVector weighted_gtp(const IrrepVector& x, const IrrepVector& y,
                         const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c, int L3,
                         OpCounter* ops = nullptr);

// 2D Fourier data on the torus: coefficients c(u,v) for e^{i(u theta + v phi)},
// |u|,|v| <= band.  Real-valued functions obey c(-u,-v) = conj(c(u,v)).
struct Fourier2DCoeffs {
  int band = 0;
  Eigen::MatrixXcd c;  // (2*band+1) x (2*band+1), index (u+band, v+band)

  std::complex<double>& at(int u, int v) { return c(u + band, v + band); }
  std::complex<double> at(int u, int v) const { return c(u + band, v + band); }
};

// One torus mode with its weight.
struct FourierModeEntry {
  int u = 0, v = 0;
  std::complex<double> w;
};

// y^{l,m}_{u,v}: torus Fourier coefficients of the antipodally extended real
// spherical harmonics.  Sparse in v (only v = ±m survives) and banded in u
// (|u| <= l).
struct FourierEncodeTable {
  int L = 0;  // covers degrees l <= L
  // entry list per (l, m), index l*l + (m + l)
  std::vector<std::vector<FourierModeEntry>> modes;

  const std::vector<FourierModeEntry>& at(int l, int m) const {
    return modes[l * l + (m + l)];
  }
};

// z^{l,m}_{u,v}: pseudo-inverse of the encode map, restricted per |m| block
// (the extension couples m and -m only).  Applied to a band-limited torus
// spectrum it recovers the sphere coefficients exactly.
struct FourierDecodeTable {
  int L = 0;  // decodes degrees l <= L
  std::vector<std::vector<FourierModeEntry>> modes;

  const std::vector<FourierModeEntry>& at(int l, int m) const {
    return modes[l * l + (m + l)];
  }
};

struct FourierTables {
  int L = 0;                  // input band; decode covers products up to 2L
  FourierEncodeTable encode;  // degrees <= L
  FourierDecodeTable decode;  // degrees <= 2L
};

// Build (exact 2D DFT on a 4L+2 point torus grid, then per-block least
// squares for the decode).  The constructor self-checks a decode∘encode
// round trip and throws if the residual exceeds 1e-8.  Memoized per L.
const FourierTables& fourier_tables(int L);

// Gaunt product computed in torus Fourier space: encode both inputs,
// convolve spectra, decode.  Matches gtp_grid to quadrature accuracy.
IrrepVector gtp_fourier(const IrrepVector& x, const IrrepVector& y, int L3,
                        OpCounter* ops = nullptr);

namespace detail {

// Same products, but re-expanding only the requested output degrees
// (concatenated in the given order).  Degrees beyond the product band come
// back as zero blocks.  gtp_grid/gtp_fourier are the 0..L3 special cases.
IrrepVector gtp_grid_select(const IrrepVector& x, const IrrepVector& y,
                            const std::vector<int>& degrees,
                            OpCounter* ops = nullptr);
IrrepVector gtp_fourier_select(const IrrepVector& x, const IrrepVector& y,
                               const std::vector<int>& degrees,
                               OpCounter* ops = nullptr);

}  // namespace detail

}  // namespace tpo
