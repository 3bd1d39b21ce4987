#include "tpo/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "tpo/bench.hpp"
#include "tpo/cgtp.hpp"
#include "tpo/expressivity.hpp"
#include "tpo/gtp.hpp"
#include "tpo/mtp.hpp"
#include "tpo/sphere.hpp"
#include "tpo/wigner.hpp"

namespace tpo {

namespace {

// Acceptance-grade thresholds.  Deliberately constants, not parameters:
// loosening them should require editing this file.
constexpr double kEquivarianceTol = 1e-9;
constexpr double kSparseVsNaiveTol = 1e-12;
constexpr double kFourierVsGridTol = 1e-8;
constexpr double kGridVsGauntTol = 1e-9;
constexpr double kMtpVsPathsTol = 1e-10;
constexpr double kOddParityTol = 1e-12;
constexpr double kCrossRelTol = 1e-10;
constexpr double kGauntNonzeroTol = 1e-6;
constexpr double kRoundtripTol = 1e-11;
constexpr double kOrthonormalityTol = 1e-12;
constexpr double kFourierRoundtripTol = 1e-10;
constexpr double kGroupLawTol = 1e-10;
constexpr double kDOrthogonalityTol = 1e-11;
constexpr double kSlopeTol = 0.3;

const std::vector<int> kSlopeLs = {4, 6, 8, 12, 16};

struct TpoCombo {
  Kind kind;
  BenchImpl impl;
  const char* name;
};

const TpoCombo kCombos[] = {
    {Kind::cgtp, BenchImpl::naive, "cgtp-naive"},
    {Kind::cgtp, BenchImpl::sparse, "cgtp-sparse"},
    {Kind::gtp, BenchImpl::grid, "gtp-grid"},
    {Kind::gtp, BenchImpl::fourier, "gtp-fourier"},
    {Kind::mtp, BenchImpl::naive, "mtp-naive"},
    {Kind::mtp, BenchImpl::sparse, "mtp-sparse"},
};

IrrepVector apply_mimo(Kind kind, BenchImpl impl, const IrrepVector& x, const IrrepVector& y,
                       int L) {
  switch (kind) {
    case Kind::cgtp:
      return cgtp_mimo(x, y, impl == BenchImpl::naive ? CgtpImpl::naive : CgtpImpl::sparse);
    case Kind::gtp:
      return impl == BenchImpl::grid ? gtp_grid(x, y, 2 * L) : gtp_fourier(x, y, 2 * L);
    default:
      return mtp(x, y, 2 * L, impl == BenchImpl::naive ? MtpImpl::naive : MtpImpl::sparse);
  }
}

double max_diff(const IrrepVector& a, const IrrepVector& b) {
  return (a.data - b.data).cwiseAbs().maxCoeff();
}

// Fit over the largest three entries of the sweep (asymptotic regime).
double tail_slope(const std::vector<double>& counts) {
  const std::vector<int> ls(kSlopeLs.end() - 3, kSlopeLs.end());
  const std::vector<double> ys(counts.end() - 3, counts.end());
  return fit_loglog_slope(ls, ys);
}

std::vector<CheckResult> suite_equivariance(int L, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  const Irreps in = Irreps::single_copies(L);

  std::vector<Rotation> rotations;
  for (int r = 0; r < 20; ++r) rotations.push_back(Rotation::random(rng));
  std::vector<std::pair<IrrepVector, IrrepVector>> pairs;
  for (int p = 0; p < 10; ++p)
    pairs.emplace_back(IrrepVector::random(in, rng), IrrepVector::random(in, rng));

  for (const TpoCombo& combo : kCombos) {
    double worst = 0.0;
    for (const Rotation& g : rotations)
      for (const auto& [x, y] : pairs) {
        const IrrepVector lhs = apply_mimo(combo.kind, combo.impl, rotate(x, g), rotate(y, g), L);
        const IrrepVector rhs = rotate(apply_mimo(combo.kind, combo.impl, x, y, L), g);
        worst = std::max(worst, max_diff(lhs, rhs));
      }
    out.push_back({"equivariance", combo.name, L, worst, kEquivarianceTol,
                   worst <= kEquivarianceTol});
  }

  // Wigner-D is the machinery behind all of the above; check it directly.
  double law = 0.0, ortho = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Rotation g1 = Rotation::random(rng), g2 = Rotation::random(rng);
    for (int l = 0; l <= L; ++l) {
      const Eigen::MatrixXd d1 = wigner_d(l, g1), d2 = wigner_d(l, g2);
      const Eigen::MatrixXd d12 = wigner_d(l, g1.compose(g2));
      law = std::max(law, (d1 * d2 - d12).cwiseAbs().maxCoeff());
      ortho = std::max(
          ortho, (d1 * d1.transpose() - Eigen::MatrixXd::Identity(2 * l + 1, 2 * l + 1))
                     .cwiseAbs()
                     .maxCoeff());
    }
  }
  out.push_back({"equivariance", "wigner-group-law", L, law, kGroupLawTol, law <= kGroupLawTol});
  out.push_back({"equivariance", "wigner-orthogonality", L, ortho, kDOrthogonalityTol,
                 ortho <= kDOrthogonalityTol});
  return out;
}

std::vector<CheckResult> suite_oracle_equality(int L, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  const Irreps in = Irreps::single_copies(L);
  const int n_pairs = 100;

  double sparse_vs_naive = 0.0, fourier_vs_grid = 0.0, grid_vs_gaunt = 0.0, mtp_vs_paths = 0.0;

  // Per-path weights of the matrix product at this band's carrier.
  const int lt = mtp_l_tilde(L, L, 2 * L);
  const PathTable paths = valid_paths(L, L, 2 * L);
  std::vector<double> weights(paths.paths.size());
  for (size_t p = 0; p < paths.paths.size(); ++p) {
    const Path& pa = paths.paths[p];
    weights[p] = mtp_path_weights(pa.l1, pa.l2, pa.l3, lt);
  }

  for (int t = 0; t < n_pairs; ++t) {
    const IrrepVector x = IrrepVector::random(in, rng);
    const IrrepVector y = IrrepVector::random(in, rng);

    sparse_vs_naive = std::max(
        sparse_vs_naive, max_diff(cgtp_mimo(x, y, CgtpImpl::sparse),
                                  cgtp_mimo(x, y, CgtpImpl::naive)));

    const IrrepVector grid = gtp_grid(x, y, 2 * L);
    fourier_vs_grid = std::max(fourier_vs_grid, max_diff(gtp_fourier(x, y, 2 * L), grid));

    // Gaunt contraction: z^{l3}_{m3} = sum gaunt[m1,m2,m3] x_{l1,m1} y_{l2,m2}.
    IrrepVector gaunt_z = IrrepVector::zeros(Irreps::single_copies(2 * L));
    for (int l1 = 0; l1 <= L; ++l1)
      for (int l2 = 0; l2 <= L; ++l2)
        for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3) {
          const auto xs = x.slice(l1);
          const auto ys = y.slice(l2);
          auto zs = gaunt_z.slice(l3);
          for (const CGEntry& e : gaunt_real(l1, l2, l3).entries)
            zs[e.m3 + l3] += e.value * xs[e.m1 + l1] * ys[e.m2 + l2];
        }
    grid_vs_gaunt = std::max(grid_vs_gaunt, max_diff(grid, gaunt_z));

    // Matrix product against its own path decomposition.
    IrrepVector path_sum = IrrepVector::zeros(Irreps::single_copies(2 * L));
    for (size_t p = 0; p < paths.paths.size(); ++p) {
      if (weights[p] == 0.0) continue;
      const Path& pa = paths.paths[p];
      Eigen::VectorXd seg(2 * pa.l3 + 1);
      cgtp_path_naive(pa, x.slice(pa.l1), y.slice(pa.l2), seg);
      path_sum.slice(pa.l3) += weights[p] * seg;
    }
    mtp_vs_paths = std::max(mtp_vs_paths, max_diff(mtp(x, y, 2 * L), path_sum));
  }

  out.push_back({"oracle-equality", "cgtp-sparse-vs-naive", L, sparse_vs_naive,
                 kSparseVsNaiveTol, sparse_vs_naive <= kSparseVsNaiveTol});
  out.push_back({"oracle-equality", "gtp-fourier-vs-grid", L, fourier_vs_grid,
                 kFourierVsGridTol, fourier_vs_grid <= kFourierVsGridTol});
  out.push_back({"oracle-equality", "gtp-grid-vs-gaunt", L, grid_vs_gaunt, kGridVsGauntTol,
                 grid_vs_gaunt <= kGridVsGauntTol});
  out.push_back({"oracle-equality", "mtp-vs-cg-paths", L, mtp_vs_paths, kMtpVsPathsTol,
                 mtp_vs_paths <= kMtpVsPathsTol});
  return out;
}

// Cross product of two l=1 slices in the (y, z, x) component convention.
Eigen::Vector3d cross_yzx(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double ax = a[2], ay = a[0], az = a[1];
  const double bx = b[2], by = b[0], bz = b[1];
  return {az * bx - ax * bz,   // y component
          ax * by - ay * bx,   // z component
          ay * bz - az * by};  // x component
}

double cross_rel_err(const Eigen::Vector3d& out, const Eigen::Vector3d& c) {
  const double nc = c.squaredNorm();
  if (nc == 0.0 || out.norm() < 1e-12) return 1.0;  // not a nonzero multiple
  const double alpha = out.dot(c) / nc;
  return (out - alpha * c).norm() / out.norm();
}

std::vector<CheckResult> suite_selection_rules(int L, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);

  // Parity: every odd-degree-sum output block of the Gaunt product must
  // vanish, over an exhaustive basis probe of the inputs.
  double odd_parity = 0.0;
  for (int l1 = 0; l1 <= L; ++l1)
    for (int l2 = 0; l2 <= L; ++l2) {
      const Irreps in1 = Irreps::single_copies(l1), in2 = Irreps::single_copies(l2);
      for (int m1 = 0; m1 < 2 * l1 + 1; ++m1)
        for (int m2 = 0; m2 < 2 * l2 + 1; ++m2) {
          IrrepVector x = IrrepVector::zeros(in1);
          x.data[in1.offset(l1) + m1] = 1.0;
          IrrepVector y = IrrepVector::zeros(in2);
          y.data[in2.offset(l2) + m2] = 1.0;
          const IrrepVector z = gtp_grid(x, y, l1 + l2);
          for (int l3 = (l1 + l2) % 2 == 0 ? 1 : 0; l3 <= l1 + l2; l3 += 2)
            odd_parity = std::max(odd_parity, z.slice(l3).cwiseAbs().maxCoeff());
        }
    }
  out.push_back({"selection-rules", "gtp-odd-parity", L, odd_parity, kOddParityTol,
                 odd_parity <= kOddParityTol});

  // [1,1,1] is the cross product (up to scale) for the products that keep
  // it, and identically zero for the symmetric Gaunt product.
  const Irreps vec({{1, 1}});
  double cgtp_cross = 0.0, mtp_cross = 0.0, gtp_111 = 0.0;
  for (int t = 0; t < 20; ++t) {
    const IrrepVector x = IrrepVector::random(vec, rng);
    const IrrepVector y = IrrepVector::random(vec, rng);
    Eigen::VectorXd seg(3);
    cgtp_path_naive({1, 1, 1}, x.data, y.data, seg);
    const Eigen::Vector3d c = cross_yzx(x.data, y.data);
    cgtp_cross = std::max(cgtp_cross, cross_rel_err(seg, c));
    const IrrepVector m = mtp(x, y, 1);
    mtp_cross = std::max(mtp_cross, cross_rel_err(m.slice(1), c));
    gtp_111 = std::max(gtp_111, gtp_grid(x, y, 2).slice(1).cwiseAbs().maxCoeff());
  }
  out.push_back({"selection-rules", "gtp-111-zero", L, gtp_111, kOddParityTol,
                 gtp_111 <= kOddParityTol});
  out.push_back({"selection-rules", "cgtp-111-cross", L, cgtp_cross, kCrossRelTol,
                 cgtp_cross <= kCrossRelTol});
  out.push_back({"selection-rules", "mtp-111-cross", L, mtp_cross, kCrossRelTol,
                 mtp_cross <= kCrossRelTol});

  // The mixed Gaunt couplings behind the weighted-GTP inexpressibility
  // argument: both must be genuinely nonzero.
  for (const auto& [l1, l2, l3, name] :
       {std::tuple{2, 4, 2, "gaunt-242-nonzero"}, std::tuple{4, 2, 2, "gaunt-422-nonzero"}}) {
    double mx = 0.0;
    for (const CGEntry& e : gaunt_real(l1, l2, l3).entries) mx = std::max(mx, std::abs(e.value));
    out.push_back({"selection-rules", name, L, mx, kGauntNonzeroTol, mx > kGauntNonzeroTol});
  }
  return out;
}

std::vector<CheckResult> suite_roundtrip(int L, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);

  double roundtrip = 0.0;
  for (int band = 0; band <= L; ++band) {
    const GridPtr grid = make_grid(band);
    const Irreps in = Irreps::single_copies(band);
    for (int t = 0; t < 10; ++t) {
      const IrrepVector x = IrrepVector::random(in, rng);
      const IrrepVector back = from_sphere(to_sphere(x, grid), band);
      roundtrip = std::max(roundtrip, max_diff(x, back));
    }
  }
  out.push_back({"roundtrip", "sphere-roundtrip", L, roundtrip, kRoundtripTol,
                 roundtrip <= kRoundtripTol});

  // Quadrature Gram matrix of all harmonics up to L: must be the identity.
  const GridPtr grid = make_grid(L);
  const Irreps in = Irreps::single_copies(L);
  double ortho = 0.0;
  for (int i = 0; i < in.dim(); ++i) {
    IrrepVector e = IrrepVector::zeros(in);
    e.data[i] = 1.0;
    const IrrepVector gram_col = from_sphere(to_sphere(e, grid), L);
    for (int j = 0; j < in.dim(); ++j)
      ortho = std::max(ortho, std::abs(gram_col.data[j] - (i == j ? 1.0 : 0.0)));
  }
  out.push_back({"roundtrip", "grid-orthonormality", L, ortho, kOrthonormalityTol,
                 ortho <= kOrthonormalityTol});

  // Torus tables: decode(encode(x)) over the public encode band.
  const FourierTables& tabs = fourier_tables(L);
  double fr = 0.0;
  for (int t = 0; t < 50; ++t) {
    const IrrepVector x = IrrepVector::random(in, rng);
    Fourier2DCoeffs spec;
    spec.band = 2 * L;
    spec.c = Eigen::MatrixXcd::Zero(4 * L + 1, 4 * L + 1);
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m)
        for (const FourierModeEntry& e : tabs.encode.at(l, m))
          spec.at(e.u, e.v) += x.data[in.offset(l) + m + l] * e.w;
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m) {
        std::complex<double> acc = 0.0;
        for (const FourierModeEntry& e : tabs.decode.at(l, m)) acc += e.w * spec.at(e.u, e.v);
        fr = std::max(fr, std::abs(acc - x.data[in.offset(l) + m + l]));
      }
  }
  out.push_back({"roundtrip", "fourier-roundtrip", L, fr, kFourierRoundtripTol,
                 fr <= kFourierRoundtripTol});
  return out;
}

std::vector<CheckResult> suite_expressivity(int L, std::uint64_t seed) {
  std::vector<CheckResult> out;

  const double c_cgtp_1 = std::abs(static_cast<double>(expressivity_count(Kind::cgtp, 1)) - 6);
  out.push_back({"expressivity", "count-cgtp-L1", 1, c_cgtp_1, 0.5, c_cgtp_1 < 0.5});
  const double c_gtp_1 = std::abs(static_cast<double>(expressivity_count(Kind::gtp, 1)) - 5);
  out.push_back({"expressivity", "count-gtp-L1", 1, c_gtp_1, 0.5, c_gtp_1 < 0.5});

  const struct {
    Kind kind;
    const char* name;
    double target;
  } slope_specs[] = {{Kind::cgtp, "count-slope-cgtp", 3.0},
                     {Kind::gtp, "count-slope-gtp", 1.0},
                     {Kind::mtp, "count-slope-mtp", 1.0}};
  for (const auto& s : slope_specs) {
    std::vector<double> counts;
    for (int l : kSlopeLs) counts.push_back(static_cast<double>(expressivity_count(s.kind, l)));
    const double err = std::abs(tail_slope(counts) - s.target);
    out.push_back({"expressivity", s.name, kSlopeLs.back(), err, kSlopeTol, err <= kSlopeTol});
  }

  // Rank: exact equality with the path count for CGTP, upper bound for the
  // single-copy products, scalar case pinned to 1.
  const int rank_L = std::min(L, 3);
  double rank_err = 0.0;
  bool stable = true;
  for (int l = 0; l <= rank_L; ++l) {
    const RankResult r = expressivity_rank(Kind::cgtp, l, 3, seed);
    stable = stable && r.stable;
    rank_err = std::max(rank_err,
                        std::abs(static_cast<double>(r.rank - expressivity_count(Kind::cgtp, l))));
  }
  out.push_back({"expressivity", "rank-cgtp-eq-count", rank_L, rank_err, 0.5, rank_err < 0.5});

  double bound_err = 0.0;
  for (int l = 0; l <= std::min(L, 2); ++l)
    for (Kind kind : {Kind::gtp, Kind::mtp}) {
      const RankResult r = expressivity_rank(kind, l, 3, seed);
      stable = stable && r.stable;
      if (l == 0) bound_err = std::max(bound_err, std::abs(r.rank - 1.0));
      const double excess = static_cast<double>(r.rank - expressivity_count(kind, l));
      bound_err = std::max(bound_err, std::max(0.0, excess));
    }
  out.push_back({"expressivity", "rank-upper-bound", std::min(L, 2), bound_err, 0.5,
                 bound_err < 0.5});
  out.push_back({"expressivity", "rank-stability", rank_L, stable ? 0.0 : 1.0, 0.5, stable});

  const bool i_cgtp = interactable(Kind::cgtp, 1, 1, 1);
  const bool i_gtp = interactable(Kind::gtp, 1, 1, 1);
  const bool i_mtp = interactable(Kind::mtp, 1, 1, 1);
  out.push_back({"expressivity", "interactable-cgtp-111", 1, i_cgtp ? 0.0 : 1.0, 0.5, i_cgtp});
  out.push_back({"expressivity", "interactable-gtp-111", 1, i_gtp ? 1.0 : 0.0, 0.5, !i_gtp});
  out.push_back({"expressivity", "interactable-mtp-111", 1, i_mtp ? 0.0 : 1.0, 0.5, i_mtp});
  return out;
}

std::vector<CheckResult> suite_scaling(int L, std::uint64_t seed) {
  (void)L;
  (void)seed;
  std::vector<CheckResult> out;

  const struct {
    Kind kind;
    BenchImpl impl;
    BenchMode mode;
    const char* name;
    double target;
  } specs[] = {
      {Kind::cgtp, BenchImpl::naive, BenchMode::mimo, "mimo-cgtp-naive", 6.0},
      {Kind::cgtp, BenchImpl::sparse, BenchMode::mimo, "mimo-cgtp-sparse", 5.0},
      {Kind::gtp, BenchImpl::grid, BenchMode::mimo, "mimo-gtp-grid", 3.0},
      {Kind::mtp, BenchImpl::naive, BenchMode::mimo, "mimo-mtp-naive", 4.0},
      {Kind::mtp, BenchImpl::sparse, BenchMode::mimo, "mimo-mtp-sparse", 3.0},
      {Kind::cgtp, BenchImpl::naive, BenchMode::siso, "siso-cgtp-naive", 3.0},
      {Kind::cgtp, BenchImpl::sparse, BenchMode::siso, "siso-cgtp-sparse", 2.0},
  };

  std::vector<double> siso_naive, siso_sparse, mimo_sparse;
  for (const auto& s : specs) {
    std::vector<double> counts;
    for (int l : kSlopeLs)
      counts.push_back(static_cast<double>(count_ops(s.kind, s.impl, {s.mode, l, 1})));
    const double slope = tail_slope(counts);
    const double err = std::abs(slope - s.target);
    out.push_back({"scaling", s.name, kSlopeLs.back(), err, kSlopeTol, err <= kSlopeTol});
    if (std::string(s.name) == "siso-cgtp-naive") siso_naive = counts;
    if (std::string(s.name) == "siso-cgtp-sparse") siso_sparse = counts;
    if (std::string(s.name) == "mimo-cgtp-sparse") mimo_sparse = counts;
  }

  // The sparse win in SISO: one full power of L between the slopes.
  const double gap = tail_slope(siso_naive) - tail_slope(siso_sparse);
  const double gap_err = std::abs(gap - 1.0);
  out.push_back({"scaling", "siso-cgtp-slope-gap", kSlopeLs.back(), gap_err, kSlopeTol,
                 gap_err <= kSlopeTol});

  // Per-expressivity normalization of the sparse CG product.
  std::vector<double> normalized;
  for (size_t i = 0; i < kSlopeLs.size(); ++i)
    normalized.push_back(mimo_sparse[i] /
                         static_cast<double>(expressivity_count(Kind::cgtp, kSlopeLs[i])));
  const double norm_err = std::abs(tail_slope(normalized) - 2.0);
  out.push_back({"scaling", "normalized-cgtp-sparse", kSlopeLs.back(), norm_err, kSlopeTol,
                 norm_err <= kSlopeTol});

  // Structural ordering of the benchmark settings.
  double order_viol = 0.0;
  for (const TpoCombo& combo : kCombos) {
    const std::uint64_t siso = count_ops(combo.kind, combo.impl, {BenchMode::siso, 4, 1});
    const std::uint64_t simo = count_ops(combo.kind, combo.impl, {BenchMode::simo, 4, 1});
    const std::uint64_t mimo = count_ops(combo.kind, combo.impl, {BenchMode::mimo, 4, 1});
    if (simo < siso) order_viol = std::max(order_viol, static_cast<double>(siso - simo));
    if (mimo < simo) order_viol = std::max(order_viol, static_cast<double>(simo - mimo));
  }
  out.push_back({"scaling", "mode-ordering", 4, order_viol, 0.5, order_viol < 0.5});
  return out;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites = {"equivariance", "oracle-equality",
                                                  "selection-rules", "roundtrip",
                                                  "expressivity", "scaling"};
  return suites;
}

std::vector<CheckResult> run_verify(const std::string& suite, int L, std::uint64_t seed) {
  if (L < 0) throw std::invalid_argument("verify: L must be >= 0");
  if (suite == "equivariance") return suite_equivariance(L, seed);
  if (suite == "oracle-equality") return suite_oracle_equality(L, seed);
  if (suite == "selection-rules") return suite_selection_rules(L, seed);
  if (suite == "roundtrip") return suite_roundtrip(L, seed);
  if (suite == "expressivity") return suite_expressivity(L, seed);
  if (suite == "scaling") return suite_scaling(L, seed);
  throw std::invalid_argument("verify: unknown suite '" + suite + "'");
}

}  // namespace tpo
