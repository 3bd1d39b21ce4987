#include "tpo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tpo/cgtp.hpp"
#include "tpo/gtp.hpp"
#include "tpo/mtp.hpp"
#include "tpo/sphere.hpp"

namespace tpo {

namespace {

Irreps input_irreps(BenchMode mode, int L) {
  if (mode == BenchMode::mimo) return Irreps::single_copies(L);
  return Irreps({{1, L}});  // a single degree-L copy
}

// One application of the configured product.  All caches (coefficient
// tables, grids, Fourier tables) are warm after the first call, so timed
// runs measure the kernels themselves.
void run_once(Kind kind, BenchImpl impl, BenchMode mode, int L, const IrrepVector& x,
              const IrrepVector& y, OpCounter* ops) {
  switch (kind) {
    case Kind::cgtp: {
      const CgtpImpl ci = impl == BenchImpl::naive ? CgtpImpl::naive : CgtpImpl::sparse;
      if (mode == BenchMode::mimo) {
        cgtp_mimo(x, y, ci, ops);
        return;
      }
      const int l3_hi = mode == BenchMode::simo ? 2 * L : L;
      Eigen::VectorXd out(2 * l3_hi + 1);
      for (int l3 = (mode == BenchMode::simo ? 0 : L); l3 <= l3_hi; ++l3) {
        auto seg = out.head(2 * l3 + 1);
        if (ci == CgtpImpl::naive)
          cgtp_path_naive({L, L, l3}, x.data, y.data, seg, ops);
        else
          cgtp_path_sparse({L, L, l3}, x.data, y.data, seg, ops);
      }
      return;
    }
    case Kind::gtp: {
      std::vector<int> degrees;
      if (mode == BenchMode::siso)
        degrees = {L};
      else
        for (int l = 0; l <= 2 * L; ++l) degrees.push_back(l);
      if (impl == BenchImpl::grid)
        detail::gtp_grid_select(x, y, degrees, ops);
      else
        detail::gtp_fourier_select(x, y, degrees, ops);
      return;
    }
    case Kind::mtp: {
      const MtpImpl mi = impl == BenchImpl::naive ? MtpImpl::naive : MtpImpl::sparse;
      // MIMO/SIMO produce the full band with the carrier for 2L; SISO is
      // the single path [L,L,L] on the smallest carrier that spans it.
      const int lt = mode == BenchMode::siso ? mtp_l_tilde(L, L, L) : mtp_l_tilde(L, L, 2 * L);
      const Eigen::MatrixXd X = mtp_embed(x, lt, mi, ops);
      const Eigen::MatrixXd Y = mtp_embed(y, lt, mi, ops);
      const Eigen::MatrixXd Z = mtp_matmul(X, Y, ops);
      std::vector<int> degrees;
      if (mode == BenchMode::siso)
        degrees = {L};
      else
        for (int l = 0; l <= 2 * L; ++l) degrees.push_back(l);
      mtp_extract_select(Z, degrees, lt, mi, ops);
      return;
    }
  }
}

}  // namespace

const char* impl_name(BenchImpl i) {
  switch (i) {
    case BenchImpl::naive: return "naive";
    case BenchImpl::sparse: return "sparse";
    case BenchImpl::grid: return "grid";
    default: return "fourier";
  }
}

const char* mode_name(BenchMode m) {
  switch (m) {
    case BenchMode::siso: return "siso";
    case BenchMode::simo: return "simo";
    default: return "mimo";
  }
}

bool impl_applies(Kind kind, BenchImpl impl) {
  if (kind == Kind::gtp) return impl == BenchImpl::grid || impl == BenchImpl::fourier;
  return impl == BenchImpl::naive || impl == BenchImpl::sparse;
}

std::uint64_t count_ops(Kind kind, BenchImpl impl, const BenchSetting& s) {
  if (!impl_applies(kind, impl))
    throw std::invalid_argument("count_ops: implementation does not apply to this kind");
  if (s.L < 0) throw std::invalid_argument("count_ops: L must be >= 0");
  // The count is structural: input values never enter it, so any inputs do.
  std::mt19937_64 rng(1);
  const IrrepVector x = IrrepVector::random(input_irreps(s.mode, s.L), rng);
  const IrrepVector y = IrrepVector::random(input_irreps(s.mode, s.L), rng);
  OpCounter counter;
  run_once(kind, impl, s.mode, s.L, x, y, &counter);
  return counter.muls;
}

BenchRecord time_tpo(Kind kind, BenchImpl impl, const BenchSetting& s, int warmup,
                     int repeats, std::uint64_t seed) {
  if (warmup < 1) throw std::invalid_argument("time_tpo: warmup must be >= 1");
  if (repeats < 5) throw std::invalid_argument("time_tpo: repeats must be >= 5");
  if (s.batch < 1) throw std::invalid_argument("time_tpo: batch must be >= 1");

  std::mt19937_64 rng(seed);
  std::vector<std::pair<IrrepVector, IrrepVector>> inputs;
  inputs.reserve(s.batch);
  const Irreps in = input_irreps(s.mode, s.L);
  for (int b = 0; b < s.batch; ++b)
    inputs.emplace_back(IrrepVector::random(in, rng), IrrepVector::random(in, rng));

  for (int w = 0; w < warmup; ++w)
    for (const auto& [x, y] : inputs) run_once(kind, impl, s.mode, s.L, x, y, nullptr);

  std::vector<std::uint64_t> ns(repeats);
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& [x, y] : inputs) run_once(kind, impl, s.mode, s.L, x, y, nullptr);
    const auto t1 = std::chrono::steady_clock::now();
    ns[r] = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
  }
  std::sort(ns.begin(), ns.end());

  BenchRecord rec;
  rec.kind = kind;
  rec.impl = impl;
  rec.setting = s;
  rec.ops = count_ops(kind, impl, s);
  rec.time_med_ns = ns[repeats / 2];
  rec.time_min_ns = ns.front();
  rec.time_max_ns = ns.back();
  rec.expressivity = expressivity_count(kind, s.L);
  rec.ops_per_expr = static_cast<double>(rec.ops) / static_cast<double>(rec.expressivity);
  rec.time_per_expr_ns =
      static_cast<double>(rec.time_med_ns) / static_cast<double>(rec.expressivity);
  return rec;
}

std::vector<BenchRecord> sweep(const SweepConfig& cfg) {
  std::vector<BenchRecord> records;
  for (Kind kind : cfg.kinds)
    for (BenchImpl impl : cfg.impls) {
      if (!impl_applies(kind, impl)) continue;
      for (int L : cfg.Ls)
        records.push_back(time_tpo(kind, impl, {cfg.mode, L, cfg.batch}, cfg.warmup,
                                   cfg.repeats, cfg.seed));
    }
  return records;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "kind,impl,mode,L,batch,ops,time_med_ns,time_min_ns,time_max_ns,"
        "expressivity,ops_per_expr,time_per_expr_ns\n";
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const BenchRecord& r : records) {
    os << kind_name(r.kind) << ',' << impl_name(r.impl) << ',' << mode_name(r.setting.mode)
       << ',' << r.setting.L << ',' << r.setting.batch << ',' << r.ops << ','
       << r.time_med_ns << ',' << r.time_min_ns << ',' << r.time_max_ns << ','
       << r.expressivity << ',' << fmt(r.ops_per_expr) << ',' << fmt(r.time_per_expr_ns)
       << '\n';
  }
}

double fit_loglog_slope(const std::vector<int>& Ls, const std::vector<double>& ys) {
  if (Ls.size() != ys.size() || Ls.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need matching lists of >= 2 points");
  // Abscissa is the irrep dimension scale 2L+1 rather than L itself: the
  // counts are polynomials in 2L+1, so the fitted exponents settle at small
  // L instead of creeping up with the O(1/L) correction log-L fits carry.
  const size_t n = Ls.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    if (ys[i] <= 0.0) throw std::invalid_argument("fit_loglog_slope: values must be positive");
    const double lx = std::log(2.0 * Ls[i] + 1.0);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace tpo
