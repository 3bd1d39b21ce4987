#include "tpo/cgtp.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace tpo {

namespace {

// The real basis scatters each complex coefficient across m3 = ±m1 ± m2,
// so a path's table splits into four shifted diagonals:
//   pass A: m2 = m1 + m3     pass B: m2 = m1 - m3
//   pass C: m2 = -m1 + m3    pass D: m2 = -m1 - m3
// Each pass is a dense 2D loop over (m3, m1) with y read at a fixed offset.
// Entries already claimed by an earlier pass are zeroed so overlapping
// patterns (small |m|) are not double counted; together the passes cover
// every nonzero exactly once.
struct PassTables {
  std::array<Eigen::MatrixXd, 4> t;  // (2l3+1) x (2l1+1) each
};

int pass_m2(int pass, int m1, int m3) {
  switch (pass) {
    case 0: return m1 + m3;
    case 1: return m1 - m3;
    case 2: return -m1 + m3;
    default: return -m1 - m3;
  }
}

const PassTables& pass_tables(int l1, int l2, int l3) {
  using Key = std::array<int, 3>;
  static std::map<Key, std::unique_ptr<const PassTables>> cache;
  static std::mutex mu;
  const Key key{l1, l2, l3};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }

  const int d1 = 2 * l1 + 1, d2 = 2 * l2 + 1, d3 = 2 * l3 + 1;
  std::vector<double> dense = densify(cg_real(l1, l2, l3));
  auto at = [&](int m1, int m2, int m3) -> double& {
    return dense[((m1 + l1) * d2 + (m2 + l2)) * d3 + (m3 + l3)];
  };

  auto tables = std::make_unique<PassTables>();
  for (int p = 0; p < 4; ++p) {
    tables->t[p] = Eigen::MatrixXd::Zero(d3, d1);
    for (int m3 = -l3; m3 <= l3; ++m3)
      for (int m1 = -l1; m1 <= l1; ++m1) {
        const int m2 = pass_m2(p, m1, m3);
        if (std::abs(m2) > l2) continue;
        tables->t[p](m3 + l3, m1 + l1) = at(m1, m2, m3);
        at(m1, m2, m3) = 0.0;
      }
  }
  for (double v : dense)
    if (v != 0.0) throw std::logic_error("cgtp: sparse passes failed to cover the table");

  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] =
      cache.try_emplace(key, std::unique_ptr<const PassTables>(tables.release()));
  return *it->second;
}

void check_slices(const Path& p, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& y,
                  const Eigen::Ref<Eigen::VectorXd>& out) {
  if (x.size() != 2 * p.l1 + 1 || y.size() != 2 * p.l2 + 1 || out.size() != 2 * p.l3 + 1)
    throw std::invalid_argument("cgtp: slice sizes do not match the path degrees");
}

}  // namespace

bool Path::valid() const {
  return l1 >= 0 && l2 >= 0 && l3 >= std::abs(l1 - l2) && l3 <= l1 + l2;
}

Irreps PathTable::output_irreps() const {
  std::vector<Irreps::Entry> es;
  es.reserve(paths.size());
  for (const Path& p : paths) es.push_back({1, p.l3});
  return Irreps(std::move(es));
}

PathTable valid_paths(int L1, int L2, int L3) {
  PathTable table;
  for (int l1 = 0; l1 <= L1; ++l1)
    for (int l2 = 0; l2 <= L2; ++l2)
      for (int l3 = std::abs(l1 - l2); l3 <= std::min(L3, l1 + l2); ++l3)
        table.paths.push_back({l1, l2, l3});
  return table;
}

void cgtp_path_naive(const Path& p, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y,
                     Eigen::Ref<Eigen::VectorXd> out, OpCounter* ops) {
  check_slices(p, x, y, out);
  out.setZero();
  if (!p.valid()) return;

  const int d1 = 2 * p.l1 + 1, d2 = 2 * p.l2 + 1, d3 = 2 * p.l3 + 1;
  // Dense reference contraction against the full table, zeros included.
  static thread_local std::vector<double> scratch;
  densify_into(cg_real(p.l1, p.l2, p.l3), scratch);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2) {
      const double xy = x[i1] * y[i2];
      const double* row = scratch.data() + (static_cast<size_t>(i1) * d2 + i2) * d3;
      for (int i3 = 0; i3 < d3; ++i3) out[i3] += row[i3] * xy;
    }
  count_muls(ops, 2ull * d1 * d2 * d3);
}

void cgtp_path_sparse(const Path& p, const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      Eigen::Ref<Eigen::VectorXd> out, OpCounter* ops) {
  check_slices(p, x, y, out);
  out.setZero();
  if (!p.valid()) return;

  const PassTables& tabs = pass_tables(p.l1, p.l2, p.l3);
  std::uint64_t executed = 0;
  for (int pass = 0; pass < 4; ++pass) {
    const Eigen::MatrixXd& t = tabs.t[pass];
    for (int m3 = -p.l3; m3 <= p.l3; ++m3) {
      double acc = 0.0;
      for (int m1 = -p.l1; m1 <= p.l1; ++m1) {
        const int m2 = pass_m2(pass, m1, m3);
        if (std::abs(m2) > p.l2) continue;
        acc += t(m3 + p.l3, m1 + p.l1) * x[m1 + p.l1] * y[m2 + p.l2];
        executed += 2;
      }
      out[m3 + p.l3] += acc;
    }
  }
  count_muls(ops, executed);
}

IrrepVector cgtp_mimo(const IrrepVector& x, const IrrepVector& y, CgtpImpl impl,
                      OpCounter* ops) {
  for (const auto& e : x.irreps.entries())
    if (e.mul != 1) throw std::invalid_argument("cgtp_mimo: inputs must be single-copy towers");
  for (const auto& e : y.irreps.entries())
    if (e.mul != 1) throw std::invalid_argument("cgtp_mimo: inputs must be single-copy towers");

  // Enumerate paths in (input entry, input entry, l3) order; for
  // single_copies towers this is lexicographic in (l1, l2, l3).
  std::vector<Path> paths;
  std::vector<std::pair<int, int>> origin;  // (x entry, y entry)
  for (int i = 0; i < x.irreps.num_entries(); ++i)
    for (int j = 0; j < y.irreps.num_entries(); ++j) {
      const int l1 = x.irreps.l_of(i), l2 = y.irreps.l_of(j);
      for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3) {
        paths.push_back({l1, l2, l3});
        origin.emplace_back(i, j);
      }
    }

  PathTable table{paths};
  IrrepVector out = IrrepVector::zeros(table.output_irreps());
  for (size_t p = 0; p < paths.size(); ++p) {
    auto seg = out.slice(static_cast<int>(p));
    const auto xs = x.slice(origin[p].first);
    const auto ys = y.slice(origin[p].second);
    if (impl == CgtpImpl::naive)
      cgtp_path_naive(paths[p], xs, ys, seg, ops);
    else
      cgtp_path_sparse(paths[p], xs, ys, seg, ops);
  }
  return out;
}

}  // namespace tpo
