// Acceptance battery: one line per criterion, exit 1 if any fails.  Each
// criterion re-runs the relevant verify suite at its pinned configuration,
// so this binary alone certifies the build.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "tpo/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string label;
  bool pass = true;
  double seconds = 0.0;
};

bool subset_passes(const std::vector<tpo::CheckResult>& results,
                   const std::vector<std::string>& names) {
  bool all = true;
  for (const std::string& name : names) {
    bool found = false;
    for (const tpo::CheckResult& r : results)
      if (r.check == name) {
        found = true;
        all = all && r.pass;
      }
    all = all && found;  // a missing check is a failure, not a skip
  }
  return all;
}

}  // namespace

int main() {
  constexpr std::uint64_t kSeed = 20240901;
  std::vector<Criterion> criteria;

  // Criteria 1 and 8 share the equivariance suite at L=4 (20 rotations x
  // 10 pairs per kernel; Wigner checks over l <= 4).
  const auto t0 = Clock::now();
  const std::vector<tpo::CheckResult> equi = tpo::run_verify("equivariance", 4, kSeed);
  const double equi_s = std::chrono::duration<double>(Clock::now() - t0).count();

  Criterion c1{1, "equivariance of all six kernels at L=4 (<= 1e-9, <= 60 s)"};
  c1.pass = subset_passes(equi, {"cgtp-naive", "cgtp-sparse", "gtp-grid", "gtp-fourier",
                                 "mtp-naive", "mtp-sparse"}) &&
            equi_s <= 60.0;
  c1.seconds = equi_s;
  criteria.push_back(c1);

  Criterion c2{2, "oracle equalities at L <= 4 (sparse/naive, fourier/grid, "
                  "gaunt contraction, CG-path sum)"};
  {
    const auto t = Clock::now();
    for (int L = 0; L <= 4 && c2.pass; ++L)
      c2.pass = subset_passes(tpo::run_verify("oracle-equality", L, kSeed),
                              {"cgtp-sparse-vs-naive", "gtp-fourier-vs-grid",
                               "gtp-grid-vs-gaunt", "mtp-vs-cg-paths"});
    c2.seconds = std::chrono::duration<double>(Clock::now() - t).count();
  }
  criteria.push_back(c2);

  const auto t_sel = Clock::now();
  const std::vector<tpo::CheckResult> sel = tpo::run_verify("selection-rules", 4, kSeed);
  const double sel_s = std::chrono::duration<double>(Clock::now() - t_sel).count();

  Criterion c3{3, "GTP parity zeros (<= 1e-12); CGTP/MTP [1,1,1] proportional "
                  "to the cross product (rel <= 1e-10)"};
  c3.pass = subset_passes(sel, {"gtp-odd-parity", "gtp-111-zero", "cgtp-111-cross",
                                "mtp-111-cross"});
  c3.seconds = sel_s;
  criteria.push_back(c3);

  Criterion c4{4, "sphere round trip L <= 8 (<= 1e-11) and grid orthonormality "
                  "(<= 1e-12)"};
  {
    const auto t = Clock::now();
    c4.pass = subset_passes(tpo::run_verify("roundtrip", 8, kSeed),
                            {"sphere-roundtrip", "grid-orthonormality"});
    c4.seconds = std::chrono::duration<double>(Clock::now() - t).count();
  }
  criteria.push_back(c4);

  const auto t_sc = Clock::now();
  const std::vector<tpo::CheckResult> scaling = tpo::run_verify("scaling", 4, kSeed);
  const double scaling_s = std::chrono::duration<double>(Clock::now() - t_sc).count();

  Criterion c5{5, "op-count slopes over L in {4,6,8,12,16}: MIMO 6/5/3/4/3, "
                  "SISO 3/2 (+-0.3, <= 5 min)"};
  c5.pass = subset_passes(scaling, {"mimo-cgtp-naive", "mimo-cgtp-sparse", "mimo-gtp-grid",
                                    "mimo-mtp-naive", "mimo-mtp-sparse", "siso-cgtp-naive",
                                    "siso-cgtp-sparse"}) &&
            scaling_s <= 300.0;
  c5.seconds = scaling_s;
  criteria.push_back(c5);

  Criterion c6{6, "expressivity: count slopes 3 (CGTP) and 1 (GTP/MTP), "
                  "rank = count for CGTP L <= 3, normalized sparse slope 2"};
  {
    const auto t = Clock::now();
    c6.pass = subset_passes(tpo::run_verify("expressivity", 3, kSeed),
                            {"count-slope-cgtp", "count-slope-gtp", "count-slope-mtp",
                             "rank-cgtp-eq-count"}) &&
              subset_passes(scaling, {"normalized-cgtp-sparse"});
    c6.seconds = std::chrono::duration<double>(Clock::now() - t).count();
  }
  criteria.push_back(c6);

  Criterion c7{7, "mixed Gaunt couplings (2,4,2) and (4,2,2) are nonzero "
                  "(|value| > 1e-6)"};
  c7.pass = subset_passes(sel, {"gaunt-242-nonzero", "gaunt-422-nonzero"});
  c7.seconds = sel_s;
  criteria.push_back(c7);

  Criterion c8{8, "Wigner-D group law l <= 4 (<= 1e-10) and orthogonality "
                  "(<= 1e-11)"};
  c8.pass = subset_passes(equi, {"wigner-group-law", "wigner-orthogonality"});
  c8.seconds = equi_s;
  criteria.push_back(c8);

  bool all = true;
  for (const Criterion& c : criteria) {
    std::printf("criterion %d: %s ... %s (%.2f s)\n", c.id, c.label.c_str(),
                c.pass ? "PASS" : "FAIL", c.seconds);
    all = all && c.pass;
  }
  std::printf("acceptance: %s\n", all ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return all ? 0 : 1;
}
