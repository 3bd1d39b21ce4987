#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tpo/expressivity.hpp"

namespace tpo {

enum class BenchImpl { naive, sparse, grid, fourier };

const char* impl_name(BenchImpl i);
bool impl_applies(Kind kind, BenchImpl impl);

enum class BenchMode { siso, simo, mimo };

const char* mode_name(BenchMode m);

struct BenchSetting {
  BenchMode mode = BenchMode::mimo;
  int L = 1;
  int batch = 1;
};

struct BenchRecord {
  Kind kind;
  BenchImpl impl;
  BenchSetting setting;
  std::uint64_t ops = 0;           // per single application (batch-invariant)
  std::uint64_t time_med_ns = 0;   // whole-batch wall clock
  std::uint64_t time_min_ns = 0;
  std::uint64_t time_max_ns = 0;
  long expressivity = 0;
  double ops_per_expr = 0.0;
  double time_per_expr_ns = 0.0;
};

// Instrumented multiply count for one application of the configured product.
// Pure: same setting, same count; the batch field does not enter.
//   siso: the single path [L, L, L] (mtp uses its minimal carrier)
//   simo: degree-L inputs, all outputs l3 <= 2L
//   mimo: single_copies(L) inputs, full output band
std::uint64_t count_ops(Kind kind, BenchImpl impl, const BenchSetting& s);

// Wall-clock timing of `batch` applications, single-threaded: `warmup`
// untimed runs (>= 1, populates caches), then `repeats` timed runs (>= 5);
// med/min/max in nanoseconds.  Also fills ops and the expressivity-
// normalized columns.
BenchRecord time_tpo(Kind kind, BenchImpl impl, const BenchSetting& s,
                     int warmup = 2, int repeats = 7,
                     std::uint64_t seed = 20240901);

struct SweepConfig {
  std::vector<Kind> kinds;
  std::vector<BenchImpl> impls;  // filtered per kind by impl_applies
  BenchMode mode = BenchMode::mimo;
  std::vector<int> Ls;
  int batch = 1;
  int warmup = 2;
  int repeats = 7;
  std::uint64_t seed = 20240901;
};

std::vector<BenchRecord> sweep(const SweepConfig& cfg);

// CSV with the fixed header
// kind,impl,mode,L,batch,ops,time_med_ns,time_min_ns,time_max_ns,
// expressivity,ops_per_expr,time_per_expr_ns
void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);

// OLS slope of log(y) against log(2L+1).  The scaling checks fit the
// largest three L values of a sweep, where the asymptotic regime holds.
double fit_loglog_slope(const std::vector<int>& Ls,
                        const std::vector<double>& ys);

}  // namespace tpo
