#pragma once

#include <cstdint>

namespace tpo {

// Multiply counter threaded through every kernel as an optional pointer;
// counting is off (and costs nothing) when the pointer is null.
//
// Convention: one unit per executed scalar multiply.  A fused a += b*c
// contributes 1, a += c*x*y contributes 2.  Additions are free, as is any
// table construction done once and cached.
struct OpCounter {
  std::uint64_t muls = 0;

  void reset() { muls = 0; }
};

inline void count_muls(OpCounter* c, std::uint64_t n) {
  if (c) c->muls += n;
}

}  // namespace tpo
