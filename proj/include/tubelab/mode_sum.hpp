// SPDX-License-Identifier: Apache-2.0
//
// Inner loop of the lattice kernel sums:
//   sum_i w_i exp(-two_tau mu_i - k_i.s) exp(i (k_i.dx + t0 mu_i))
// over a structure-of-arrays mode table.
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tubelab/lattice.hpp"

namespace tubelab {

struct ModeTable {
  int d = 0;
  std::array<std::vector<double>, kMaxLatticeDim> k;
  std::vector<double> mu;
  std::vector<double> weight;

  std::size_t size() const { return mu.size(); }
  void reserve(std::size_t n);
  void push(const Mode& m, double w);
};

struct ModeSumParams {
  double two_tau = 0.0;
  double t0 = 0.0;
  std::array<double, kMaxLatticeDim> s{};   // p1 + p2
  std::array<double, kMaxLatticeDim> dx{};  // x1 - x2, wrapped
};

struct PartialSum {
  double re = 0.0;
  double im = 0.0;
  double abs = 0.0;  // sum of |terms|, for error estimates
};

using ModeSumFn = PartialSum (*)(const ModeTable&, const ModeSumParams&, std::size_t, std::size_t);

PartialSum mode_sum_scalar(const ModeTable& t, const ModeSumParams& p, std::size_t begin, std::size_t end);
PartialSum mode_sum_avx2(const ModeTable& t, const ModeSumParams& p, std::size_t begin, std::size_t end);

enum class KernelIsa { scalar, avx2 };

bool cpu_has_avx2();
// The best variant supported by the running CPU, unless TUBELAB_FORCE_SCALAR
// is set in the environment.
KernelIsa default_isa();
ModeSumFn mode_sum_for(KernelIsa isa);
std::string to_string(KernelIsa isa);

// Fixed-size blocks summed by the kernel and combined in order with
// compensated addition, so the result does not depend on how blocks are
// distributed over workers.
inline constexpr std::size_t kModeBlock = 1024;

PartialSum blocked_mode_sum(const ModeTable& t, const ModeSumParams& p, KernelIsa isa, int workers = 1);

}  // namespace tubelab
