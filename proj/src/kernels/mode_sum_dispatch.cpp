// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <vector>

#include "tubelab/mode_sum.hpp"
#include "tubelab/parallel.hpp"

namespace tubelab {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

KernelIsa default_isa() {
  if (std::getenv("TUBELAB_FORCE_SCALAR") != nullptr) return KernelIsa::scalar;
  return cpu_has_avx2() ? KernelIsa::avx2 : KernelIsa::scalar;
}

ModeSumFn mode_sum_for(KernelIsa isa) {
  if (isa == KernelIsa::avx2 && cpu_has_avx2()) return &mode_sum_avx2;
  return &mode_sum_scalar;
}

std::string to_string(KernelIsa isa) { return isa == KernelIsa::avx2 ? "avx2" : "scalar"; }

PartialSum blocked_mode_sum(const ModeTable& t, const ModeSumParams& p, KernelIsa isa, int workers) {
  const std::size_t n = t.size();
  const std::size_t blocks = (n + kModeBlock - 1) / kModeBlock;
  ModeSumFn fn = mode_sum_for(isa);
  std::vector<PartialSum> parts(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::size_t lo = b * kModeBlock;
    std::size_t hi = std::min(n, lo + kModeBlock);
    parts[b] = fn(t, p, lo, hi);
  });
  CompensatedSum re, im, ab;
  for (const auto& s : parts) {
    re.add(s.re);
    im.add(s.im);
    ab.add(s.abs);
  }
  return PartialSum{re.value(), im.value(), ab.value()};
}

}  // namespace tubelab
