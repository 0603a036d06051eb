// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tubelab/lattice.hpp"
#include "tubelab/mode_sum.hpp"
#include "tubelab/spectra.hpp"

using namespace tubelab;

namespace {

ModeTable random_table(int d, double lambda, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(-1.0, 1.0);
  ModeTable t;
  t.d = d;
  for (const Mode& m : enumerate_shell(d, lambda - 6.0, lambda + 6.0, Isotype::all())) t.push(m, w(rng));
  return t;
}

ModeSumParams random_params(int d, double tau, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ModeSumParams p;
  p.two_tau = 2 * tau;
  p.t0 = 0.05;
  Vec dir(d);
  for (int i = 0; i < d; ++i) dir(i) = g(rng);
  dir *= tau / dir.norm();
  for (int i = 0; i < d; ++i) {
    p.s[i] = 2 * dir(i) + 1e-3 * g(rng);
    p.dx[i] = 0.4 * g(rng);
  }
  return p;
}

}  // namespace

TEST(Simd, Avx2MatchesScalar) {
  if (!cpu_has_avx2()) GTEST_SKIP() << "CPU without AVX2";
  std::mt19937_64 rng(31);
  for (int d = 2; d <= 4; ++d) {
    ModeTable t = random_table(d, d == 4 ? 15.0 : 40.0, rng);
    for (int k = 0; k < 5; ++k) {
      ModeSumParams p = random_params(d, 0.5, rng);
      PartialSum a = mode_sum_scalar(t, p, 0, t.size());
      PartialSum b = mode_sum_avx2(t, p, 0, t.size());
      // Terms agree to a few ulps; the two summation orders differ by at most
      // N u times the sum of moduli.
      const double tol = 2.0 * static_cast<double>(t.size()) * 1.1e-16 * a.abs;
      EXPECT_NEAR(a.re, b.re, tol);
      EXPECT_NEAR(a.im, b.im, tol);
      EXPECT_NEAR(a.abs, b.abs, tol);
      // Ragged ranges exercise the scalar tail of the vector kernel.
      PartialSum c = mode_sum_scalar(t, p, 3, t.size() - 2), e = mode_sum_avx2(t, p, 3, t.size() - 2);
      EXPECT_NEAR(c.re, e.re, tol);
      EXPECT_NEAR(c.im, e.im, tol);
    }
  }
}

TEST(Simd, BlockedSumIndependentOfWorkers) {
  std::mt19937_64 rng(37);
  ModeTable t = random_table(2, 300.0, rng);
  ModeSumParams p = random_params(2, 0.5, rng);
  for (KernelIsa isa : {KernelIsa::scalar, default_isa()}) {
    PartialSum one = blocked_mode_sum(t, p, isa, 1);
    for (int w : {2, 3, 8}) {
      PartialSum many = blocked_mode_sum(t, p, isa, w);
      EXPECT_EQ(one.re, many.re);
      EXPECT_EQ(one.im, many.im);
    }
  }
}

TEST(Simd, KernelEvaluatorIsaEquivalence) {
  if (!cpu_has_avx2()) GTEST_SKIP() << "CPU without AVX2";
  TorusModel m(2, 0.5, GroupAction::cyclic(2, {1, 0}, 3));
  Cutoff c(CutoffSpec{});
  Isotype iso = Isotype::of(m.action(), {1});
  Vec x(2), p(2);
  x << 0.2, -0.3;
  p << 0.1, 1.0;
  TubePoint a = m.point_along(x, p);
  x << 0.25, -0.31;
  TubePoint b = m.point_along(x, p);
  KernelEvaluator s(m, c, iso, 200.0, {}, KernelIsa::scalar);
  KernelEvaluator v(m, c, iso, 200.0, {}, KernelIsa::avx2, 4);
  KernelValue ks = s(a, b), kv = v(a, b);
  EXPECT_LT(std::abs(ks.value - kv.value), 1e-12 * ks.abs_sum);
  EXPECT_EQ(ks.n_modes, kv.n_modes);
}
