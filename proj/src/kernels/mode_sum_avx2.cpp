// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA variant of the mode sum.  Only this file is compiled with -mavx2
// -mfma; callers go through the dispatcher.
#include <immintrin.h>

#include <cmath>

#include "tubelab/mode_sum.hpp"

namespace tubelab {

namespace {

// exp(x) by reduction x = n ln2 + r, |r| <= ln2/2, and a rational
// approximation of e^r (Cephes coefficients).
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.78);
  const __m256d lo = _mm256_set1_pd(-745.13);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  __m256d fx = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5)));
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(1.42860682030941723212E-6), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_set1_pd(1.26177193074810590878E-4);
  px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(3.02994407707441961300E-2));
  px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_set1_pd(3.00198505138664455042E-6);
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.52448340349684104192E-3));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // 2^n split into two factors so that subnormal results stay exact.
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
  __m256i n = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(fx, magic)), _mm256_castpd_si256(magic));
  // |n| < 2^11: the high word of each lane is pure sign extension, so a 32-bit
  // arithmetic shift halves the 64-bit value.
  __m256i n1 = _mm256_srai_epi32(n, 1);
  __m256i n2 = _mm256_sub_epi64(n, n1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  __m256d s1 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(n1, bias), 52));
  __m256d s2 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(n2, bias), 52));
  e = _mm256_mul_pd(_mm256_mul_pd(e, s1), s2);
  return _mm256_blendv_pd(e, _mm256_setzero_pd(), underflow);
}

// sin and cos by octant reduction with a three-part pi/4 and minimax
// polynomials on [-pi/4, pi/4] (Cephes coefficients).
inline void sincos_pd(__m256d x, __m256d& s, __m256d& c) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d sign_x = _mm256_and_pd(x, sign_mask);
  __m256d ax = _mm256_andnot_pd(sign_mask, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(1.27323954473516268615)));
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);
  __m256i j = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(y, magic)), _mm256_castpd_si256(magic));
  // Round odd octants up.
  j = _mm256_and_si256(_mm256_add_epi64(j, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(~1LL));
  y = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(j, _mm256_castpd_si256(magic))), magic);
  j = _mm256_and_si256(j, _mm256_set1_epi64x(7));

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(7.85398125648498535156E-1), ax);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(3.77489470793079817668E-8), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(2.69515142907905952645E-15), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  __m256d ps = _mm256_set1_pd(1.58962301576546568060E-10);
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-2.50507477628578072866E-8));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(2.75573136213857245213E-6));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.98412698295895385996E-4));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(8.33333333332211858878E-3));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.66666666666666307295E-1));
  ps = _mm256_fmadd_pd(_mm256_mul_pd(ps, zz), z, z);

  __m256d pc = _mm256_set1_pd(-1.13585365213876817300E-11);
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.08757008419747316778E-9));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-2.75573141792967388112E-7));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.48015872888517045348E-5));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-1.38888888888730564116E-3));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(4.16666666666665929218E-2));
  pc = _mm256_fmadd_pd(_mm256_mul_pd(pc, zz), zz, _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

  const __m256i two = _mm256_set1_epi64x(2), four = _mm256_set1_epi64x(4);
  __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(j, two), two));
  __m256d sin_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(j, four), four));
  __m256i jp2 = _mm256_add_epi64(j, two);
  __m256d cos_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(jp2, four), four));

  s = _mm256_blendv_pd(ps, pc, swap);
  c = _mm256_blendv_pd(pc, ps, swap);
  s = _mm256_xor_pd(s, _mm256_xor_pd(_mm256_and_pd(sin_neg, sign_mask), sign_x));
  c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign_mask));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

PartialSum mode_sum_avx2(const ModeTable& t, const ModeSumParams& p, std::size_t begin, std::size_t end) {
  __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd(), acc_abs = _mm256_setzero_pd();
  const __m256d two_tau = _mm256_set1_pd(p.two_tau);
  const __m256d t0 = _mm256_set1_pd(p.t0);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  __m256d s[kMaxLatticeDim], dx[kMaxLatticeDim];
  for (int j = 0; j < t.d; ++j) {
    s[j] = _mm256_set1_pd(p.s[j]);
    dx[j] = _mm256_set1_pd(p.dx[j]);
  }
  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    __m256d mu = _mm256_loadu_pd(&t.mu[i]);
    __m256d a = _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), two_tau), mu);
    __m256d ph = _mm256_mul_pd(t0, mu);
    for (int j = 0; j < t.d; ++j) {
      __m256d k = _mm256_loadu_pd(&t.k[j][i]);
      a = _mm256_fnmadd_pd(k, s[j], a);
      ph = _mm256_fmadd_pd(k, dx[j], ph);
    }
    __m256d m = _mm256_mul_pd(_mm256_loadu_pd(&t.weight[i]), exp_pd(a));
    __m256d sn, cs;
    sincos_pd(ph, sn, cs);
    acc_re = _mm256_fmadd_pd(m, cs, acc_re);
    acc_im = _mm256_fmadd_pd(m, sn, acc_im);
    acc_abs = _mm256_add_pd(acc_abs, _mm256_and_pd(m, abs_mask));
  }
  PartialSum out{hsum(acc_re), hsum(acc_im), hsum(acc_abs)};
  if (i < end) {
    PartialSum tail = mode_sum_scalar(t, p, i, end);
    out.re += tail.re;
    out.im += tail.im;
    out.abs += tail.abs;
  }
  return out;
}

}  // namespace tubelab
