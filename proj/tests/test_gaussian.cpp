// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tubelab/errors.hpp"
#include "tubelab/gaussian.hpp"
#include "tubelab/quadrature.hpp"
#include "tubelab/symplectic.hpp"

using namespace tubelab;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

ComplexQuadratic random_quadratic(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = g(rng);
  Mat re = a * a.transpose() / m + 0.5 * Mat::Identity(m, m);
  Mat im(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) im(i, j) = im(j, i) = u(rng);
  ComplexQuadratic q;
  q.M = re.cast<cplx>() + cplx(0, 1) * im.cast<cplx>();
  q.b = CVec(m);
  for (int i = 0; i < m; ++i) q.b(i) = cplx(0.5 * g(rng), 0.5 * g(rng));
  q.c = cplx(0.1 * g(rng), g(rng));
  return q;
}

}  // namespace

TEST(Gaussian, StandardGaussian) {
  for (int m = 1; m <= 6; ++m) {
    ComplexQuadratic q{CMat::Identity(m, m), CVec::Zero(m), 0.0};
    EXPECT_LT(rel(gauss_integral(q), std::pow(2 * kPi, m / 2.0)), 1e-14);
  }
  ComplexQuadratic q{2.0 * CMat::Identity(1, 1), CVec::Zero(1), 0.0};
  EXPECT_LT(rel(gauss_integral(q), std::sqrt(kPi)), 1e-15);
}

TEST(Gaussian, RejectsIndefiniteRealPart) {
  CMat m = CMat::Identity(2, 2);
  m(1, 1) = cplx(-0.5, 1.0);
  EXPECT_THROW(gauss_integral(ComplexQuadratic{m, CVec::Zero(2), 0.0}), DomainError);
}

TEST(Gaussian, PurelyImaginaryDiagonalBranch) {
  // int e^{-(1 - i a) x^2 / 2} dx = sqrt(2 pi) (1 - i a)^{-1/2}, principal branch.
  for (double a : {-5.0, -0.5, 0.5, 5.0}) {
    ComplexQuadratic q{CMat::Constant(1, 1, cplx(1.0, -a)), CVec::Zero(1), 0.0};
    EXPECT_LT(rel(gauss_integral(q), std::sqrt(2 * kPi) / std::sqrt(cplx(1.0, -a))), 1e-14);
  }
}

TEST(Gaussian, MatchesTensorQuadrature) {
  std::mt19937_64 rng(99);
  for (int m = 1; m <= 4; ++m) {
    for (int k = 0; k < 3; ++k) {
      ComplexQuadratic q = random_quadratic(m, rng);
      QuadratureResult r = adaptive_gauss_hermite(q, 1e-11, 12, m <= 2 ? 60 : 32);
      EXPECT_LT(rel(gauss_integral(q), r.value), 1e-9) << "m=" << m;
    }
  }
}

TEST(Gaussian, AChiIdentityAndOrthogonal) {
  std::mt19937_64 rng(17);
  for (int d = 2; d <= 4; ++d) {
    for (int dg = 0; dg < d; ++dg) {
      SplitDims dims(d, dg);
      const double target = std::pow(kPi, d - 1);
      EXPECT_LT(rel(a_chi(SymplecticMatrix(Mat::Identity(2 * d - 2, 2 * d - 2)), dims), target), 1e-12);
      for (int k = 0; k < 3; ++k)
        EXPECT_LT(rel(a_chi(random_orthosymplectic(d - 1, rng), dims), target), 1e-10);
    }
  }
}

TEST(Gaussian, AChiShearMatchesQuadrature) {
  // Oracle: tests/oracles/achi_oracle.py (scipy dblquad, error estimate 1e-13).
  Mat b = Mat::Identity(2, 2);
  b(0, 1) = -0.7;
  EXPECT_LT(rel(a_chi(SymplecticMatrix(b), SplitDims(2, 0)), 2.9652184783888176), 1e-12);
}

TEST(Gaussian, DiagCaseExamples) {
  for (int d = 2; d <= 4; ++d) {
    for (int dg = 0; dg < d; ++dg) {
      SplitDims dims(d, dg);
      Vec zero = Vec::Zero(2 * d - 2);
      DiagCaseIntegrals z = diag_case_integrals(dims, zero, zero);
      EXPECT_LT(rel(z.horizontal_engine, std::pow(kPi, d - 1 - dg)), 1e-13);
      EXPECT_LT(rel(z.transverse_engine, std::pow(kPi, dg)), 1e-13);
      Vec h = Vec::Zero(2 * d - 2);
      for (int j = 0; j < dims.h_complex(); ++j) h(dims.hx_index(j)) = 0.3 + j, h(dims.hy_index(j)) = -0.2;
      DiagCaseIntegrals e = diag_case_integrals(dims, h, h);
      EXPECT_LT(rel(e.horizontal_engine, std::pow(kPi, d - 1 - dg)), 1e-12);
    }
  }
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  SplitDims dims(3, 1);
  for (int k = 0; k < 10; ++k) {
    Vec v1(4), v2(4);
    for (int i = 0; i < 4; ++i) v1(i) = u(rng), v2(i) = u(rng);
    DiagCaseIntegrals r = diag_case_integrals(dims, v1, v2);
    EXPECT_LT(rel(r.horizontal_engine, r.horizontal_formula), 1e-10);
    EXPECT_LT(rel(r.transverse_engine, r.transverse_formula), 1e-10);
  }
}
