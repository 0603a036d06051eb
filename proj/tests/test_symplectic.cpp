// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tubelab/errors.hpp"
#include "tubelab/symplectic.hpp"

using namespace tubelab;

namespace {

Mat shear(double s) {
  Mat a = Mat::Identity(2, 2);
  a(0, 1) = -s;
  return a;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(Symplectic, MembershipExamples) {
  EXPECT_TRUE(is_symplectic(Mat::Identity(2, 2)));
  for (double s : {-3.0, 0.4, 11.0}) EXPECT_TRUE(is_symplectic(shear(s)));
  Mat d = Mat::Identity(2, 2);
  d(0, 0) = 2.0;
  EXPECT_FALSE(is_symplectic(d));
  EXPECT_THROW(SymplecticMatrix{d}, ContractError);
}

TEST(Symplectic, ComplexifiedBlocksOfIdentityAndJ) {
  CayleyBlocks id = complexify(SymplecticMatrix(Mat::Identity(4, 4)));
  EXPECT_LT((id.P - CMat::Identity(2, 2)).norm(), 1e-14);
  EXPECT_LT(id.Q.norm(), 1e-14);
  // Oracle: tests/oracles/symplectic_oracle.py
  CayleyBlocks j = complexify(SymplecticMatrix(standard_j(1)));
  EXPECT_NEAR(std::abs(j.P(0, 0) - cplx(0.0, -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(j.Q(0, 0)), 0.0, 1e-14);
}

TEST(Symplectic, ComplexifiedBlocksOfShear) {
  for (double s : {0.7, 1.0}) {
    CayleyBlocks b = complexify(SymplecticMatrix(shear(s)));
    EXPECT_NEAR(std::abs(b.P(0, 0) - cplx(1.0, s / 2)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(b.Q(0, 0) - cplx(0.0, -s / 2)), 0.0, 1e-14);
    EXPECT_LT((b.reassemble() - shear(s)).norm(), 1e-14);
  }
}

TEST(Symplectic, Psi2Examples) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 4; ++n) {
    Vec v(2 * n);
    for (int i = 0; i < 2 * n; ++i) v(i) = g(rng);
    EXPECT_LT(std::abs(psi2(v, v)), 1e-14);
  }
  EXPECT_LT(std::abs(psi2(vec2(1, 0), vec2(0, 1)) - cplx(-1.0, -1.0)), 1e-15);
  EXPECT_LT(std::abs(psi2(vec2(2, 0), vec2(1, 0)) - cplx(-0.5, 0.0)), 1e-15);
}

TEST(Symplectic, PsiAIdentityReducesToPsi2) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  CayleyBlocks id = complexify(SymplecticMatrix(Mat::Identity(6, 6)));
  for (int k = 0; k < 20; ++k) {
    Vec v1(6), v2(6);
    for (int i = 0; i < 6; ++i) v1(i) = g(rng), v2(i) = g(rng);
    EXPECT_LT(std::abs(psi_a(id, v1, v2) - psi2(v1, v2)), 1e-12);
  }
}

TEST(Symplectic, PsiAUnitaryIsPsi2OfImage) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 3; ++n) {
    SymplecticMatrix a = random_orthosymplectic(n, rng);
    CayleyBlocks b = complexify(a);
    for (int k = 0; k < 10; ++k) {
      Vec v1(2 * n), v2(2 * n);
      for (int i = 0; i < 2 * n; ++i) v1(i) = g(rng), v2(i) = g(rng);
      EXPECT_LT(std::abs(psi_a(b, v1, v2) - psi2(v1, a.matrix() * v2)), 1e-12);
    }
  }
}

TEST(Symplectic, PsiAShearMatchesOracle) {
  // Oracle: tests/oracles/symplectic_oracle.py with P = 1 + i/2, Q = -i/2.
  CayleyBlocks b = complexify(SymplecticMatrix(shear(1.0)));
  EXPECT_LT(std::abs(psi_a(b, vec2(1, 0), vec2(1, 0))), 1e-15);
  EXPECT_LT(std::abs(psi_a(b, vec2(0.3, -0.2), vec2(0.5, 0.4)) - cplx(-0.184, -0.228)), 1e-15);
}

TEST(Symplectic, BargmannKernelExamples) {
  Vec z = vec2(0.4, -1.3);
  EXPECT_NEAR(std::abs(bargmann_kernel(z, z) - 1.0 / kPi), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bargmann_kernel(vec2(1, 0), vec2(0, 0))), std::exp(-0.5) / kPi, 1e-15);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    Vec a(4), c(4);
    for (int i = 0; i < 4; ++i) a(i) = g(rng), c(i) = g(rng);
    EXPECT_LE(std::abs(bargmann_kernel(a, c)), 1.0 / (kPi * kPi) * (1 + 1e-14));
  }
}

TEST(Symplectic, MetaplecticKernelExamples) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  CayleyBlocks id = complexify(SymplecticMatrix(Mat::Identity(4, 4)));
  SymplecticMatrix o = random_orthosymplectic(2, rng);
  CayleyBlocks ob = complexify(o);
  for (int k = 0; k < 10; ++k) {
    Vec z(4), w(4);
    for (int i = 0; i < 4; ++i) z(i) = g(rng), w(i) = g(rng);
    EXPECT_LT(std::abs(metaplectic_kernel(id, z, w) - bargmann_kernel(z, w)), 1e-15);
    EXPECT_NEAR(std::abs(metaplectic_kernel(ob, z, w)), std::abs(bargmann_kernel(z, o.matrix() * w)), 1e-14);
  }
}

TEST(Symplectic, RandomMatricesSatisfyBlockProperties) {
  std::mt19937_64 rng(20240601);
  for (int s = 0; s < 40; ++s) {
    const int n = 1 + s % 4;
    SymplecticMatrix a = random_symplectic(n, rng);
    EXPECT_LT(symplectic_defect(a.matrix()), 1e-10);
    CayleyBlocks b = complexify(a);
    EXPECT_LT((b.reassemble() - a.matrix()).norm(), 1e-10 * (1 + a.matrix().norm()));
    // |P z| >= |z|: the singular values of P are at least one.
    Eigen::JacobiSVD<CMat> svd(b.P);
    EXPECT_GE(svd.singularValues().minCoeff(), 1.0 - 1e-10);
    EXPECT_LT((a.inverse().matrix() * a.matrix() - Mat::Identity(2 * n, 2 * n)).norm(), 1e-9);
  }
}
