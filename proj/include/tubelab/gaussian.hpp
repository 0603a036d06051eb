// SPDX-License-Identifier: Apache-2.0
//
// Complex Gaussian integrals  int_{R^m} exp(-u^T M u / 2 + b^T u + c) du  with
// Re M positive definite.
#pragma once

#include "tubelab/linalg.hpp"
#include "tubelab/symplectic.hpp"

namespace tubelab {

struct ComplexQuadratic {
  CMat M;
  CVec b;
  cplx c{0.0, 0.0};

  int dim() const { return static_cast<int>(M.rows()); }
};

// Smallest eigenvalue of the symmetrized real part of M.
double min_real_eigenvalue(const CMat& m);

// (2 pi)^{m/2} det(M)^{-1/2} exp(b^T M^{-1} b / 2 + c).  Every eigenvalue of M
// lies in the open right half plane, so continuing det(M)^{-1/2} along
// Re M + s i Im M keeps each eigenvalue on the principal branch.
cplx gauss_integral(const ComplexQuadratic& q);

// Tangent splitting of R^{2n}, n = d - 1, in the (x, y) layout: the vertical
// block is x_1..x_{dG}, the transverse block y_1..y_{dG}, and the horizontal
// block the remaining x and y slots.
struct SplitDims {
  int d = 2;
  int d_g = 0;

  SplitDims() = default;
  SplitDims(int d_, int d_g_);

  int n() const { return d - 1; }
  int h_complex() const { return d - 1 - d_g; }
  int v_index(int j) const { return j; }
  int t_index(int j) const { return n() + j; }
  int hx_index(int j) const { return d_g + j; }
  int hy_index(int j) const { return n() + d_g + j; }

  Vec vertical(const Vec& u) const;
  Vec transverse(const Vec& u) const;
  // Horizontal block as a vector in R^{2(n-dG)} with its own (x, y) layout.
  Vec horizontal(const Vec& u) const;
  Vec embed(const Vec& v_part, const Vec& t_part, const Vec& h_part) const;
};

// Quadratic form of exp(-|u^t|^2 - |u^h|^2/2 - i omega0(u^v, u^t) - |B u|^2/2).
ComplexQuadratic a_chi_quadratic(const SymplecticMatrix& b, const SplitDims& dims);

cplx a_chi(const SymplecticMatrix& b, const SplitDims& dims);

struct DiagCaseIntegrals {
  cplx horizontal_formula;
  cplx horizontal_engine;
  cplx transverse_formula;
  cplx transverse_engine;
};

// v1, v2 are full vectors in R^{2n}; only their blocks enter.
DiagCaseIntegrals diag_case_integrals(const SplitDims& dims, const Vec& v1, const Vec& v2);

}  // namespace tubelab
