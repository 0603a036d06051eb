// SPDX-License-Identifier: Apache-2.0
//
// Linear symplectic algebra on R^{2n} with the real layout (x_1..x_n, y_1..y_n)
// identified with C^n through Z = x + i y.
#pragma once

#include <random>

#include "tubelab/linalg.hpp"

namespace tubelab {

// J0 = [[0, I], [-I, 0]].
Mat standard_j(int n);

// max-norm of A^T J0 A - J0.
double symplectic_defect(const Mat& a);

bool is_symplectic(const Mat& a, double tol = 1e-9);

class SymplecticMatrix {
 public:
  // Throws ContractError when the defect exceeds tol.
  explicit SymplecticMatrix(Mat a, double tol = 1e-9);

  // Skips validation; used for finite-difference Jacobians whose defect is
  // reported separately.
  static SymplecticMatrix unchecked(Mat a);

  int n() const { return static_cast<int>(a_.rows() / 2); }
  const Mat& matrix() const { return a_; }
  SymplecticMatrix inverse() const;

 private:
  SymplecticMatrix() = default;
  Mat a_;
};

// A_c = W A W^{-1} = [[P, Q], [conj Q, conj P]].
struct CayleyBlocks {
  CMat P;
  CMat Q;

  int n() const { return static_cast<int>(P.rows()); }
  CMat complexified() const;
  Mat reassemble() const;
};

// W = 2^{-1/2} [[I, iI], [I, -iI]].
CMat cayley_w(int n);

CayleyBlocks complexify(const SymplecticMatrix& a);

CVec to_complex(const Vec& v);
Vec to_real(const CVec& z);

// h0(Z1, Z2) = sum Z1 conj(Z2).
cplx hermitian_h0(const Vec& v1, const Vec& v2);
// omega0(u, v) = u^T J0 v.
double omega0(const Vec& u, const Vec& v);

cplx psi2(const Vec& v1, const Vec& v2);
// -i omega0(v1, v2) - |v1 - v2|^2 / 2.
cplx psi2_alt(const Vec& v1, const Vec& v2);

cplx psi_a(const CayleyBlocks& blocks, const Vec& v1, const Vec& v2);

// pi^{-n} exp(psi2(z, w)).
cplx bargmann_kernel(const Vec& z, const Vec& w);

// pi^{-n} det(P)^{-1/2} exp(Psi_A(z, w)); principal branch of the square root.
cplx metaplectic_kernel(const CayleyBlocks& blocks, const Vec& z, const Vec& w);

// Elementary factors.
Mat upper_shear(const Mat& s);  // [[I, S], [0, I]], S symmetric
Mat lower_shear(const Mat& s);  // [[I, 0], [S, I]]
Mat unitary_embedding(const CMat& u);  // z -> U z
Mat diagonal_scaling(const Vec& log_scales);  // diag(e^a, e^{-a})

// Product of `factors` elementary factors with entries bounded by `bound`.
SymplecticMatrix random_symplectic(int n, std::mt19937_64& rng, int factors = 5,
                                   double bound = 0.8);

// Random element of U(n) embedded in Sp(2n).
SymplecticMatrix random_orthosymplectic(int n, std::mt19937_64& rng);

}  // namespace tubelab
