// SPDX-License-Identifier: Apache-2.0
#include "tubelab/symplectic.hpp"

#include <cmath>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {

const cplx kI(0.0, 1.0);

void require_even_square(const Mat& a) {
  require_dims(a.rows() == a.cols() && a.rows() % 2 == 0 && a.rows() > 0,
               "symplectic: expected a non-empty 2n x 2n matrix");
}

void require_pair(const Vec& v1, const Vec& v2) {
  require_dims(v1.size() == v2.size() && v1.size() % 2 == 0, "symplectic: vectors must have equal even length");
}

CMat invert_p(const CMat& p) {
  Eigen::JacobiSVD<CMat> svd(p);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  double cond = smin > 0 ? s(0) / smin : INFINITY;
  if (!(smin > 1e-13 * std::max(1.0, s(0)))) {
    throw NumericalError("symplectic: P is singular (condition " + std::to_string(cond) + ")", cond);
  }
  return p.inverse();
}

}  // namespace

Mat standard_j(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return j;
}

double symplectic_defect(const Mat& a) {
  require_even_square(a);
  Mat j = standard_j(static_cast<int>(a.rows() / 2));
  return (a.transpose() * j * a - j).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Mat& a, double tol) { return symplectic_defect(a) <= tol; }

SymplecticMatrix::SymplecticMatrix(Mat a, double tol) : a_(std::move(a)) {
  double defect = symplectic_defect(a_);
  if (!(defect <= tol)) {
    throw ContractError("symplectic: matrix is not symplectic (defect " + std::to_string(defect) + ")");
  }
}

SymplecticMatrix SymplecticMatrix::unchecked(Mat a) {
  require_even_square(a);
  SymplecticMatrix m;
  m.a_ = std::move(a);
  return m;
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  // A^{-1} = -J0 A^T J0.
  Mat j = standard_j(n());
  return unchecked(-j * a_.transpose() * j);
}

CMat cayley_w(int n) {
  CMat w(2 * n, 2 * n);
  CMat id = CMat::Identity(n, n);
  w.topLeftCorner(n, n) = id;
  w.topRightCorner(n, n) = kI * id;
  w.bottomLeftCorner(n, n) = id;
  w.bottomRightCorner(n, n) = -kI * id;
  return w / std::sqrt(2.0);
}

CMat CayleyBlocks::complexified() const {
  int m = n();
  CMat ac(2 * m, 2 * m);
  ac.topLeftCorner(m, m) = P;
  ac.topRightCorner(m, m) = Q;
  ac.bottomLeftCorner(m, m) = Q.conjugate();
  ac.bottomRightCorner(m, m) = P.conjugate();
  return ac;
}

Mat CayleyBlocks::reassemble() const {
  CMat w = cayley_w(n());
  CMat a = w.adjoint() * complexified() * w;
  return a.real();
}

CayleyBlocks complexify(const SymplecticMatrix& a) {
  int n = a.n();
  CMat w = cayley_w(n);
  CMat ac = w * a.matrix().cast<cplx>() * w.adjoint();
  return CayleyBlocks{ac.topLeftCorner(n, n), ac.topRightCorner(n, n)};
}

CVec to_complex(const Vec& v) {
  require_dims(v.size() % 2 == 0, "symplectic: real vector must have even length");
  Eigen::Index n = v.size() / 2;
  CVec z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = cplx(v(i), v(n + i));
  return z;
}

Vec to_real(const CVec& z) {
  Eigen::Index n = z.size();
  Vec v(2 * n);
  v.head(n) = z.real();
  v.tail(n) = z.imag();
  return v;
}

cplx hermitian_h0(const Vec& v1, const Vec& v2) {
  require_pair(v1, v2);
  return (to_complex(v1).array() * to_complex(v2).conjugate().array()).sum();
}

double omega0(const Vec& u, const Vec& v) {
  require_pair(u, v);
  return u.dot(standard_j(static_cast<int>(u.size() / 2)) * v);
}

cplx psi2(const Vec& v1, const Vec& v2) {
  require_pair(v1, v2);
  return hermitian_h0(v1, v2) - 0.5 * v1.squaredNorm() - 0.5 * v2.squaredNorm();
}

cplx psi2_alt(const Vec& v1, const Vec& v2) {
  require_pair(v1, v2);
  return -kI * omega0(v1, v2) - 0.5 * (v1 - v2).squaredNorm();
}

cplx psi_a(const CayleyBlocks& blocks, const Vec& v1, const Vec& v2) {
  require_pair(v1, v2);
  require_dims(v1.size() == 2 * blocks.n(), "psi_a: vector length must be 2n");
  CVec z1 = to_complex(v1);
  CVec z2b = to_complex(v2).conjugate();
  CMat pinv = invert_p(blocks.P);
  CVec pz1 = pinv * z1;
  cplx t1 = z1.transpose() * (blocks.Q.conjugate() * pz1);
  cplx t2 = z2b.transpose() * pz1;
  cplx t3 = z2b.transpose() * (pinv * (blocks.Q * z2b));
  return 0.5 * (t1 + 2.0 * t2 - t3 - v1.squaredNorm() - v2.squaredNorm());
}

cplx bargmann_kernel(const Vec& z, const Vec& w) {
  double n = static_cast<double>(z.size() / 2);
  return std::pow(kPi, -n) * std::exp(psi2(z, w));
}

cplx metaplectic_kernel(const CayleyBlocks& blocks, const Vec& z, const Vec& w) {
  cplx det = blocks.P.determinant();
  cplx psi = psi_a(blocks, z, w);
  return std::pow(kPi, -static_cast<double>(blocks.n())) * std::exp(psi - 0.5 * std::log(det));
}

Mat upper_shear(const Mat& s) {
  Eigen::Index n = s.rows();
  Mat a = Mat::Identity(2 * n, 2 * n);
  a.topRightCorner(n, n) = 0.5 * (s + s.transpose());
  return a;
}

Mat lower_shear(const Mat& s) {
  Eigen::Index n = s.rows();
  Mat a = Mat::Identity(2 * n, 2 * n);
  a.bottomLeftCorner(n, n) = 0.5 * (s + s.transpose());
  return a;
}

Mat unitary_embedding(const CMat& u) {
  Eigen::Index n = u.rows();
  Mat a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = u.real();
  a.topRightCorner(n, n) = -u.imag();
  a.bottomLeftCorner(n, n) = u.imag();
  a.bottomRightCorner(n, n) = u.real();
  return a;
}

Mat diagonal_scaling(const Vec& log_scales) {
  Eigen::Index n = log_scales.size();
  Mat a = Mat::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = std::exp(log_scales(i));
    a(n + i, n + i) = std::exp(-log_scales(i));
  }
  return a;
}

namespace {

CMat random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases so the distribution does not depend on the QR convention.
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

SymplecticMatrix random_symplectic(int n, std::mt19937_64& rng, int factors, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::uniform_int_distribution<int> kind(0, 3);
  Mat a = Mat::Identity(2 * n, 2 * n);
  for (int f = 0; f < factors; ++f) {
    Mat s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = u(rng);
    Vec scales(n);
    for (int i = 0; i < n; ++i) scales(i) = u(rng);
    switch (kind(rng)) {
      case 0: a = upper_shear(s) * a; break;
      case 1: a = lower_shear(s) * a; break;
      case 2: a = unitary_embedding(random_unitary(n, rng)) * a; break;
      default: a = diagonal_scaling(scales) * a; break;
    }
  }
  return SymplecticMatrix(a, 1e-8);
}

SymplecticMatrix random_orthosymplectic(int n, std::mt19937_64& rng) {
  return SymplecticMatrix(unitary_embedding(random_unitary(n, rng)), 1e-10);
}

}  // namespace tubelab
