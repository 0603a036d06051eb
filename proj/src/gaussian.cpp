// SPDX-License-Identifier: Apache-2.0
#include "tubelab/gaussian.hpp"

#include <cmath>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {
const cplx kI(0.0, 1.0);
}

double min_real_eigenvalue(const CMat& m) {
  Mat re = 0.5 * (m.real() + m.real().transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(re, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

cplx gauss_integral(const ComplexQuadratic& q) {
  const int m = q.dim();
  require_dims(q.M.cols() == m && q.b.size() == m, "gauss_integral: inconsistent dimensions");
  if (m == 0) return std::exp(q.c);
  double sym = (q.M - q.M.transpose()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, q.M.cwiseAbs().maxCoeff());
  if (sym > 1e-12 * scale) throw DomainError("gauss_integral: M is not symmetric");
  double lmin = min_real_eigenvalue(q.M);
  if (!(lmin > 1e-12)) {
    throw DomainError("gauss_integral: Re M is not positive definite (min eigenvalue " +
                      std::to_string(lmin) + ")");
  }
  Eigen::ComplexEigenSolver<CMat> es(q.M, false);
  cplx inv_sqrt_det(1.0, 0.0);
  for (int i = 0; i < m; ++i) inv_sqrt_det /= std::sqrt(es.eigenvalues()(i));
  Eigen::PartialPivLU<CMat> lu(q.M);
  CVec x = lu.solve(q.b);
  cplx quad = q.b.transpose() * x;
  return std::pow(2.0 * kPi, 0.5 * m) * inv_sqrt_det * std::exp(0.5 * quad + q.c);
}

SplitDims::SplitDims(int d_, int d_g_) : d(d_), d_g(d_g_) {
  if (d < 1 || d_g < 0 || (d_g > 0 && d_g > d - 1)) {
    throw DimensionError("SplitDims: need 0 <= dG <= d - 1");
  }
}

Vec SplitDims::vertical(const Vec& u) const {
  require_dims(u.size() == 2 * n(), "SplitDims: vector length must be 2(d-1)");
  return u.segment(0, d_g);
}

Vec SplitDims::transverse(const Vec& u) const {
  require_dims(u.size() == 2 * n(), "SplitDims: vector length must be 2(d-1)");
  return u.segment(n(), d_g);
}

Vec SplitDims::horizontal(const Vec& u) const {
  require_dims(u.size() == 2 * n(), "SplitDims: vector length must be 2(d-1)");
  int h = h_complex();
  Vec out(2 * h);
  out.head(h) = u.segment(d_g, h);
  out.tail(h) = u.segment(n() + d_g, h);
  return out;
}

Vec SplitDims::embed(const Vec& v_part, const Vec& t_part, const Vec& h_part) const {
  require_dims(v_part.size() == d_g && t_part.size() == d_g && h_part.size() == 2 * h_complex(),
               "SplitDims: block sizes do not match");
  Vec u = Vec::Zero(2 * n());
  int h = h_complex();
  u.segment(0, d_g) = v_part;
  u.segment(n(), d_g) = t_part;
  u.segment(d_g, h) = h_part.head(h);
  u.segment(n() + d_g, h) = h_part.tail(h);
  return u;
}

ComplexQuadratic a_chi_quadratic(const SymplecticMatrix& b, const SplitDims& dims) {
  const int n = dims.n();
  require_dims(b.n() == n, "a_chi: B must be 2(d-1) x 2(d-1)");
  const int m = 2 * n;
  CMat q = (b.matrix().transpose() * b.matrix()).cast<cplx>();
  for (int j = 0; j < dims.d_g; ++j) {
    q(dims.t_index(j), dims.t_index(j)) += 2.0;
    q(dims.v_index(j), dims.t_index(j)) += kI;
    q(dims.t_index(j), dims.v_index(j)) += kI;
  }
  for (int j = 0; j < dims.h_complex(); ++j) {
    q(dims.hx_index(j), dims.hx_index(j)) += 1.0;
    q(dims.hy_index(j), dims.hy_index(j)) += 1.0;
  }
  return ComplexQuadratic{q, CVec::Zero(m), cplx(0.0)};
}

cplx a_chi(const SymplecticMatrix& b, const SplitDims& dims) {
  return gauss_integral(a_chi_quadratic(b, dims));
}

DiagCaseIntegrals diag_case_integrals(const SplitDims& dims, const Vec& v1, const Vec& v2) {
  require_dims(v1.size() == 2 * dims.n() && v2.size() == 2 * dims.n(),
               "diag_case_integrals: vectors must have length 2(d-1)");
  DiagCaseIntegrals out;

  // Horizontal block: M = 2I, b = (v1 + v2) - i J0^T (v1 - v2).
  Vec h1 = dims.horizontal(v1);
  Vec h2 = dims.horizontal(v2);
  const int h = dims.h_complex();
  out.horizontal_formula = std::pow(kPi, h) * std::exp(psi2(h1, h2));
  if (h == 0) {
    out.horizontal_engine = 1.0;
  } else {
    Mat j = standard_j(h);
    ComplexQuadratic qh;
    qh.M = 2.0 * CMat::Identity(2 * h, 2 * h);
    qh.b = (h1 + h2).cast<cplx>() - kI * (j.transpose() * (h1 - h2)).cast<cplx>();
    qh.c = -0.5 * h1.squaredNorm() - 0.5 * h2.squaredNorm();
    out.horizontal_engine = gauss_integral(qh);
  }

  // Vertical-transverse block over (u^t, u^v):
  // -|v1^t|^2 - |u^t|^2 - i u^v.(u^t + v2^t) - |u^v|^2/2 - |u^t - v2^t|^2/2.
  Vec t1 = dims.transverse(v1);
  Vec t2 = dims.transverse(v2);
  const int g = dims.d_g;
  out.transverse_formula = std::pow(kPi, g) * std::exp(-t1.squaredNorm() - t2.squaredNorm());
  if (g == 0) {
    out.transverse_engine = 1.0;
  } else {
    ComplexQuadratic qt;
    qt.M = CMat::Zero(2 * g, 2 * g);
    qt.b = CVec::Zero(2 * g);
    for (int i = 0; i < g; ++i) {
      qt.M(i, i) = 3.0;
      qt.M(g + i, g + i) = 1.0;
      qt.M(i, g + i) = kI;
      qt.M(g + i, i) = kI;
      qt.b(i) = t2(i);
      qt.b(g + i) = -kI * t2(i);
    }
    qt.c = -t1.squaredNorm() - 0.5 * t2.squaredNorm();
    out.transverse_engine = gauss_integral(qt);
  }
  return out;
}

}  // namespace tubelab
