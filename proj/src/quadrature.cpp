// SPDX-License-Identifier: Apache-2.0
#include "tubelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <gsl/gsl_integration.h>
#include <memory>
#include <numeric>
#include <vector>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {

struct Rule {
  std::vector<double> x, w;
};

// Nodes for int e^{-y^2/2} g(y) dy.
Rule hermite_rule(int n) {
  std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, n, 0.0, 1.0, 0.0, 0.0), &gsl_integration_fixed_free);
  if (!ws) throw NumericalError("tensor_gauss_hermite: could not build the Hermite rule");
  Rule r;
  const double* nodes = gsl_integration_fixed_nodes(ws.get());
  const double* weights = gsl_integration_fixed_weights(ws.get());
  const double s = std::sqrt(2.0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return nodes[a] < nodes[b]; });
  for (int i : order) {
    r.x.push_back(s * nodes[i]);
    r.w.push_back(s * weights[i]);
  }
  return r;
}

struct Walker {
  const Rule& rule;
  const CMat& a;  // quadratic coefficient in whitened coordinates (without the real identity part)
  const CVec& b;
  int m;
  std::vector<double> y;
  // Per level and node: weight * exp(-a_ll y^2 / 2).
  std::vector<std::vector<cplx>> diag;
  cplx total{0.0, 0.0};

  void prepare() {
    const int n = static_cast<int>(rule.x.size());
    diag.assign(m, std::vector<cplx>(n));
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < n; ++i) diag[l][i] = rule.w[i] * std::exp(-0.5 * a(l, l) * rule.x[i] * rule.x[i]);
  }

  // `scale` carries exp(expo) times the weights of the outer levels.
  void run(int level, cplx scale) {
    const int n = static_cast<int>(rule.x.size());
    cplx lin = b(level);
    for (int l = 0; l < level; ++l) lin -= a(level, l) * y[l];
    const std::vector<cplx>& dg = diag[level];
    // Nodes are symmetric: x[n-1-i] = -x[i].
    for (int i = 0; i < n; ++i) {
      const int j = n - 1 - i;
      if (j < i) break;
      cplx e = std::exp(lin * rule.x[i]);
      if (level + 1 == m) {
        total += scale * dg[i] * e;
        if (j != i) total += scale * dg[j] / e;
      } else {
        y[level] = rule.x[i];
        run(level + 1, scale * dg[i] * e);
        if (j != i) {
          y[level] = rule.x[j];
          run(level + 1, scale * dg[j] / e);
        }
      }
    }
  }
};

}  // namespace

cplx tensor_gauss_hermite(const ComplexQuadratic& q, int nodes) {
  const int m = q.dim();
  if (m == 0) return std::exp(q.c);
  if (!(min_real_eigenvalue(q.M) > 1e-12)) throw DomainError("tensor_gauss_hermite: Re M is not positive definite");
  Mat re = 0.5 * (q.M.real() + q.M.real().transpose());
  Eigen::LLT<Mat> llt(re);
  Mat l = llt.matrixL();
  // u = L^{-T} y turns u^T Re(M) u into |y|^2.
  Mat linv = l.inverse();
  CMat a = (linv * (0.5 * (q.M.imag() + q.M.imag().transpose())) * linv.transpose()).cast<cplx>() * cplx(0.0, 1.0);
  CVec bw = linv.cast<cplx>() * q.b;
  Rule rule = hermite_rule(nodes);
  Walker w{rule, a, bw, m, std::vector<double>(m, 0.0), {}};
  w.prepare();
  w.run(0, std::exp(q.c));
  return w.total / l.diagonal().prod();
}

QuadratureResult adaptive_gauss_hermite(const ComplexQuadratic& q, double rel_tol, int start_nodes, int max_nodes) {
  QuadratureResult r;
  r.nodes = start_nodes;
  r.value = tensor_gauss_hermite(q, start_nodes);
  r.change = INFINITY;
  for (int n = start_nodes + 4; n <= max_nodes; n += 4) {
    cplx v = tensor_gauss_hermite(q, n);
    r.change = std::abs(v - r.value);
    r.value = v;
    r.nodes = n;
    if (r.change <= rel_tol * std::abs(v)) break;
  }
  return r;
}

}  // namespace tubelab
