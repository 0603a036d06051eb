// SPDX-License-Identifier: Apache-2.0
#include "tubelab/spectra.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <gsl/gsl_sf_bessel.h>
#include <map>

#include "tubelab/errors.hpp"
#include "tubelab/parallel.hpp"

namespace tubelab {

KernelEvaluator::KernelEvaluator(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, double lambda,
                                 const TruncationPolicy& policy, KernelIsa isa, int workers)
    : d_(model.d()),
      tau_(model.tau()),
      t0_(cutoff.spec().t0),
      lambda_(lambda),
      isa_(isa),
      workers_(workers) {
  if (!(lambda >= 0)) throw DomainError("poisson_kernel: lambda must be non-negative");
  if (!(policy.trunc_tol > 0)) throw DomainError("poisson_kernel: trunc_tol must be positive");
  require_dims(d_ <= kMaxLatticeDim, "poisson_kernel: d must be at most 4");
  window_ = cutoff.window(policy.trunc_tol);
  const double lo = std::max(0.0, lambda - window_);
  const double hi = lambda + window_;
  const double norm = std::pow(2.0 * kPi, -d_);

  table_.d = d_;
  for_each_lattice_point(d_, lo, hi, [&](const Mode& m) {
    if (!iso.contains(m)) return;
    if (table_.size() >= policy.max_modes) throw CapacityError("poisson_kernel: mode count exceeds the configured cap");
    table_.push(m, norm * cutoff.chi_hat_centered(lambda - m.mu));
  });

  // Dropped terms have modulus at most (2 pi)^{-d} |chi_hat(lambda - mu)|.
  CompensatedSum bound;
  for (double a = 0.0; a < lo; a += 1.0) {
    double b = std::min(lo, a + 1.0);
    bound.add(cutoff.envelope(lambda - b) * lattice_shell_bound(d_, a, b));
  }
  const double far = lambda + cutoff.s_max();
  for (double a = hi; a < far; a += 1.0) {
    bound.add(cutoff.envelope(a - lambda) * lattice_shell_bound(d_, a, a + 1.0));
  }
  trunc_bound_ = norm * bound.value();
}

KernelValue KernelEvaluator::operator()(const TubePoint& x, const TubePoint& y) const {
  require_dims(x.x.size() == d_ && y.x.size() == d_, "poisson_kernel: points must have dimension d");
  ModeSumParams p;
  p.two_tau = 2.0 * tau_;
  p.t0 = t0_;
  for (int j = 0; j < d_; ++j) {
    p.s[j] = x.p(j) + y.p(j);
    p.dx[j] = wrap_angle(x.x(j) - y.x(j));
  }
  PartialSum s = blocked_mode_sum(table_, p, isa_, workers_);
  KernelValue out;
  out.value = std::polar(1.0, -lambda_ * t0_) * cplx(s.re, s.im);
  out.n_modes = table_.size();
  out.trunc_bound = trunc_bound_;
  out.abs_sum = s.abs;
  return out;
}

KernelValue poisson_kernel(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, double lambda,
                           const TubePoint& x, const TubePoint& y, const TruncationPolicy& policy) {
  return KernelEvaluator(model, cutoff, iso, lambda, policy)(x, y);
}

double q_tau_quadrature(int d, double tau, double k_norm) {
  require_dims(d >= 2, "q_tau_quadrature: d must be at least 2");
  if (!(k_norm >= 0)) throw DomainError("q_tau_profile: |k| must be non-negative");
  const double z = 2.0 * tau * k_norm;
  const double pref = std::pow(tau, d - 1) * unit_sphere_area(d - 1);
  if (z == 0.0) return std::pow(tau, d - 1) * unit_sphere_area(d);
  // With c = cos(angle to k) and w = z (1 + c):
  //   int_{-1}^{1} e^{-z(1+c)} (1 - c^2)^{(d-3)/2} dc
  //     = z^{-1} int_0^{2z} e^{-w} ((w/z)(2 - w/z))^{(d-3)/2} dw.
  const double expo = 0.5 * (d - 3);
  auto f = [z, expo](double w) {
    double u = w / z;
    double base = u * (2.0 - u);
    if (base <= 0.0) return expo == 0.0 ? std::exp(-w) : 0.0;
    return std::exp(-w) * std::pow(base, expo);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  double top = std::min(2.0 * z, 750.0);
  double val = ts.integrate(f, 0.0, top, 1e-13, &err);
  if (!(err <= 1e-9 * std::abs(val)) || !std::isfinite(val)) {
    throw NumericalError("q_tau_profile: sphere quadrature did not converge");
  }
  return pref * val / z;
}

double q_tau_profile(const TorusModel& model, double k_norm) {
  if (!(k_norm >= 0)) throw DomainError("q_tau_profile: |k| must be non-negative");
  const int d = model.d();
  const double tau = model.tau();
  const double z = 2.0 * tau * k_norm;
  if (d == 1) return 1.0 + std::exp(-2.0 * z);
  if (d == 2) return 2.0 * kPi * tau * gsl_sf_bessel_I0_scaled(z);
  return q_tau_quadrature(d, tau, k_norm);
}

double complexified_norm_scaled(const TorusModel& model, const Mode& k) { return q_tau_profile(model, k.mu); }

double complexified_norm(const TorusModel& model, const Mode& k) {
  return std::exp(2.0 * model.tau() * k.mu) * q_tau_profile(model, k.mu);
}

std::vector<double> weyl_sum_ladder(const TorusModel& model, const Isotype& iso, const std::vector<double>& lambdas,
                                    std::size_t cap) {
  double top = 0.0;
  for (double l : lambdas) {
    if (!(l > 0)) throw DomainError("weyl_sum_P: lambda must be positive");
    top = std::max(top, l);
  }
  std::map<std::int64_t, std::int64_t> shells;
  std::size_t count = 0;
  for_each_lattice_point(model.d(), 0.0, top, [&](const Mode& m) {
    if (!iso.contains(m)) return;
    if (++count > cap) throw CapacityError("weyl_sum_P: mode count exceeds the configured cap");
    ++shells[m.norm2];
  });
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < lambdas.size(); ++i) order.emplace_back(lambdas[i], i);
  std::sort(order.begin(), order.end());
  std::vector<double> out(lambdas.size(), 0.0);
  CompensatedSum acc;
  auto it = shells.begin();
  for (const auto& [lam, idx] : order) {
    const double lam2 = lam * lam;
    for (; it != shells.end() && static_cast<double>(it->first) <= lam2; ++it) {
      double q = q_tau_profile(model, std::sqrt(static_cast<double>(it->first)));
      acc.add(static_cast<double>(it->second) * q);
    }
    out[idx] = acc.value();
  }
  return out;
}

double weyl_sum_P(const TorusModel& model, const Isotype& iso, double lambda, std::size_t cap) {
  return weyl_sum_ladder(model, iso, {lambda}, cap)[0];
}

}  // namespace tubelab
