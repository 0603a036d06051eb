// SPDX-License-Identifier: Apache-2.0
//
// Lattice sums of the complexified eigenfunctions
//   phi_k(x + i p) = (2 pi)^{-d/2} exp(i k.x - k.p)
// over X^tau: tempered Poisson kernels, the Q-symbol profile, norms and Weyl
// sums.  The volume form on X^tau is tau^{d-1} dx d(omega).
#pragma once

#include <vector>

#include "tubelab/cutoff.hpp"
#include "tubelab/geometry.hpp"
#include "tubelab/lattice.hpp"
#include "tubelab/mode_sum.hpp"

namespace tubelab {

struct TruncationPolicy {
  // Modes with envelope |chi_hat(lambda - mu)| <= trunc_tol * chi_hat(0) are dropped.
  double trunc_tol = 1e-10;
  std::size_t max_modes = 50'000'000;

  bool operator==(const TruncationPolicy&) const = default;
};

struct KernelValue {
  cplx value;
  std::size_t n_modes = 0;
  // Upper bound on the modulus of all dropped terms.
  double trunc_bound = 0.0;
  // Sum of the moduli of the retained terms.
  double abs_sum = 0.0;
};

// Precomputed mode table for one (model, cutoff, isotype, lambda); evaluates
// P_{chi,nu,lambda}(x, y) at many point pairs.
class KernelEvaluator {
 public:
  KernelEvaluator(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, double lambda,
                  const TruncationPolicy& policy = {}, KernelIsa isa = default_isa(), int workers = 1);

  KernelValue operator()(const TubePoint& x, const TubePoint& y) const;

  double lambda() const { return lambda_; }
  std::size_t n_modes() const { return table_.size(); }
  double trunc_bound() const { return trunc_bound_; }
  // Retained spectral window [lambda - W, lambda + W].
  double window() const { return window_; }
  KernelIsa isa() const { return isa_; }

 private:
  ModeTable table_;
  int d_;
  double tau_;
  double t0_;
  double lambda_;
  double window_;
  double trunc_bound_;
  KernelIsa isa_;
  int workers_;
};

KernelValue poisson_kernel(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, double lambda,
                           const TubePoint& x, const TubePoint& y, const TruncationPolicy& policy = {});

// q(|k|) = tau^{d-1} int_{S^{d-1}} exp(-2 tau |k| (1 + <k/|k|, omega>)) d(omega).
double q_tau_profile(const TorusModel& model, double k_norm);
// Polar-angle quadrature, valid for every d >= 2.
double q_tau_quadrature(int d, double tau, double k_norm);

// ||phi_k||^2 over X^tau = exp(2 tau |k|) q(|k|); overflows to +inf for very
// large |k|, use the scaled form there.
double complexified_norm(const TorusModel& model, const Mode& k);
// exp(-2 tau |k|) ||phi_k||^2 = q(|k|).
double complexified_norm_scaled(const TorusModel& model, const Mode& k);

// sum over mu_k <= lambda in the isotype of exp(-2 tau mu_k) ||phi_k||^2.
double weyl_sum_P(const TorusModel& model, const Isotype& iso, double lambda, std::size_t cap = 50'000'000);
// The same at every entry of `lambdas` from a single enumeration.
std::vector<double> weyl_sum_ladder(const TorusModel& model, const Isotype& iso, const std::vector<double>& lambdas,
                                    std::size_t cap = 50'000'000);

}  // namespace tubelab
