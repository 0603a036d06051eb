// SPDX-License-Identifier: Apache-2.0
//
// Compactly supported cutoffs chi and their transforms
//   chi_hat(s) = (2 pi)^{-1/2} int e^{-i s t} chi(t) dt.
#pragma once

#include <string>
#include <vector>

#include "tubelab/geometry.hpp"
#include "tubelab/linalg.hpp"

namespace tubelab {

enum class CutoffFamily { bump, autocorrelated };

std::string to_string(CutoffFamily f);
CutoffFamily cutoff_family_from_string(const std::string& s);

struct CutoffSpec {
  CutoffFamily family = CutoffFamily::autocorrelated;
  double epsilon = 0.4;
  double t0 = 0.0;
  double grid_step = 0.05;
  // The cached transform stops where |chi_hat| stays below tail_floor * chi_hat(0),
  // or below the rounding noise of the transform when that is larger.
  double tail_floor = 1e-28;

  bool operator==(const CutoffSpec&) const = default;
};

// Base bump b(t) = exp(-1 / (1 - (t/eps)^2)) on |t| < eps.
double base_bump(double t, double eps);

class Cutoff {
 public:
  explicit Cutoff(const CutoffSpec& spec);

  const CutoffSpec& spec() const { return spec_; }
  Interval support() const;

  double chi(double t) const;
  // Transform of chi(. + t0): real and even.
  double chi_hat_centered(double s) const;
  // Full transform e^{-i s t0} chi_hat_centered(s).
  cplx chi_hat(double s) const;

  // chi_-(t) = chi(-t).
  Cutoff reflected() const;

  // Last cached abscissa; the transform is taken as zero beyond it.
  double s_max() const { return s_max_; }
  // sup_{|s'| >= |s|} |chi_hat(s')| over the cached grid.
  double envelope(double s) const;
  // Smallest W with envelope(W) <= rel_tol * chi_hat(0).
  double window(double rel_tol) const;

 private:
  Cutoff() = default;
  void build();
  // Value and first two derivatives of the base transform at s >= 0.
  void base_transform(double s, double& f, double& f1, double& f2) const;
  double base_hat(double s) const;

  CutoffSpec spec_;
  double bump_l2_ = 0.0;  // int b^2
  double s_max_ = 0.0;
  std::vector<double> node_t_, node_b_;
  std::vector<double> f_, f1_, f2_;
  std::vector<double> tail_max_;
};

}  // namespace tubelab
