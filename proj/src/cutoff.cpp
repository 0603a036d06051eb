// SPDX-License-Identifier: Apache-2.0
#include "tubelab/cutoff.hpp"

#include <algorithm>
#include <boost/math/quadrature/trapezoidal.hpp>
#include <cmath>
#include <functional>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {

// Nodes of the fixed trapezoid rule on [0, eps] used for the base transform.
// The integrand and all its derivatives vanish at eps and it is even at 0, so
// the rule converges spectrally; aliasing sits at 2 pi N / eps.
constexpr int kTransformNodes = 768;
constexpr double kInvSqrtTwoPi = 0.39894228040143267794;

double adaptive(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::trapezoidal(f, a, b, 1e-14, 24);
}

}  // namespace

std::string to_string(CutoffFamily f) { return f == CutoffFamily::bump ? "bump" : "autocorrelated"; }

CutoffFamily cutoff_family_from_string(const std::string& s) {
  if (s == "bump") return CutoffFamily::bump;
  if (s == "autocorrelated") return CutoffFamily::autocorrelated;
  throw ConfigError("unknown cutoff family '" + s + "' (expected bump or autocorrelated)");
}

double base_bump(double t, double eps) {
  double u = t / eps;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

Cutoff::Cutoff(const CutoffSpec& spec) : spec_(spec) {
  if (!(spec_.epsilon > 0)) throw DomainError("Cutoff: epsilon must be positive");
  if (!(spec_.grid_step > 0)) throw DomainError("Cutoff: grid step must be positive");
  if (!(spec_.tail_floor > 0 && spec_.tail_floor < 1)) throw DomainError("Cutoff: tail floor must lie in (0, 1)");
  build();
}

Interval Cutoff::support() const {
  double half = spec_.family == CutoffFamily::autocorrelated ? 2.0 * spec_.epsilon : spec_.epsilon;
  return Interval{spec_.t0 - half, spec_.t0 + half};
}

void Cutoff::base_transform(double s, double& f, double& f1, double& f2) const {
  // b_hat(s) = (2/pi)^{1/2} int_0^eps b(t) cos(s t) dt and its s-derivatives.
  const double h = spec_.epsilon / kTransformNodes;
  double a0 = 0.5 * node_b_[0], a1 = 0.0, a2 = 0.0;
  for (int j = 1; j < kTransformNodes; ++j) {
    double t = node_t_[j];
    double b = node_b_[j];
    double c = std::cos(s * t), sn = std::sin(s * t);
    a0 += b * c;
    a1 -= b * t * sn;
    a2 -= b * t * t * c;
  }
  const double k = 2.0 * kInvSqrtTwoPi * h;
  f = k * a0;
  f1 = k * a1;
  f2 = k * a2;
}

void Cutoff::build() {
  const double eps = spec_.epsilon;
  for (int j = 0; j < kTransformNodes; ++j) {
    double t = j * eps / kTransformNodes;
    node_t_.push_back(t);
    node_b_.push_back(base_bump(t, eps));
  }
  bump_l2_ = adaptive([eps](double t) { double b = base_bump(t, eps); return b * b; }, -eps, eps);
  const double h = spec_.grid_step;
  double f0, d1, d2;
  base_transform(0.0, f0, d1, d2);
  auto centered = [&](double bh) {
    return spec_.family == CutoffFamily::autocorrelated ? std::sqrt(2.0 * kPi) * bh * bh / bump_l2_ : bh;
  };
  const double c0 = std::abs(centered(f0));
  // Rounding in the node sum leaves |b_hat| with noise near 1e-14 b_hat(0); a
  // floor below the centered image of that noise cannot be reached.
  const double stop_level = std::max(spec_.tail_floor * c0, std::abs(centered(3e-14 * f0)));
  // Extend the grid until |chi_hat| has stayed below the floor over a few
  // oscillation periods of the base transform.
  const double quiet_span = 4.0 * 2.0 * kPi / eps;
  double quiet_since = -1.0;
  for (size_t i = 0;; ++i) {
    double s = static_cast<double>(i) * h;
    double f, g1, g2;
    base_transform(s, f, g1, g2);
    f_.push_back(f);
    f1_.push_back(g1);
    f2_.push_back(g2);
    bool quiet = std::abs(centered(f)) < stop_level;
    if (!quiet) {
      quiet_since = -1.0;
    } else if (quiet_since < 0) {
      quiet_since = s;
    }
    if (quiet_since >= 0 && s - quiet_since >= quiet_span) break;
    if (s > 5000.0 / eps) throw NumericalError("Cutoff: transform tail does not decay to the requested floor");
  }
  s_max_ = static_cast<double>(f_.size() - 1) * h;
  tail_max_.assign(f_.size(), 0.0);
  double running = 0.0;
  for (size_t i = f_.size(); i-- > 0;) {
    running = std::max(running, std::abs(centered(f_[i])));
    tail_max_[i] = running;
  }
}

double Cutoff::base_hat(double s) const {
  s = std::abs(s);
  if (s >= s_max_) return 0.0;
  // Quintic Hermite interpolation on [s_i, s_{i+1}] from values and the first
  // two derivatives.
  const double h = spec_.grid_step;
  size_t i = static_cast<size_t>(s / h);
  if (i + 1 >= f_.size()) i = f_.size() - 2;
  double u = s / h - static_cast<double>(i);
  double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  double h00 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
  double h10 = u - 6 * u3 + 8 * u4 - 3 * u5;
  double h20 = 0.5 * (u2 - 3 * u3 + 3 * u4 - u5);
  double h01 = 10 * u3 - 15 * u4 + 6 * u5;
  double h11 = -4 * u3 + 7 * u4 - 3 * u5;
  double h21 = 0.5 * (u3 - 2 * u4 + u5);
  return h00 * f_[i] + h * h10 * f1_[i] + h * h * h20 * f2_[i] + h01 * f_[i + 1] + h * h11 * f1_[i + 1] +
         h * h * h21 * f2_[i + 1];
}

double Cutoff::chi_hat_centered(double s) const {
  double bh = base_hat(s);
  return spec_.family == CutoffFamily::autocorrelated ? std::sqrt(2.0 * kPi) * bh * bh / bump_l2_ : bh;
}

cplx Cutoff::chi_hat(double s) const { return std::polar(1.0, -s * spec_.t0) * chi_hat_centered(s); }

double Cutoff::chi(double t) const {
  const double eps = spec_.epsilon;
  const double u = t - spec_.t0;
  if (spec_.family == CutoffFamily::bump) return base_bump(u, eps);
  if (std::abs(u) >= 2.0 * eps) return 0.0;
  double lo = std::max(-eps, u - eps), hi = std::min(eps, u + eps);
  double v = adaptive([eps, u](double s) { return base_bump(s, eps) * base_bump(s - u, eps); }, lo, hi);
  return v / bump_l2_;
}

Cutoff Cutoff::reflected() const {
  Cutoff c = *this;
  c.spec_.t0 = -spec_.t0;
  return c;
}

double Cutoff::envelope(double s) const {
  s = std::abs(s);
  if (s >= s_max_) return 0.0;
  size_t i = static_cast<size_t>(s / spec_.grid_step);
  return tail_max_[std::min(i, tail_max_.size() - 1)];
}

double Cutoff::window(double rel_tol) const {
  const double thr = rel_tol * std::abs(chi_hat_centered(0.0));
  for (size_t i = 0; i < tail_max_.size(); ++i) {
    if (tail_max_[i] <= thr) return static_cast<double>(i) * spec_.grid_step;
  }
  return s_max_;
}

}  // namespace tubelab
