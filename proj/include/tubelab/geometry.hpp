// SPDX-License-Identifier: Apache-2.0
//
// Flat-torus tube model: X^tau = T^d x {|p| = tau} with contact form
// alpha = -p.dx, geodesic flow (x, p) -> (x + t p / tau, p) and group actions by
// translations of T^d.
#pragma once

#include <vector>

#include "tubelab/gaussian.hpp"
#include "tubelab/linalg.hpp"
#include "tubelab/symplectic.hpp"

namespace tubelab {

enum class ActionKind { trivial, subtorus, cyclic };

// Subtorus: angles (one per generator), x -> x + sum angles_j g_j.
// Cyclic: step j, x -> x + 2 pi j g / m.
struct GroupElement {
  Vec angles;
  long step = 0;
};

class GroupAction {
 public:
  static GroupAction trivial(int d);
  static GroupAction subtorus(int d, std::vector<std::vector<int>> generators);
  static GroupAction cyclic(int d, std::vector<int> generator, int modulus);

  ActionKind kind() const { return kind_; }
  int ambient_dim() const { return d_; }
  // Dimension d_G of the group.
  int dim() const { return kind_ == ActionKind::subtorus ? static_cast<int>(gens_.size()) : 0; }
  const std::vector<std::vector<int>>& generators() const { return gens_; }
  int modulus() const { return modulus_; }
  // d x (number of generators), as doubles.
  Mat generator_matrix() const;

  GroupElement identity() const;
  Vec translation(const GroupElement& g) const;
  bool valid(const GroupElement& g) const;
  // Elements acting trivially on T^d (the action is by translations, so the
  // stabilizer is the same at every point).
  std::vector<GroupElement> stabilizer() const;
  // Character Xi_nu(g); nu has one entry per generator (subtorus) or one entry
  // (cyclic).
  cplx character(const std::vector<long>& nu, const GroupElement& g) const;

  bool operator==(const GroupAction& o) const = default;

 private:
  ActionKind kind_ = ActionKind::trivial;
  int d_ = 1;
  std::vector<std::vector<int>> gens_;
  int modulus_ = 1;
};

struct TubePoint {
  Vec x;
  Vec p;
};

enum class Metric { kappa_tilde, kappa_hat };

class TorusModel {
 public:
  TorusModel(int d, double tau, GroupAction action, double injectivity_threshold = kPi);

  int d() const { return d_; }
  double tau() const { return tau_; }
  const GroupAction& action() const { return action_; }
  int d_g() const { return action_.dim(); }
  SplitDims split() const { return SplitDims(d_, d_g()); }
  double injectivity_threshold() const { return injectivity_; }

  // Validates |p| = tau within 1e-12 relative.
  TubePoint point(Vec x, Vec p) const;
  // Point with p = tau * direction / |direction|.
  TubePoint point_along(Vec x, const Vec& direction) const;

 private:
  int d_;
  double tau_;
  GroupAction action_;
  double injectivity_;
};

double wrap_angle(double a);  // into (-pi, pi]
Vec wrap_angles(const Vec& x);

// A point of Z^tau with x = 0 and p orthogonal to every generator.
TubePoint default_z_point(const TorusModel& model);

TubePoint geodesic_flow(const TorusModel& model, const TubePoint& pt, double t);
TubePoint group_act(const TorusModel& model, const GroupElement& g, const TubePoint& pt);
double moment(const TorusModel& model, const TubePoint& pt, const Vec& xi);
double contact_form(const TubePoint& pt, const Vec& tangent);  // alpha(dx, dp)

double z_locus_distance(const TorusModel& model, const TubePoint& pt, Metric metric = Metric::kappa_tilde);

// Tangent vectors are (dx, dp) in R^{2d}.
struct Frame {
  TubePoint origin;
  Vec reeb;
  // 2d x 2n; columns h_1..h_n followed by J h_1..J h_n, each of kappa-tilde
  // length one.
  Mat horizontal;
  bool split = false;
  int d_g = 0;
};

// With split = true the first d_G horizontal directions span T^v and their J
// images span T^t; the point must lie on Z^tau.
Frame nhlc_frame(const TorusModel& model, const TubePoint& pt, bool split = true);

TubePoint displace(const TorusModel& model, const Frame& frame, double theta, const Vec& v);

struct FrameCoordinates {
  double theta;
  Vec v;
};
// Linear inverse of displace for nearby points.
FrameCoordinates frame_coordinates(const TorusModel& model, const Frame& frame, const TubePoint& pt);

struct FlowLinearization {
  SymplecticMatrix b;
  double defect;
};

// Central-difference Jacobian of Gamma_{-t1} from horizontal coordinates at
// x12 to those at x2 = Gamma_{-t1}(x12).
FlowLinearization flow_linearization(const TorusModel& model, const TubePoint& x12, double t1,
                                     const Frame& frame12, const Frame& frame2, double step = 1e-5);

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
};

struct OrbitHit {
  GroupElement g;
  double t;
};

// All (g, t) with t in `support` and g Gamma_t(x2) = x1.
std::vector<OrbitHit> orbit_intersection(const TorusModel& model, const TubePoint& x1, const TubePoint& x2,
                                         const Interval& support, double tol = 1e-9);

int stabilizer_order(const TorusModel& model);

double effective_volume(const TorusModel& model, const TubePoint& pt, Metric metric = Metric::kappa_tilde);

// Volume of Z^tau / G: Z^tau measured with the density induced by the
// Euclidean metric (or by kappa-tilde on request), divided by the kappa-tilde
// orbit volume.
double quotient_volume(const TorusModel& model, Metric z_metric = Metric::kappa_hat);

// Volume of X^tau for tau^{d-1} dx d(omega): (2 pi)^d tau^{d-1} |S^{d-1}|.
double tube_volume(const TorusModel& model);

double unit_sphere_area(int k);  // |S^{k-1}| in R^k

}  // namespace tubelab
