// SPDX-License-Identifier: Apache-2.0
#include "tubelab/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double wrap_positive(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// Orthonormal basis of range(G) (columns).
Mat range_basis(const Mat& g) {
  if (g.cols() == 0) return Mat(g.rows(), 0);
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ() * Mat::Identity(g.rows(), g.cols());
}

// Projector onto the orthogonal complement of range(G).
Mat complement_projector(const Mat& g) {
  Mat q = range_basis(g);
  return Mat::Identity(g.rows(), g.rows()) - q * q.transpose();
}

// Gram-Schmidt completion: appends to `basis` unit vectors orthogonal to
// `basis` and to `excluded`, drawn from the standard basis in order.
void complete_basis(std::vector<Vec>& basis, const std::vector<Vec>& excluded, int d, size_t target) {
  for (int i = 0; i < d && basis.size() < target; ++i) {
    Vec e = Vec::Unit(d, i);
    for (const auto& q : excluded) e -= q.dot(e) * q;
    for (const auto& q : basis) e -= q.dot(e) * q;
    for (const auto& q : excluded) e -= q.dot(e) * q;
    for (const auto& q : basis) e -= q.dot(e) * q;
    double nrm = e.norm();
    if (nrm > 1e-6) basis.push_back(e / nrm);
  }
}

bool same_element(const GroupElement& a, const GroupElement& b, int modulus, double tol) {
  if (a.angles.size() != b.angles.size()) return false;
  for (Eigen::Index i = 0; i < a.angles.size(); ++i) {
    if (std::abs(wrap_angle(a.angles(i) - b.angles(i))) > tol) return false;
  }
  if (modulus > 1) return ((a.step - b.step) % modulus + modulus) % modulus == 0;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Group actions

GroupAction GroupAction::trivial(int d) {
  require_dims(d >= 1, "GroupAction: d must be positive");
  GroupAction a;
  a.kind_ = ActionKind::trivial;
  a.d_ = d;
  return a;
}

GroupAction GroupAction::subtorus(int d, std::vector<std::vector<int>> generators) {
  require_dims(d >= 1, "GroupAction: d must be positive");
  if (generators.empty()) return trivial(d);
  for (const auto& g : generators) require_dims(static_cast<int>(g.size()) == d, "GroupAction: generator length must be d");
  if (static_cast<int>(generators.size()) > d - 1) {
    throw DomainError("GroupAction: a subtorus action needs d_G <= d - 1");
  }
  GroupAction a;
  a.kind_ = ActionKind::subtorus;
  a.d_ = d;
  a.gens_ = std::move(generators);
  Mat g = a.generator_matrix();
  Eigen::FullPivLU<Mat> lu(g);
  if (lu.rank() != g.cols()) throw DomainError("GroupAction: generators must be linearly independent");
  return a;
}

GroupAction GroupAction::cyclic(int d, std::vector<int> generator, int modulus) {
  require_dims(d >= 1 && static_cast<int>(generator.size()) == d, "GroupAction: generator length must be d");
  if (modulus < 1) throw DomainError("GroupAction: modulus must be positive");
  if (std::all_of(generator.begin(), generator.end(), [](int v) { return v == 0; })) {
    throw DomainError("GroupAction: cyclic generator must be non-zero");
  }
  GroupAction a;
  a.kind_ = ActionKind::cyclic;
  a.d_ = d;
  a.gens_ = {std::move(generator)};
  a.modulus_ = modulus;
  return a;
}

Mat GroupAction::generator_matrix() const {
  Mat g(d_, static_cast<Eigen::Index>(gens_.size()));
  for (size_t j = 0; j < gens_.size(); ++j)
    for (int i = 0; i < d_; ++i) g(i, static_cast<Eigen::Index>(j)) = gens_[j][i];
  return g;
}

GroupElement GroupAction::identity() const {
  GroupElement e;
  e.angles = Vec::Zero(dim());
  e.step = 0;
  return e;
}

bool GroupAction::valid(const GroupElement& g) const {
  if (g.angles.size() != dim()) return false;
  if (kind_ == ActionKind::cyclic) return g.step >= 0 && g.step < modulus_;
  return g.step == 0;
}

Vec GroupAction::translation(const GroupElement& g) const {
  if (!valid(g)) throw DomainError("group_act: element does not belong to the configured action");
  switch (kind_) {
    case ActionKind::trivial: return Vec::Zero(d_);
    case ActionKind::subtorus: return generator_matrix() * g.angles;
    case ActionKind::cyclic: return generator_matrix().col(0) * (kTwoPi * static_cast<double>(g.step) / modulus_);
  }
  return Vec::Zero(d_);
}

std::vector<GroupElement> GroupAction::stabilizer() const {
  std::vector<GroupElement> out;
  if (kind_ == ActionKind::trivial) {
    out.push_back(identity());
    return out;
  }
  if (kind_ == ActionKind::cyclic) {
    for (long j = 0; j < modulus_; ++j) {
      bool integral = true;
      for (int i = 0; i < d_; ++i) integral = integral && ((static_cast<long>(gens_[0][i]) * j) % modulus_ == 0);
      if (integral) out.push_back(GroupElement{Vec::Zero(0), j});
    }
    return out;
  }
  // Subtorus: theta in [0, 2 pi)^k with G theta in 2 pi Z^d.
  Mat g = generator_matrix();
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(g);
  std::vector<int> radius(d_);
  for (int i = 0; i < d_; ++i) {
    int r = 0;
    for (const auto& gen : gens_) r += std::abs(gen[i]);
    radius[i] = r;
  }
  std::vector<int> n(d_);
  for (int i = 0; i < d_; ++i) n[i] = -radius[i];
  while (true) {
    Vec nv(d_);
    for (int i = 0; i < d_; ++i) nv(i) = n[i];
    Vec theta = cod.solve(kTwoPi * nv);
    if ((g * theta - kTwoPi * nv).norm() < 1e-9) {
      GroupElement e{theta.unaryExpr([](double a) { return wrap_positive(a); }), 0};
      bool dup = false;
      for (const auto& o : out) dup = dup || same_element(o, e, 1, 1e-9);
      if (!dup) out.push_back(e);
    }
    int i = 0;
    while (i < d_ && ++n[i] > radius[i]) {
      n[i] = -radius[i];
      ++i;
    }
    if (i == d_) break;
  }
  return out;
}

cplx GroupAction::character(const std::vector<long>& nu, const GroupElement& g) const {
  switch (kind_) {
    case ActionKind::trivial: return 1.0;
    case ActionKind::subtorus: {
      require_dims(static_cast<int>(nu.size()) == dim(), "character: nu needs one entry per generator");
      double ph = 0.0;
      for (int j = 0; j < dim(); ++j) ph += static_cast<double>(nu[j]) * g.angles(j);
      return std::polar(1.0, ph);
    }
    case ActionKind::cyclic:
      require_dims(nu.size() == 1, "character: nu needs one entry for a cyclic action");
      return std::polar(1.0, kTwoPi * static_cast<double>(nu[0] * g.step) / modulus_);
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Model and points

TorusModel::TorusModel(int d, double tau, GroupAction action, double injectivity_threshold)
    : d_(d), tau_(tau), action_(std::move(action)), injectivity_(injectivity_threshold) {
  require_dims(d >= 1 && action_.ambient_dim() == d, "TorusModel: action dimension must match d");
  if (!(tau > 0)) throw DomainError("TorusModel: tau must be positive");
  if (action_.dim() > 0 && action_.dim() > d - 1) throw DomainError("TorusModel: need d_G <= d - 1");
  if (!(injectivity_threshold > 0)) throw DomainError("TorusModel: injectivity threshold must be positive");
}

TubePoint TorusModel::point(Vec x, Vec p) const {
  require_dims(x.size() == d_ && p.size() == d_, "TubePoint: x and p must have length d");
  if (std::abs(p.norm() - tau_) > 1e-12 * std::max(1.0, tau_)) throw DomainError("TubePoint: |p| must equal tau");
  return TubePoint{std::move(x), std::move(p)};
}

TubePoint TorusModel::point_along(Vec x, const Vec& direction) const {
  require_dims(direction.size() == d_, "TubePoint: direction must have length d");
  double nrm = direction.norm();
  if (!(nrm > 0)) throw DomainError("TubePoint: direction must be non-zero");
  return TubePoint{std::move(x), direction * (tau_ / nrm)};
}

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

Vec wrap_angles(const Vec& x) { return x.unaryExpr([](double a) { return wrap_angle(a); }); }

TubePoint default_z_point(const TorusModel& model) {
  const int d = model.d();
  std::vector<Vec> gens;
  if (model.action().kind() == ActionKind::subtorus) {
    Mat q = range_basis(model.action().generator_matrix());
    for (Eigen::Index j = 0; j < q.cols(); ++j) gens.push_back(q.col(j));
  }
  // Search from the last axis so that d = 2 with an e1 circle gives p = (0, tau).
  for (int i = d - 1; i >= 0; --i) {
    Vec e = Vec::Unit(d, i);
    for (const auto& q : gens) e -= q.dot(e) * q;
    if (e.norm() > 1e-6) return model.point_along(Vec::Zero(d), e);
  }
  throw DomainError("default_z_point: Z^tau is empty");
}

TubePoint geodesic_flow(const TorusModel& model, const TubePoint& pt, double t) {
  return TubePoint{wrap_angles(pt.x + (t / model.tau()) * pt.p), pt.p};
}

TubePoint group_act(const TorusModel& model, const GroupElement& g, const TubePoint& pt) {
  return TubePoint{wrap_angles(pt.x + model.action().translation(g)), pt.p};
}

double moment(const TorusModel& model, const TubePoint& pt, const Vec& xi) {
  require_dims(xi.size() == model.d(), "moment: generator must have length d");
  if (model.action().kind() != ActionKind::subtorus) return 0.0;
  return pt.p.dot(xi);
}

double contact_form(const TubePoint& pt, const Vec& tangent) {
  Eigen::Index d = pt.x.size();
  require_dims(tangent.size() == 2 * d, "contact_form: tangent must have length 2d");
  return -pt.p.dot(tangent.head(d));
}

double z_locus_distance(const TorusModel& model, const TubePoint& pt, Metric metric) {
  if (model.action().kind() != ActionKind::subtorus) return 0.0;
  Mat q = range_basis(model.action().generator_matrix());
  Vec along = q * (q.transpose() * pt.p);
  Vec perp = pt.p - along;
  double angle = std::atan2(along.norm(), perp.norm());
  double euclid = model.tau() * angle;
  return metric == Metric::kappa_hat ? euclid : euclid / std::sqrt(2.0);
}

// ---------------------------------------------------------------------------
// Frames

Frame nhlc_frame(const TorusModel& model, const TubePoint& pt, bool split) {
  const int d = model.d();
  const int n = d - 1;
  const double tau = model.tau();
  Frame f;
  f.origin = pt;
  f.reeb = Vec::Zero(2 * d);
  f.reeb.head(d) = -pt.p / (tau * tau);
  f.split = split && model.action().kind() == ActionKind::subtorus;
  f.d_g = f.split ? model.d_g() : 0;

  Vec phat = pt.p / pt.p.norm();
  std::vector<Vec> excluded{phat};
  std::vector<Vec> basis;
  if (f.split) {
    if (z_locus_distance(model, pt) > 1e-9) throw DomainError("nhlc_frame: splitting requested off Z^tau");
    Mat q = range_basis(model.action().generator_matrix());
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      Vec e = q.col(j);
      e -= phat.dot(e) * phat;
      basis.push_back(e / e.norm());
    }
  }
  complete_basis(basis, excluded, d, static_cast<size_t>(n));
  if (static_cast<int>(basis.size()) != n) throw NumericalError("nhlc_frame: could not complete the horizontal basis");

  f.horizontal = Mat::Zero(2 * d, 2 * n);
  const double s = std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    f.horizontal.col(j).head(d) = s * basis[j];
    f.horizontal.col(n + j).tail(d) = s * basis[j];
  }
  return f;
}

TubePoint displace(const TorusModel& model, const Frame& frame, double theta, const Vec& v) {
  const int d = model.d();
  require_dims(v.size() == frame.horizontal.cols(), "displace: v must have length 2(d-1)");
  Vec step = theta * frame.reeb + frame.horizontal * v;
  if (!(step.norm() < 0.5 * model.tau())) throw DomainError("displace: displacement must stay below tau / 2");
  Vec x = frame.origin.x + step.head(d);
  Vec p = frame.origin.p + step.tail(d);
  return TubePoint{wrap_angles(x), p * (model.tau() / p.norm())};
}

FrameCoordinates frame_coordinates(const TorusModel& model, const Frame& frame, const TubePoint& pt) {
  const int d = model.d();
  Vec delta(2 * d);
  delta.head(d) = wrap_angles(pt.x - frame.origin.x);
  delta.tail(d) = pt.p - frame.origin.p;
  FrameCoordinates c;
  c.theta = delta.dot(frame.reeb) / frame.reeb.squaredNorm();
  c.v = frame.horizontal.transpose() * delta / 2.0;
  return c;
}

FlowLinearization flow_linearization(const TorusModel& model, const TubePoint& x12, double t1,
                                     const Frame& frame12, const Frame& frame2, double step) {
  const Eigen::Index m = frame12.horizontal.cols();
  require_dims(frame2.horizontal.cols() == m, "flow_linearization: frames must have equal size");
  Mat b(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Vec e = Vec::Unit(m, j) * step;
    TubePoint plus = geodesic_flow(model, displace(model, frame12, 0.0, e), -t1);
    TubePoint minus = geodesic_flow(model, displace(model, frame12, 0.0, -e), -t1);
    Vec cp = frame_coordinates(model, frame2, plus).v;
    Vec cm = frame_coordinates(model, frame2, minus).v;
    b.col(j) = (cp - cm) / (2.0 * step);
  }
  (void)x12;
  double defect = symplectic_defect(b);
  return FlowLinearization{SymplecticMatrix::unchecked(b), defect};
}

// ---------------------------------------------------------------------------
// Orbits

std::vector<OrbitHit> orbit_intersection(const TorusModel& model, const TubePoint& x1, const TubePoint& x2,
                                         const Interval& support, double tol) {
  std::vector<OrbitHit> hits;
  if (!(support.length() < model.injectivity_threshold())) {
    throw DomainError("orbit_intersection: support of the cutoff exceeds the injectivity threshold");
  }
  if ((x1.p - x2.p).norm() > tol * std::max(1.0, model.tau())) return hits;

  const int d = model.d();
  const GroupAction& act = model.action();
  Vec phat = x2.p / x2.p.norm();
  Vec u = wrap_angles(x1.x - x2.x);
  double tmax = std::max(std::abs(support.lo), std::abs(support.hi));

  Mat g = act.kind() == ActionKind::subtorus ? act.generator_matrix() : Mat(d, 0);
  Mat perp = complement_projector(g);
  Vec pp = perp * phat;
  if (pp.norm() < 1e-12) return hits;
  Eigen::CompleteOrthogonalDecomposition<Mat> cod;
  if (g.cols() > 0) cod.compute(g);

  std::vector<Vec> shifts;
  std::vector<long> steps;
  if (act.kind() == ActionKind::cyclic) {
    for (long j = 0; j < act.modulus(); ++j) {
      shifts.push_back(act.translation(GroupElement{Vec::Zero(0), j}));
      steps.push_back(j);
    }
  } else {
    shifts.push_back(Vec::Zero(d));
    steps.push_back(0);
  }

  std::vector<int> radius(d);
  for (int i = 0; i < d; ++i) {
    double r = (kPi + tmax) / kTwoPi + 1.0;
    for (Eigen::Index j = 0; j < g.cols(); ++j) r += std::abs(g(i, j));
    radius[i] = static_cast<int>(std::ceil(r));
  }

  for (size_t s = 0; s < shifts.size(); ++s) {
    std::vector<int> n(d);
    for (int i = 0; i < d; ++i) n[i] = -radius[i];
    while (true) {
      Vec nv(d);
      for (int i = 0; i < d; ++i) nv(i) = n[i];
      Vec w = u - shifts[s] - kTwoPi * nv;
      double t = (perp * w).dot(pp) / pp.squaredNorm();
      if (support.contains(t) && (perp * (w - t * phat)).norm() <= tol) {
        GroupElement e;
        e.step = steps[s];
        if (g.cols() > 0) {
          e.angles = cod.solve(w - t * phat).unaryExpr([](double a) { return wrap_positive(a); });
        } else {
          e.angles = Vec::Zero(0);
        }
        bool dup = false;
        for (const auto& h : hits) {
          dup = dup || (std::abs(h.t - t) <= tol && same_element(h.g, e, act.modulus(), 1e-7));
        }
        if (!dup) hits.push_back(OrbitHit{e, t});
      }
      int i = 0;
      while (i < d && ++n[i] > radius[i]) {
        n[i] = -radius[i];
        ++i;
      }
      if (i == d) break;
    }
  }
  std::sort(hits.begin(), hits.end(), [](const OrbitHit& a, const OrbitHit& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.g.step != b.g.step) return a.g.step < b.g.step;
    for (Eigen::Index i = 0; i < a.g.angles.size(); ++i)
      if (a.g.angles(i) != b.g.angles(i)) return a.g.angles(i) < b.g.angles(i);
    return false;
  });
  return hits;
}

int stabilizer_order(const TorusModel& model) { return static_cast<int>(model.action().stabilizer().size()); }

double effective_volume(const TorusModel& model, const TubePoint& pt, Metric metric) {
  if (z_locus_distance(model, pt) > 1e-9) throw DomainError("effective_volume: point is not on Z^tau");
  const GroupAction& act = model.action();
  const double r = static_cast<double>(stabilizer_order(model));
  switch (act.kind()) {
    case ActionKind::trivial: return 1.0;
    case ActionKind::cyclic: return act.modulus() / r;
    case ActionKind::subtorus: {
      Mat g = act.generator_matrix();
      double scale = metric == Metric::kappa_tilde ? 0.5 : 1.0;
      Mat gram = scale * g.transpose() * g;
      return std::pow(kTwoPi, act.dim()) * std::sqrt(gram.determinant()) / r;
    }
  }
  return 1.0;
}

double unit_sphere_area(int k) {
  require_dims(k >= 1, "unit_sphere_area: k must be positive");
  return 2.0 * std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k);
}

double tube_volume(const TorusModel& model) {
  const int d = model.d();
  return std::pow(kTwoPi, d) * std::pow(model.tau(), d - 1) * unit_sphere_area(d);
}

double quotient_volume(const TorusModel& model, Metric z_metric) {
  const GroupAction& act = model.action();
  if (act.kind() == ActionKind::cyclic) throw DomainError("quotient_volume: needs a subtorus (or trivial) action");
  if (stabilizer_order(model) != 1) throw DomainError("quotient_volume: the action is not free");
  const int d = model.d();
  const int k = d - model.d_g();  // Z^tau = T^d x (sphere of radius tau in R^k)
  double vol_z = std::pow(kTwoPi, d) * std::pow(model.tau(), k - 1) * unit_sphere_area(k);
  if (z_metric == Metric::kappa_tilde) vol_z *= std::pow(2.0, -0.5 * (d + k - 1));
  TubePoint z = default_z_point(model);
  return vol_z / effective_volume(model, z, Metric::kappa_tilde);
}

}  // namespace tubelab
