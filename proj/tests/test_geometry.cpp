// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tubelab/geometry.hpp"

using namespace tubelab;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

TorusModel s1_model(int d, double tau) {
  std::vector<int> e1(d, 0);
  e1[0] = 1;
  return TorusModel(d, tau, GroupAction::subtorus(d, {e1}));
}

double angle_gap(const Vec& a, const Vec& b) { return wrap_angles(a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Geometry, GeodesicFlowExamples) {
  TorusModel m(2, 0.5, GroupAction::trivial(2));
  TubePoint pt = m.point(v2(0.3, -1.0), v2(0.3, 0.4));
  TubePoint same = geodesic_flow(m, pt, 0.0);
  EXPECT_LT(angle_gap(same.x, pt.x), 1e-15);
  EXPECT_LT((same.p - pt.p).norm(), 1e-15);
  TubePoint q = m.point(v2(0, 0), v2(0, 0.5));
  TubePoint f = geodesic_flow(m, q, 0.5);
  EXPECT_LT(angle_gap(f.x, v2(0.0, 0.5)), 1e-15);
  f = geodesic_flow(m, q, 7.0);
  EXPECT_LT(angle_gap(f.x, v2(0.0, 7.0)), 1e-12);
}

TEST(Geometry, MomentConstantAlongFlow) {
  TorusModel m = s1_model(3, 0.7);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Vec xi = Vec::Unit(3, 0);
  for (int k = 0; k < 20; ++k) {
    Vec x(3), p(3);
    for (int i = 0; i < 3; ++i) x(i) = g(rng), p(i) = g(rng);
    TubePoint pt = m.point_along(x, p);
    double t = 3.0 * g(rng);
    EXPECT_NEAR(moment(m, geodesic_flow(m, pt, t), xi), moment(m, pt, xi), 1e-14);
    // Finite-difference derivative along the flow.
    double h = 1e-4;
    double dm = (moment(m, geodesic_flow(m, pt, t + h), xi) - moment(m, geodesic_flow(m, pt, t - h), xi)) / (2 * h);
    EXPECT_NEAR(dm, 0.0, 1e-10);
  }
}

TEST(Geometry, MomentExamples) {
  TorusModel m = s1_model(2, 0.5);
  Vec xi = Vec::Unit(2, 0);
  EXPECT_NEAR(moment(m, m.point(v2(0, 0), v2(0, 0.5)), xi), 0.0, 1e-15);
  EXPECT_NEAR(moment(m, m.point(v2(0, 0), v2(0.5, 0)), xi), 0.5, 1e-15);
}

TEST(Geometry, GroupActionExamples) {
  TorusModel m(2, 0.5, GroupAction::cyclic(2, {1, 0}, 4));
  TubePoint pt = m.point(v2(0.2, 0.1), v2(0.3, 0.4));
  const GroupAction& a = m.action();
  TubePoint same = group_act(m, a.identity(), pt);
  EXPECT_LT(angle_gap(same.x, pt.x), 1e-15);
  GroupElement g = a.identity();
  g.step = 1;
  TubePoint q = pt;
  for (int i = 0; i < 4; ++i) q = group_act(m, g, q);
  EXPECT_LT(angle_gap(q.x, pt.x), 1e-14);
  EXPECT_GT(angle_gap(group_act(m, g, pt).x, pt.x), 1.0);
  for (double t : {-1.3, 0.2, 2.5}) {
    TubePoint ab = group_act(m, g, geodesic_flow(m, pt, t));
    TubePoint ba = geodesic_flow(m, group_act(m, g, pt), t);
    EXPECT_LT(angle_gap(ab.x, ba.x), 1e-12);
    EXPECT_LT((ab.p - ba.p).norm(), 1e-15);
  }
}

TEST(Geometry, ZLocusDistance) {
  const double tau = 0.5;
  TorusModel m = s1_model(2, tau);
  EXPECT_NEAR(z_locus_distance(m, m.point(v2(1, 2), v2(0, tau))), 0.0, 1e-15);
  TubePoint far = m.point(v2(0, 0), v2(tau, 0));
  EXPECT_NEAR(z_locus_distance(m, far, Metric::kappa_hat), tau * kPi / 2, 1e-6);
  EXPECT_NEAR(z_locus_distance(m, far, Metric::kappa_tilde), tau * kPi / (2 * std::sqrt(2.0)), 1e-6);
  double prev = -1.0;
  for (double a = 0.0; a <= kPi / 2; a += 0.1) {
    double d = z_locus_distance(m, m.point_along(v2(0, 0), v2(std::sin(a), std::cos(a))), Metric::kappa_hat);
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(Geometry, FrameProperties) {
  for (int d : {2, 3, 4}) {
    TorusModel m = s1_model(d, 0.6);
    TubePoint pt = default_z_point(m);
    for (bool split : {false, true}) {
      Frame f = nhlc_frame(m, pt, split);
      EXPECT_NEAR(contact_form(pt, f.reeb), 1.0, 1e-15);
      const int n = d - 1;
      for (int j = 0; j < 2 * n; ++j) {
        Vec h = f.horizontal.col(j);
        EXPECT_NEAR(contact_form(pt, h), 0.0, 1e-15);
        // d rho(h) = 2 p . dp with rho = |p|^2.
        EXPECT_NEAR(pt.p.dot(h.tail(d)), 0.0, 1e-15);
      }
      for (int j = 0; j < n; ++j) {
        Vec h = f.horizontal.col(j), jh = f.horizontal.col(n + j);
        EXPECT_LT(h.tail(d).norm(), 1e-15);
        EXPECT_LT((jh.tail(d) - h.head(d)).norm(), 1e-15);
        EXPECT_LT(jh.head(d).norm(), 1e-15);
      }
    }
  }
}

TEST(Geometry, DisplaceExamples) {
  TorusModel m = s1_model(3, 0.5);
  TubePoint pt = default_z_point(m);
  Frame f = nhlc_frame(m, pt, true);
  TubePoint same = displace(m, f, 0.0, Vec::Zero(4));
  EXPECT_LT(angle_gap(same.x, pt.x), 1e-15);
  EXPECT_LT((same.p - pt.p).norm(), 1e-15);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 10; ++k) {
    Vec v(4);
    for (int i = 0; i < 4; ++i) v(i) = 0.04 * g(rng);
    TubePoint q = displace(m, f, 0.04 * g(rng), v);
    EXPECT_NEAR(q.p.norm(), 0.5, 1e-14);
  }
  // Along T^t the kappa-tilde distance to Z grows like |v^t|.
  SplitDims dims = m.split();
  for (double s : {1e-3, 1e-4}) {
    Vec v = Vec::Zero(4);
    v(dims.t_index(0)) = s;
    double dist = z_locus_distance(m, displace(m, f, 0.0, v), Metric::kappa_tilde);
    EXPECT_NEAR(dist / s, 1.0, 1e-3);
  }
}

TEST(Geometry, FrameCoordinatesInvertDisplace) {
  TorusModel m(2, 0.5, GroupAction::trivial(2));
  TubePoint pt = m.point(v2(0.1, 0.2), v2(0.0, 0.5));
  Frame f = nhlc_frame(m, pt, false);
  Vec v = v2(1e-4, -2e-4);
  FrameCoordinates c = frame_coordinates(m, f, displace(m, f, 3e-4, v));
  EXPECT_NEAR(c.theta, 3e-4, 1e-9);
  EXPECT_LT((c.v - v).norm(), 1e-9);
}

TEST(Geometry, FlowLinearizationShear) {
  const double tau = 0.5;
  TorusModel m(2, tau, GroupAction::trivial(2));
  TubePoint x2 = m.point(v2(0.0, 0.0), v2(0.0, tau));
  for (double t1 : {0.0, 0.3, -0.2}) {
    TubePoint x1 = geodesic_flow(m, x2, t1);
    FlowLinearization fl = flow_linearization(m, x1, t1, nhlc_frame(m, x1, false), nhlc_frame(m, x2, false));
    const Mat& b = fl.b.matrix();
    EXPECT_NEAR(b.determinant(), 1.0, 1e-8);
    EXPECT_NEAR(b(0, 0), 1.0, 1e-8);
    EXPECT_NEAR(b(1, 1), 1.0, 1e-8);
    EXPECT_NEAR(b(1, 0), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(b(0, 1)), std::abs(t1) / tau, 1e-8);
  }
}

TEST(Geometry, OrbitIntersection) {
  TorusModel m(2, 0.5, GroupAction::trivial(2));
  TubePoint x2 = m.point(v2(0.4, 0.1), v2(0.3, 0.4));
  Interval supp{-0.8, 0.8};
  std::vector<OrbitHit> hits = orbit_intersection(m, geodesic_flow(m, x2, 0.3), x2, supp);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_NEAR(hits[0].t, 0.3, 1e-9);
  EXPECT_TRUE(orbit_intersection(m, m.point(v2(2.0, 2.0), v2(0.5, 0.0)), x2, supp).empty());

  TorusModel c(2, 0.5, GroupAction::cyclic(2, {1, 0}, 3));
  GroupElement g = c.action().identity();
  g.step = 2;
  TubePoint y2 = c.point(v2(0.4, 0.1), v2(0.0, 0.5));
  TubePoint y1 = group_act(c, g, geodesic_flow(c, y2, -0.1));
  hits = orbit_intersection(c, y1, y2, supp);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].g.step, 2);
  EXPECT_NEAR(hits[0].t, -0.1, 1e-9);
}

TEST(Geometry, EffectiveVolumeExamples) {
  TorusModel c(2, 0.5, GroupAction::cyclic(2, {1, 0}, 4));
  EXPECT_NEAR(effective_volume(c, default_z_point(c)), 4.0, 1e-15);
  TorusModel s = s1_model(2, 0.5);
  EXPECT_NEAR(effective_volume(s, default_z_point(s)), kPi * std::sqrt(2.0), 1e-12);
  TubePoint moved = geodesic_flow(s, default_z_point(s), 1.7);
  EXPECT_NEAR(effective_volume(s, moved), kPi * std::sqrt(2.0), 1e-12);
}

TEST(Geometry, QuotientVolume) {
  // Oracle: tests/oracles/arithmetic_oracle.py
  EXPECT_NEAR(quotient_volume(s1_model(2, 1.0)), 17.771531752633465, 1e-11);
  double a = quotient_volume(s1_model(3, 0.5)), b = quotient_volume(s1_model(3, 1.0));
  EXPECT_NEAR(a, 175.39798799989053, 1e-10);
  EXPECT_NEAR(b / a, 2.0, 1e-14);
  EXPECT_GT(a, 0.0);
}
