// SPDX-License-Identifier: Apache-2.0
#include "tubelab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "tubelab/errors.hpp"
#include "tubelab/fit.hpp"
#include "tubelab/parallel.hpp"
#include "tubelab/predictions.hpp"
#include "tubelab/spectra.hpp"

namespace tubelab {

namespace {

Json spectral_normalization(const TorusModel& model) {
  Json j;
  j["eigenfunction_normalization"] = "(2 pi)^(-d/2) exp(i k.x)";
  j["volume_form"] = "tau^(d-1) dx d(omega) on T^d x S^(d-1)";
  j["fourier_convention"] = "chi_hat(s) = (2 pi)^(-1/2) int exp(-i s t) chi(t) dt";
  j["tube_volume"] = tube_volume(model);
  j["kernel_isa"] = to_string(default_isa());
  return j;
}

// One evaluator per lambda, built in parallel; each sums single-threaded.
std::vector<std::unique_ptr<KernelEvaluator>> build_evaluators(const TorusModel& model, const Cutoff& cutoff,
                                                               const Isotype& iso, const std::vector<double>& lambdas,
                                                               const TruncationPolicy& policy) {
  std::vector<std::unique_ptr<KernelEvaluator>> ev(lambdas.size());
  parallel_for(lambdas.size(), worker_count(), [&](std::size_t i) {
    ev[i] = std::make_unique<KernelEvaluator>(model, cutoff, iso, lambdas[i], policy, default_isa(), 1);
  });
  return ev;
}

Vec random_ball(int m, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec v(m);
  for (int i = 0; i < m; ++i) v(i) = g(rng);
  return v * (radius * std::pow(u(rng), 1.0 / m) / v.norm());
}

void add_monotone(Report& r, const std::string& name, const std::vector<double>& residuals) {
  r.criterion(name, residuals.empty() ? 0.0 : residuals.back(), 0.0, "|ratio - 1| strictly decreasing along the ladder",
              strictly_decreasing(residuals));
}

}  // namespace

TubePoint off_locus_point(const TorusModel& model, const TubePoint& base, double distance) {
  if (model.action().kind() != ActionKind::subtorus) throw DomainError("off_locus_point: needs a subtorus action");
  Vec phat = base.p / base.p.norm();
  Vec g = model.action().generator_matrix().col(0);
  g -= phat.dot(g) * phat;
  g /= g.norm();
  const double phi = std::sqrt(2.0) * distance / model.tau();
  return model.point_along(base.x, std::cos(phi) * phat + std::sin(phi) * g);
}

// ---------------------------------------------------------------------------

Report run_kernel(const KernelConfig& cfg) {
  Report r;
  r.experiment = "kernel";
  r.config = Json{{"kernel", to_json(cfg)}};
  TorusModel model = build_model(cfg.spectral.model);
  Cutoff cutoff(cfg.spectral.cutoff);
  Isotype iso = build_isotype(model, cfg.spectral.nu);
  r.normalization = spectral_normalization(model);
  const int d = model.d();

  std::vector<std::string> cols{"lambda"};
  for (int j = 0; j < d; ++j) cols.push_back("x" + std::to_string(j + 1));
  for (int j = 0; j < d; ++j) cols.push_back("p" + std::to_string(j + 1));
  for (const char* c : {"re", "im", "n_modes", "trunc_bound"}) cols.push_back(c);
  Table& t = r.table("kernel", cols);

  std::vector<std::vector<double>> rows(cfg.queries.size());
  parallel_for(cfg.queries.size(), worker_count(), [&](std::size_t i) {
    const KernelQuery& q = cfg.queries[i];
    TubePoint pt = model.point(Eigen::Map<const Vec>(q.x.data(), d), Eigen::Map<const Vec>(q.p.data(), d));
    KernelValue v = KernelEvaluator(model, cutoff, iso, q.lambda, cfg.spectral.truncation, default_isa(), 1)(pt, pt);
    std::vector<double> row{q.lambda};
    for (int j = 0; j < d; ++j) row.push_back(q.x[j]);
    for (int j = 0; j < d; ++j) row.push_back(q.p[j]);
    row.insert(row.end(), {v.value.real(), v.value.imag(), double(v.n_modes), v.trunc_bound});
    rows[i] = std::move(row);
  });
  for (auto& row : rows) t.add(std::move(row));
  r.notes.push_back("kernel queries evaluate P(x, x) at the diagonal point (x, p)");
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void scaling_case(Report& r, const ScalingCase& c, std::uint64_t seed, std::size_t case_index) {
  const std::string id = c.id;
  TorusModel model = build_model(c.spectral.model);
  Cutoff cutoff(c.spectral.cutoff);
  Isotype iso = build_isotype(model, c.spectral.nu);
  const bool needs_z = c.diagonal || c.theta || c.horizontal || c.transverse;
  TubePoint base = build_point(model, c.point, needs_z);
  const std::vector<double>& lams = c.lambdas;
  const std::size_t top = static_cast<std::size_t>(std::max_element(lams.begin(), lams.end()) - lams.begin());
  const double tau = model.tau();
  const int n2 = 2 * (model.d() - 1);
  r.normalization[id] = spectral_normalization(model);

  std::vector<std::unique_ptr<KernelEvaluator>> ev;
  if (needs_z) ev = build_evaluators(model, cutoff, iso, lams, c.spectral.truncation);
  const Frame frame = needs_z ? nhlc_frame(model, base, true) : Frame{};
  const SplitDims dims(model.d(), iso.is_all() ? 0 : model.d_g());
  if (needs_z) {
    r.normalization[id]["group_factor"] = group_factor(model, iso, base);
    r.normalization[id]["chi_at_0"] = cutoff.chi(0.0);
  }

  if (c.diagonal) {
    Table& t = r.table(id + "_diagonal", {"lambda", "re", "im", "abs", "predicted", "ratio", "n_modes", "trunc_bound"});
    std::vector<double> resid;
    for (std::size_t i = 0; i < lams.size(); ++i) {
      KernelValue v = (*ev[i])(base, base);
      Prediction p = predict_diag_P(model, cutoff, iso, base, lams[i]);
      double ratio = std::abs(v.value) / p.modulus();
      resid.push_back(std::abs(ratio - 1.0));
      t.add({lams[i], v.value.real(), v.value.imag(), std::abs(v.value), p.modulus(), ratio, double(v.n_modes),
             v.trunc_bound});
    }
    const double rtop = resid[top];
    r.criterion(id + "/diagonal_ratio", rtop, c.diagonal->ratio_tol, "|ratio - 1| at the top lambda <= threshold",
                rtop <= c.diagonal->ratio_tol);
    add_monotone(r, id + "/diagonal_monotone", resid);
    LinearFit f = fit_loglog(lams, resid);
    r.fit(id + "/diagonal_residual_order", f.slope, f.slope_se, -0.5);
    r.criterion(id + "/diagonal_residual_order", f.slope, c.diagonal->order_max,
                "order_min <= fitted order of |ratio - 1| <= order_max (order_min = " +
                    format_double(c.diagonal->order_min) + ")",
                f.slope >= c.diagonal->order_min && f.slope <= c.diagonal->order_max);
  }

  if (c.theta) {
    const double lam = lams[top];
    const double span = c.theta->periods * 2.0 * kPi * tau / std::sqrt(lam);
    Table& t = r.table(id + "_theta", {"lambda", "theta", "re", "im", "abs", "trunc_bound"});
    std::vector<double> th(c.theta->samples), re(c.theta->samples);
    std::vector<KernelValue> vals(c.theta->samples);
    parallel_for(th.size(), worker_count(), [&](std::size_t i) {
      th[i] = span * static_cast<double>(i) / (c.theta->samples - 1);
      TubePoint x1 = displace(model, frame, th[i] / std::sqrt(lam), Vec::Zero(n2));
      vals[i] = (*ev[top])(x1, base);
    });
    for (std::size_t i = 0; i < th.size(); ++i) {
      re[i] = vals[i].value.real();
      t.add({lam, th[i], re[i], vals[i].value.imag(), std::abs(vals[i].value), vals[i].trunc_bound});
    }
    const double freq = zero_crossing_frequency(th, re);
    const double target = std::sqrt(lam) / tau;
    r.fit(id + "/theta_frequency", freq, 0.0, target);
    const double rel = std::abs(freq / target - 1.0);
    r.criterion(id + "/theta_frequency", rel, c.theta->freq_tol, "|fitted / (sqrt(lambda) / tau) - 1| <= threshold",
                rel <= c.theta->freq_tol);
  }

  if (c.horizontal) {
    Table& t = r.table(id + "_horizontal", {"lambda", "abs", "predicted", "ratio", "n_modes", "trunc_bound"});
    Vec h1 = Eigen::Map<const Vec>(c.horizontal->v1.data(), c.horizontal->v1.size());
    Vec h2 = Eigen::Map<const Vec>(c.horizontal->v2.data(), c.horizontal->v2.size());
    Displacement d1{0.0, dims.embed(Vec::Zero(dims.d_g), Vec::Zero(dims.d_g), h1)};
    Displacement d2{0.0, dims.embed(Vec::Zero(dims.d_g), Vec::Zero(dims.d_g), h2)};
    double rtop = 0;
    for (std::size_t i = 0; i < lams.size(); ++i) {
      const double s = 1.0 / std::sqrt(lams[i]);
      KernelValue v = (*ev[i])(displace(model, frame, 0.0, d1.v * s), displace(model, frame, 0.0, d2.v * s));
      Prediction p = predict_gaussian_decay(model, cutoff, iso, base, d1, d2, lams[i], c.window);
      double ratio = std::abs(v.value) / p.modulus();
      if (i == top) rtop = std::abs(ratio - 1.0);
      t.add({lams[i], std::abs(v.value), p.modulus(), ratio, double(v.n_modes), v.trunc_bound});
    }
    r.criterion(id + "/horizontal_ratio", rtop, c.horizontal->ratio_tol, "|ratio - 1| at the top lambda <= threshold",
                rtop <= c.horizontal->ratio_tol);
  }

  if (c.transverse) {
    Table& t = r.table(id + "_transverse",
                       {"lambda", "v", "abs", "predicted", "ratio", "log_ratio_to_v0", "n_modes", "trunc_bound"});
    const auto& vals = c.transverse->values;
    std::vector<double> slopes;
    for (std::size_t i = 0; i < lams.size(); ++i) {
      const double s = 1.0 / std::sqrt(lams[i]);
      std::vector<double> x2, y;
      double ref = 0.0;
      for (std::size_t k = 0; k < vals.size(); ++k) {
        Vec full = Vec::Zero(n2);
        full(dims.t_index(0)) = vals[k];
        Displacement dd{0.0, full};
        TubePoint pt = displace(model, frame, 0.0, full * s);
        KernelValue v = (*ev[i])(pt, pt);
        Prediction p = predict_gaussian_decay(model, cutoff, iso, base, dd, dd, lams[i], c.window);
        const double a = std::abs(v.value);
        if (k == 0) ref = a;
        const double lr = std::log(a / ref);
        x2.push_back(vals[k] * vals[k]);
        y.push_back(lr);
        t.add({lams[i], vals[k], a, p.modulus(), a / p.modulus(), lr, double(v.n_modes), v.trunc_bound});
      }
      slopes.push_back(fit_line(x2, y).slope);
    }
    const double target = -2.0 / tau;
    Table& ts = r.table(id + "_transverse_slope", {"lambda", "slope", "target"});
    for (std::size_t i = 0; i < lams.size(); ++i) ts.add({lams[i], slopes[i], target});
    r.fit(id + "/transverse_slope", slopes[top], 0.0, target);
    const double rel = std::abs(slopes[top] / target - 1.0);
    r.criterion(id + "/transverse_slope", rel, c.transverse->slope_tol,
                "|slope / (-2 / tau) - 1| at the top lambda <= threshold", rel <= c.transverse->slope_tol);
  }

  if (c.near_graph) {
    const NearGraphBlock& ng = *c.near_graph;
    std::vector<std::unique_ptr<KernelEvaluator>> evf =
        build_evaluators(model, cutoff, Isotype::all(), lams, c.spectral.truncation);
    const TubePoint x1 = geodesic_flow(model, base, ng.t1);
    const Frame f1 = nhlc_frame(model, x1, false);
    const Frame f2 = nhlc_frame(model, base, false);
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (case_index + 1)));
    std::vector<std::pair<Vec, Vec>> pairs;
    for (int k = 0; k < ng.pairs; ++k) {
      Vec a = random_ball(n2, ng.radius, rng);
      Vec b = random_ball(n2, ng.radius, rng);
      pairs.emplace_back(a, b);
    }
    std::vector<std::string> cols{"lambda", "pair"};
    for (int j = 0; j < n2; ++j) cols.push_back("v1_" + std::to_string(j + 1));
    for (int j = 0; j < n2; ++j) cols.push_back("v2_" + std::to_string(j + 1));
    for (const char* s : {"abs", "predicted", "ratio", "n_modes", "trunc_bound"}) cols.push_back(s);
    Table& t = r.table(id + "_near_graph", cols);
    double worst_top = 0.0;
    for (std::size_t i = 0; i < lams.size(); ++i) {
      const double s = 1.0 / std::sqrt(lams[i]);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        Displacement d1{0.0, pairs[k].first}, d2{0.0, pairs[k].second};
        KernelValue v =
            (*evf[i])(displace(model, f1, 0.0, d1.v * s), displace(model, f2, 0.0, d2.v * s));
        Prediction p = predict_near_graph(model, cutoff, base, ng.t1, lams[i], d1, d2, c.window);
        const double ratio = std::abs(v.value) / p.modulus();
        if (i == top) worst_top = std::max(worst_top, std::abs(ratio - 1.0));
        std::vector<double> row{lams[i], double(k)};
        for (int j = 0; j < n2; ++j) row.push_back(d1.v(j));
        for (int j = 0; j < n2; ++j) row.push_back(d2.v(j));
        row.insert(row.end(), {std::abs(v.value), p.modulus(), ratio, double(v.n_modes), v.trunc_bound});
        t.add(std::move(row));
      }
    }
    r.criterion(id + "/near_graph_ratio", worst_top, ng.ratio_tol,
                "max over pairs of |ratio - 1| at the top lambda <= threshold", worst_top <= ng.ratio_tol);
  }
}

}  // namespace

Report run_scaling(const ScalingConfig& cfg, std::uint64_t seed) {
  Report r;
  r.experiment = "scaling";
  r.config = Json{{"seed", seed}, {"scaling", to_json(cfg)}};
  for (std::size_t i = 0; i < cfg.cases.size(); ++i) scaling_case(r, cfg.cases[i], seed, i);
  r.notes.push_back("comparisons are on moduli; displacements are in rescaled frame units (actual = value / sqrt(lambda))");
  return r;
}

// ---------------------------------------------------------------------------

Report run_rapid_decay(const RapidDecayConfig& cfg) {
  Report r;
  r.experiment = "rapid-decay";
  r.config = Json{{"rapid_decay", to_json(cfg)}};
  TorusModel model = build_model(cfg.spectral.model);
  Cutoff cutoff(cfg.spectral.cutoff);
  Isotype iso = build_isotype(model, cfg.spectral.nu);
  TubePoint base = build_point(model, cfg.point, true);
  r.normalization = spectral_normalization(model);
  const auto& lams = cfg.lambdas;
  auto ev = build_evaluators(model, cutoff, iso, lams, cfg.spectral.truncation);

  Table& t = r.table("points", {"lambda", "distance_constant", "z_distance", "orbit_hits", "re", "im", "abs",
                                "n_modes", "trunc_bound"});
  std::vector<double> consts{0.0};
  consts.insert(consts.end(), cfg.distance_constants.begin(), cfg.distance_constants.end());
  std::map<double, std::vector<double>> series;
  double min_resolution = INFINITY;
  for (std::size_t i = 0; i < lams.size(); ++i) {
    for (double cst : consts) {
      const double dist = cst * std::pow(lams[i], cfg.eps_prime - 0.5);
      TubePoint pt = cst == 0.0 ? base : off_locus_point(model, base, dist);
      const double zd = z_locus_distance(model, pt);
      const bool on_z = zd <= 1e-9;
      const double hits =
          on_z ? double(orbit_intersection(model, pt, pt, cutoff.support()).size()) : 0.0;
      KernelValue v = (*ev[i])(pt, pt);
      series[cst].push_back(std::abs(v.value));
      if (cst > 0.0) min_resolution = std::min(min_resolution, std::abs(v.value) / v.trunc_bound);
      t.add({lams[i], cst, zd, hits, v.value.real(), v.value.imag(), std::abs(v.value), double(v.n_modes),
             v.trunc_bound});
    }
  }
  Table& tf = r.table("orders", {"distance_constant", "order", "std_error"});
  std::vector<double> orders;
  for (double cst : consts) {
    LinearFit f = fit_loglog(lams, series[cst]);
    tf.add({cst, f.slope, f.slope_se});
    r.fit("order_C=" + format_double(cst), f.slope, f.slope_se, cst == 0.0 ? 0.0 : -INFINITY);
    if (cst > 0.0) orders.push_back(f.slope);
  }
  const double on_order = fit_loglog(lams, series[0.0]).slope;
  const double off_order = fit_loglog(lams, series[cfg.criterion_constant]).slope;
  r.criterion("off_locus_order", off_order, cfg.off_order_max, "fitted order at the criterion constant <= threshold",
              off_order <= cfg.off_order_max);
  r.criterion("on_locus_order", on_order, cfg.on_order_min, "fitted order of the on-locus control >= threshold",
              on_order >= cfg.on_order_min);
  std::vector<std::pair<double, double>> by_c;
  for (std::size_t k = 0; k < cfg.distance_constants.size(); ++k) by_c.emplace_back(cfg.distance_constants[k], orders[k]);
  std::sort(by_c.begin(), by_c.end());
  std::vector<double> sorted_orders;
  for (auto& [cst, o] : by_c) sorted_orders.push_back(o);
  r.criterion("order_trend", sorted_orders.back(), 0.0, "fitted order strictly decreasing as C grows",
              strictly_decreasing(sorted_orders));
  r.criterion("resolved_above_truncation", min_resolution, 10.0, "min |P| / trunc_bound off the locus >= threshold",
              min_resolution >= 10.0);
  r.notes.push_back("off-locus points keep x and rotate p towards the first generator; distances use kappa-tilde");
  return r;
}

// ---------------------------------------------------------------------------

Report run_weyl(const WeylConfig& cfg) {
  Report r;
  r.experiment = "weyl";
  r.config = Json{{"weyl", to_json(cfg)}};
  TorusModel model = build_model(cfg.model);
  Isotype iso = build_isotype(model, std::optional<std::vector<long>>(cfg.nu));
  const auto& lams = cfg.lambdas;
  std::vector<double> num = weyl_sum_ladder(model, iso, lams, cfg.max_modes);
  Table& t = r.table("weyl", {"lambda", "numeric", "predicted", "ratio", "ratio_kappa_tilde_volume", "geodesic_formula"});
  double ratio_top = 0;
  const std::size_t top = static_cast<std::size_t>(std::max_element(lams.begin(), lams.end()) - lams.begin());
  for (std::size_t i = 0; i < lams.size(); ++i) {
    const double pred = weyl_poisson_prediction(model, lams[i]);
    const double pred_t = weyl_poisson_prediction(model, lams[i], Metric::kappa_tilde);
    const double geo = weyl_geodesic_prediction(model, lams[i]);
    if (i == top) ratio_top = num[i] / pred;
    t.add({lams[i], num[i], pred, num[i] / pred, num[i] / pred_t, geo});
  }
  LinearFit f = fit_loglog(lams, num);
  const double target = weyl_poisson_exponent(model);
  r.fit("exponent", f.slope, f.slope_se, target);
  r.fit("coefficient_ratio", ratio_top, 0.0, 1.0);
  r.criterion("exponent", std::abs(f.slope - target), cfg.exponent_tol, "|fitted - ((d+1)/2 - d_G)| <= threshold",
              std::abs(f.slope - target) <= cfg.exponent_tol);
  r.criterion("coefficient_ratio", std::abs(ratio_top - 1.0), cfg.coefficient_tol,
              "|numeric / predicted - 1| at the top lambda <= threshold",
              std::abs(ratio_top - 1.0) <= cfg.coefficient_tol);
  r.normalization = spectral_normalization(model);
  r.normalization["quotient_volume_euclidean"] = quotient_volume(model, Metric::kappa_hat);
  r.normalization["quotient_volume_kappa_tilde"] = quotient_volume(model, Metric::kappa_tilde);
  r.normalization["orbit_volume_kappa_tilde"] = effective_volume(model, default_z_point(model));
  r.normalization["volume_constant"] = std::pow(model.tau(), model.d() - 1);
  r.normalization["lie_algebra_measure"] = "Lebesgue measure in the coordinates of the listed generators";
  r.notes.push_back("predicted uses vol(Z^tau) with the Euclidean density over the kappa-tilde orbit volume");
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Unit vectors on a grid of S^{d-1}, d = 2 or 3.
std::vector<Vec> sphere_grid(int d, int n) {
  std::vector<Vec> pts;
  if (d == 2) {
    for (int i = 0; i < n; ++i) {
      double a = 2.0 * kPi * i / n;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      pts.push_back(v);
    }
  } else {
    const int nt = std::max(2, n / 2);
    for (int i = 0; i <= nt; ++i) {
      double th = kPi * i / nt;
      int nphi = (i == 0 || i == nt) ? 1 : n;
      for (int j = 0; j < nphi; ++j) {
        double ph = 2.0 * kPi * j / n;
        Vec v(3);
        v << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
        pts.push_back(v);
      }
    }
  }
  return pts;
}

}  // namespace

Report run_husimi(const HusimiConfig& cfg) {
  Report r;
  r.experiment = "husimi";
  r.config = Json{{"husimi", to_json(cfg)}};
  for (const HusimiCase& h : cfg.cases) {
    TorusModel model = build_model(h.model);
    const int d = model.d();
    const double tau = model.tau();
    std::vector<Vec> grid = sphere_grid(d, h.grid_points);
    Table& t = r.table(h.id, {"multiple", "mu", "grid_sup", "exact_sup", "q", "argmax_angle_to_minus_k"});
    std::vector<double> mus, sups, qs;
    for (int m : h.multiples) {
      Mode k;
      k.d = d;
      for (int j = 0; j < d; ++j) k.k[j] = m * h.direction[j];
      Vec kv(d);
      for (int j = 0; j < d; ++j) kv(j) = k.k[j];
      k.norm2 = static_cast<std::int64_t>(kv.squaredNorm());
      k.mu = kv.norm();
      const double q = complexified_norm_scaled(model, k);
      // |phi_k|^2 / ||phi_k||^2 = (2 pi)^{-d} exp(-2 k.p - 2 tau mu) / q.
      double best = -INFINITY;
      Vec arg;
      for (const Vec& w : grid) {
        double e = -2.0 * tau * kv.dot(w) - 2.0 * tau * k.mu;
        if (e > best) {
          best = e;
          arg = w;
        }
      }
      const double norm = std::pow(2.0 * kPi, -d) / q;
      const double sup = norm * std::exp(best);
      const double angle = std::acos(std::clamp(-arg.dot(kv) / k.mu, -1.0, 1.0));
      t.add({double(m), k.mu, sup, norm, q, angle});
      mus.push_back(k.mu);
      sups.push_back(sup);
      qs.push_back(q);
    }
    const double target = d - 1 - 0.5 * model.d_g();
    LinearFit fs = fit_loglog(mus, sups);
    LinearFit fq = fit_loglog(mus, qs);
    r.fit(h.id + "/sup_exponent", fs.slope, fs.slope_se, target);
    r.fit(h.id + "/norm_exponent", fq.slope, fq.slope_se, -0.5 * (d - 1));
    r.criterion(h.id + "/sup_exponent", std::abs(fs.slope - target), h.exponent_tol,
                "|fitted - (d - 1 - d_G/2)| <= threshold", std::abs(fs.slope - target) <= h.exponent_tol);
    r.criterion(h.id + "/norm_exponent", std::abs(fq.slope + 0.5 * (d - 1)), h.norm_exponent_tol,
                "|fitted - (-(d-1)/2)| <= threshold", std::abs(fq.slope + 0.5 * (d - 1)) <= h.norm_exponent_tol);
  }
  r.notes.push_back("single modes k = m * direction; the supremum is over a grid of p (|phi_k|^2 does not depend on x)");
  return r;
}

// ---------------------------------------------------------------------------

Report run_qsymbol(const QsymbolConfig& cfg) {
  Report r;
  r.experiment = "qsymbol";
  r.config = Json{{"qsymbol", to_json(cfg)}};
  TorusModel model = build_model(cfg.model);
  const int d = model.d();
  const double tau = model.tau();
  Table& t = r.table("qsymbol", {"d", "k", "q", "normalized", "quadrature_rel_diff"});
  std::vector<double> resid;
  for (double k : cfg.k_values) {
    const double q = q_tau_profile(model, k);
    const double nr = q * std::pow(k / (kPi * tau), 0.5 * (d - 1));
    const double alt = q_tau_quadrature(d, tau, k);
    resid.push_back(std::abs(nr - 1.0));
    t.add({double(d), k, q, nr, std::abs(alt - q) / q});
  }
  const double last = resid.back();
  r.criterion("normalized_at_top", last, cfg.tol, "|normalized - 1| at the last k <= threshold", last <= cfg.tol);
  add_monotone(r, "monotone", resid);
  for (int dd : cfg.extra_dims) {
    TorusModel m2(dd, tau, GroupAction::trivial(dd));
    const double q = q_tau_profile(m2, cfg.extra_k);
    const double nr = q * std::pow(cfg.extra_k / (kPi * tau), 0.5 * (dd - 1));
    t.add({double(dd), cfg.extra_k, q, nr, 0.0});
    r.criterion("normalized_d" + std::to_string(dd), std::abs(nr - 1.0), cfg.extra_tol,
                "|normalized - 1| <= threshold", std::abs(nr - 1.0) <= cfg.extra_tol);
  }
  r.notes.push_back("normalized = q(|k|) (|k| / pi tau)^((d-1)/2) with q the sphere integral itself");
  return r;
}

}  // namespace tubelab
