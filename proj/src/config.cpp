// SPDX-License-Identifier: Apache-2.0
#include "tubelab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError((path.empty() ? std::string("<root>") : path) + ": " + what);
}

void read(const Json& j, const std::string& path, ActionConfig& c);
void read(const Json& j, const std::string& path, ModelConfig& c);
void read(const Json& j, const std::string& path, PointConfig& c);
void read(const Json& j, const std::string& path, CutoffSpec& c);
void read(const Json& j, const std::string& path, TruncationPolicy& c);
void read(const Json& j, const std::string& path, ValidityWindow& c);
void read(const Json& j, const std::string& path, SpectralConfig& c);
void read(const Json& j, const std::string& path, DiagonalBlock& c);
void read(const Json& j, const std::string& path, ThetaBlock& c);
void read(const Json& j, const std::string& path, HorizontalBlock& c);
void read(const Json& j, const std::string& path, TransverseBlock& c);
void read(const Json& j, const std::string& path, NearGraphBlock& c);
void read(const Json& j, const std::string& path, ScalingCase& c);
void read(const Json& j, const std::string& path, ScalingConfig& c);
void read(const Json& j, const std::string& path, RapidDecayConfig& c);
void read(const Json& j, const std::string& path, WeylConfig& c);
void read(const Json& j, const std::string& path, HusimiCase& c);
void read(const Json& j, const std::string& path, HusimiConfig& c);
void read(const Json& j, const std::string& path, QsymbolConfig& c);
void read(const Json& j, const std::string& path, SymplecticCheckConfig& c);
void read(const Json& j, const std::string& path, GaussianCheckConfig& c);
void read(const Json& j, const std::string& path, KernelQuery& c);
void read(const Json& j, const std::string& path, KernelConfig& c);
Json to_json(const ActionConfig& c);
Json to_json(const PointConfig& c);
Json to_json(const CutoffSpec& c);
Json to_json(const TruncationPolicy& c);
Json to_json(const ValidityWindow& c);
Json to_json(const DiagonalBlock& c);
Json to_json(const ThetaBlock& c);
Json to_json(const HorizontalBlock& c);
Json to_json(const TransverseBlock& c);
Json to_json(const NearGraphBlock& c);
Json to_json(const ScalingCase& c);
Json to_json(const HusimiCase& c);
Json to_json(const KernelQuery& c);

void read(const Json& j, const std::string& path, double& out) {
  if (!j.is_number()) fail(path, "expected a number");
  out = j.get<double>();
  if (!std::isfinite(out)) fail(path, "expected a finite number");
}

template <class I>
void read_integer(const Json& j, const std::string& path, I& out) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  if (j.is_number_unsigned()) {
    auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<I>::max())) fail(path, "integer out of range");
    out = static_cast<I>(v);
  } else {
    auto v = j.get<std::int64_t>();
    if (v < static_cast<std::int64_t>(std::numeric_limits<I>::min()) ||
        (v > 0 && static_cast<std::uint64_t>(v) > static_cast<std::uint64_t>(std::numeric_limits<I>::max()))) {
      fail(path, "integer out of range");
    }
    out = static_cast<I>(v);
  }
}

void read(const Json& j, const std::string& path, int& out) { read_integer(j, path, out); }
void read(const Json& j, const std::string& path, long& out) { read_integer(j, path, out); }
void read(const Json& j, const std::string& path, unsigned long& out) { read_integer(j, path, out); }

void read(const Json& j, const std::string& path, std::string& out) {
  if (!j.is_string()) fail(path, "expected a string");
  out = j.get<std::string>();
}

template <class T>
void read(const Json& j, const std::string& path, std::vector<T>& out) {
  if (!j.is_array()) fail(path, "expected an array");
  out.clear();
  for (size_t i = 0; i < j.size(); ++i) {
    T v{};
    read(j[i], path + "/" + std::to_string(i), v);
    out.push_back(std::move(v));
  }
}

// Tracks consumed keys so that leftovers can be reported.
class Obj {
 public:
  Obj(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    auto it = j_.find(key);
    if (it == j_.end()) return;
    used_.insert(key);
    read(*it, path_ + "/" + key, out);
  }

  template <class T>
  void get(const char* key, std::optional<T>& out) {
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) {
      if (it != j_.end()) used_.insert(key);
      out.reset();
      return;
    }
    used_.insert(key);
    T v{};
    read(*it, path_ + "/" + key, v);
    out = std::move(v);
  }

  template <class T>
  void require(const char* key, T& out) {
    if (!j_.contains(key)) fail(path_, std::string("missing required key '") + key + "'");
    get(key, out);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) fail(path_, "unknown key '" + it.key() + "'");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void read(const Json& j, const std::string& path, ActionConfig& c) {
  Obj o(j, path);
  o.get("kind", c.kind);
  o.get("generators", c.generators);
  o.get("modulus", c.modulus);
  o.finish();
}

void read(const Json& j, const std::string& path, ModelConfig& c) {
  Obj o(j, path);
  o.get("d", c.d);
  o.get("tau", c.tau);
  o.get("action", c.action);
  o.get("injectivity_threshold", c.injectivity_threshold);
  o.finish();
}

void read(const Json& j, const std::string& path, PointConfig& c) {
  Obj o(j, path);
  o.require("x", c.x);
  o.require("p_direction", c.p_direction);
  o.finish();
}

void read(const Json& j, const std::string& path, CutoffSpec& c) {
  Obj o(j, path);
  std::string family = to_string(c.family);
  o.get("family", family);
  try {
    c.family = cutoff_family_from_string(family);
  } catch (const ConfigError& e) {
    fail(path + "/family", e.what());
  }
  o.get("epsilon", c.epsilon);
  o.get("t0", c.t0);
  o.get("grid_step", c.grid_step);
  o.get("tail_floor", c.tail_floor);
  o.finish();
}

void read(const Json& j, const std::string& path, TruncationPolicy& c) {
  Obj o(j, path);
  o.get("trunc_tol", c.trunc_tol);
  o.get("max_modes", c.max_modes);
  o.finish();
}

void read(const Json& j, const std::string& path, ValidityWindow& c) {
  Obj o(j, path);
  o.get("c", c.c);
  o.get("eps_prime", c.eps_prime);
  o.finish();
}

void read(const Json& j, const std::string& path, SpectralConfig& c) {
  Obj o(j, path);
  o.get("model", c.model);
  o.get("cutoff", c.cutoff);
  o.get("nu", c.nu);
  o.get("truncation", c.truncation);
  o.finish();
}

void read(const Json& j, const std::string& path, DiagonalBlock& c) {
  Obj o(j, path);
  o.get("ratio_tol", c.ratio_tol);
  o.get("order_min", c.order_min);
  o.get("order_max", c.order_max);
  o.finish();
}

void read(const Json& j, const std::string& path, ThetaBlock& c) {
  Obj o(j, path);
  o.get("samples", c.samples);
  o.get("periods", c.periods);
  o.get("freq_tol", c.freq_tol);
  o.finish();
}

void read(const Json& j, const std::string& path, HorizontalBlock& c) {
  Obj o(j, path);
  o.require("v1", c.v1);
  o.require("v2", c.v2);
  o.get("ratio_tol", c.ratio_tol);
  o.finish();
}

void read(const Json& j, const std::string& path, TransverseBlock& c) {
  Obj o(j, path);
  o.get("values", c.values);
  o.get("slope_tol", c.slope_tol);
  o.finish();
}

void read(const Json& j, const std::string& path, NearGraphBlock& c) {
  Obj o(j, path);
  o.get("t1", c.t1);
  o.get("pairs", c.pairs);
  o.get("radius", c.radius);
  o.get("ratio_tol", c.ratio_tol);
  o.finish();
}

void read(const Json& j, const std::string& path, ScalingCase& c) {
  Obj o(j, path);
  o.require("id", c.id);
  o.get("spectral", c.spectral);
  o.get("lambdas", c.lambdas);
  o.get("point", c.point);
  o.get("window", c.window);
  o.get("diagonal", c.diagonal);
  o.get("theta", c.theta);
  o.get("horizontal", c.horizontal);
  o.get("transverse", c.transverse);
  o.get("near_graph", c.near_graph);
  o.finish();
}

void read(const Json& j, const std::string& path, ScalingConfig& c) {
  Obj o(j, path);
  o.require("cases", c.cases);
  o.finish();
}

void read(const Json& j, const std::string& path, RapidDecayConfig& c) {
  Obj o(j, path);
  o.get("spectral", c.spectral);
  o.get("lambdas", c.lambdas);
  o.get("point", c.point);
  o.get("eps_prime", c.eps_prime);
  o.get("distance_constants", c.distance_constants);
  o.get("criterion_constant", c.criterion_constant);
  o.get("off_order_max", c.off_order_max);
  o.get("on_order_min", c.on_order_min);
  o.finish();
}

void read(const Json& j, const std::string& path, WeylConfig& c) {
  Obj o(j, path);
  o.get("model", c.model);
  o.get("nu", c.nu);
  o.get("lambdas", c.lambdas);
  o.get("exponent_tol", c.exponent_tol);
  o.get("coefficient_tol", c.coefficient_tol);
  o.get("max_modes", c.max_modes);
  o.finish();
}

void read(const Json& j, const std::string& path, HusimiCase& c) {
  Obj o(j, path);
  o.require("id", c.id);
  o.get("model", c.model);
  o.get("nu", c.nu);
  o.require("direction", c.direction);
  o.get("multiples", c.multiples);
  o.get("grid_points", c.grid_points);
  o.get("exponent_tol", c.exponent_tol);
  o.get("norm_exponent_tol", c.norm_exponent_tol);
  o.finish();
}

void read(const Json& j, const std::string& path, HusimiConfig& c) {
  Obj o(j, path);
  o.require("cases", c.cases);
  o.finish();
}

void read(const Json& j, const std::string& path, QsymbolConfig& c) {
  Obj o(j, path);
  o.get("model", c.model);
  o.get("k_values", c.k_values);
  o.get("tol", c.tol);
  o.get("extra_dims", c.extra_dims);
  o.get("extra_k", c.extra_k);
  o.get("extra_tol", c.extra_tol);
  o.finish();
}

void read(const Json& j, const std::string& path, SymplecticCheckConfig& c) {
  Obj o(j, path);
  o.get("samples", c.samples);
  o.get("max_n", c.max_n);
  o.get("vectors", c.vectors);
  o.get("tol", c.tol);
  o.get("identity_tol", c.identity_tol);
  o.get("reproducing_tol", c.reproducing_tol);
  o.get("shear", c.shear);
  o.get("rotation", c.rotation);
  o.get("grid", c.grid);
  o.get("box", c.box);
  o.finish();
}

void read(const Json& j, const std::string& path, GaussianCheckConfig& c) {
  Obj o(j, path);
  o.get("samples", c.samples);
  o.get("max_m", c.max_m);
  o.get("tol", c.tol);
  o.get("achi_dims", c.achi_dims);
  o.get("orthogonal_samples", c.orthogonal_samples);
  o.get("achi_tol", c.achi_tol);
  o.get("achi_shear", c.achi_shear);
  o.get("diag_tol", c.diag_tol);
  o.finish();
}

void read(const Json& j, const std::string& path, KernelQuery& c) {
  Obj o(j, path);
  o.require("lambda", c.lambda);
  o.require("x", c.x);
  o.require("p", c.p);
  o.finish();
}

void read(const Json& j, const std::string& path, KernelConfig& c) {
  Obj o(j, path);
  o.get("spectral", c.spectral);
  o.require("queries", c.queries);
  o.finish();
}

// ---------------------------------------------------------------------------
// Guards

void guard(bool ok, const std::string& path, const std::string& what) {
  if (!ok) fail(path, what);
}

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

void check_positive_list(const std::vector<double>& v, const std::string& path) {
  guard(!v.empty(), path, "must not be empty");
  for (double x : v) guard(x > 0.0, path, "entries must be positive");
}

TorusModel check_model(const ModelConfig& c, const std::string& path) {
  guard(c.d >= 1 && c.d <= kMaxLatticeDim, path + "/d", "must lie in 1..4");
  guard(c.tau > 0.0, path + "/tau", "must be positive");
  guard(c.injectivity_threshold > 0.0 && c.injectivity_threshold <= kPi, path + "/injectivity_threshold",
        "must lie in (0, pi], the injectivity radius of the flat torus");
  return guarded(path, [&] { return build_model(c); });
}

void check_cutoff(const CutoffSpec& c, const TorusModel& model, const std::string& path) {
  guard(c.epsilon > 0.0, path + "/epsilon", "must be positive");
  guard(c.grid_step > 0.0 && c.grid_step <= 0.25, path + "/grid_step", "must lie in (0, 0.25]");
  guard(c.tail_floor > 0.0 && c.tail_floor < 1e-6, path + "/tail_floor", "must lie in (0, 1e-6)");
  const double width = (c.family == CutoffFamily::autocorrelated ? 4.0 : 2.0) * c.epsilon;
  guard(width < model.injectivity_threshold(), path + "/epsilon",
        "support of chi is not small: its length must stay below the injectivity threshold");
}

void check_spectral(const SpectralConfig& c, const std::string& path) {
  TorusModel model = check_model(c.model, path + "/model");
  check_cutoff(c.cutoff, model, path + "/cutoff");
  guard(c.truncation.trunc_tol > 0.0 && c.truncation.trunc_tol < 1.0, path + "/truncation/trunc_tol",
        "must lie in (0, 1)");
  guard(c.truncation.max_modes > 0, path + "/truncation/max_modes", "must be positive");
  guarded(path + "/nu", [&] { return build_isotype(model, c.nu); });
}

void check_window(const ValidityWindow& w, const std::string& path) {
  guard(w.c > 0.0, path + "/c", "must be positive");
  guard(w.eps_prime > 0.0 && w.eps_prime < 1.0 / 6.0, path + "/eps_prime", "must lie in (0, 1/6)");
}

void check_scaling(const ScalingConfig& c, const std::string& path) {
  guard(!c.cases.empty(), path + "/cases", "must not be empty");
  std::set<std::string> ids;
  for (size_t i = 0; i < c.cases.size(); ++i) {
    const ScalingCase& s = c.cases[i];
    const std::string p = path + "/cases/" + std::to_string(i);
    guard(!s.id.empty() && ids.insert(s.id).second, p + "/id", "must be non-empty and unique");
    check_spectral(s.spectral, p + "/spectral");
    check_positive_list(s.lambdas, p + "/lambdas");
    guard(s.spectral.cutoff.t0 == 0.0, p + "/spectral/cutoff/t0", "the scaling laws need chi centered at 0");
    check_window(s.window, p + "/window");
    TorusModel model = build_model(s.spectral.model);
    const bool needs_z = s.diagonal || s.theta || s.horizontal || s.transverse;
    guarded(p + "/point", [&] { return build_point(model, s.point, needs_z); });
    if (s.diagonal) {
      guard(s.lambdas.size() >= 3, p + "/lambdas", "the diagonal block needs at least three lambdas");
      guard(s.diagonal->ratio_tol > 0.0, p + "/diagonal/ratio_tol", "must be positive");
      guard(s.diagonal->order_min < s.diagonal->order_max, p + "/diagonal", "order_min must be below order_max");
    }
    if (s.theta) {
      guard(s.theta->samples >= 16, p + "/theta/samples", "must be at least 16");
      guard(s.theta->periods >= 2.0, p + "/theta/periods", "must be at least 2");
      guard(s.theta->freq_tol > 0.0, p + "/theta/freq_tol", "must be positive");
    }
    if (s.horizontal) {
      const int h2 = 2 * (model.d() - 1 - model.d_g());
      guard(h2 > 0, p + "/horizontal", "the model has no horizontal block");
      guard(static_cast<int>(s.horizontal->v1.size()) == h2 && static_cast<int>(s.horizontal->v2.size()) == h2,
            p + "/horizontal", "v1 and v2 must have length 2(d-1-d_G)");
      guard(s.horizontal->ratio_tol > 0.0, p + "/horizontal/ratio_tol", "must be positive");
    }
    if (s.transverse) {
      guard(model.d_g() >= 1, p + "/transverse", "needs a subtorus action (d_G >= 1)");
      guard(s.transverse->values.size() >= 2, p + "/transverse/values", "needs at least two values");
      guard(s.transverse->slope_tol > 0.0, p + "/transverse/slope_tol", "must be positive");
    }
    if (s.near_graph) {
      guard(!s.spectral.nu.has_value(), p + "/spectral/nu", "the near-graph block uses the full kernel (nu = null)");
      const CutoffSpec& cs = s.spectral.cutoff;
      const double half = (cs.family == CutoffFamily::autocorrelated ? 2.0 : 1.0) * cs.epsilon;
      guard(std::abs(s.near_graph->t1 - cs.t0) < half, p + "/near_graph/t1",
            "must lie inside the support of chi");
      guard(s.near_graph->pairs >= 1, p + "/near_graph/pairs", "must be positive");
      guard(s.near_graph->radius > 0.0, p + "/near_graph/radius", "must be positive");
      guard(s.near_graph->ratio_tol > 0.0, p + "/near_graph/ratio_tol", "must be positive");
    }
  }
}

void check_rapid(const RapidDecayConfig& c, const std::string& path) {
  check_spectral(c.spectral, path + "/spectral");
  check_positive_list(c.lambdas, path + "/lambdas");
  guard(c.lambdas.size() >= 2, path + "/lambdas", "needs at least two lambdas");
  guard(c.eps_prime > 0.0 && c.eps_prime < 0.5, path + "/eps_prime", "must lie in (0, 1/2)");
  check_positive_list(c.distance_constants, path + "/distance_constants");
  bool found = false;
  for (double v : c.distance_constants) found = found || v == c.criterion_constant;
  guard(found, path + "/criterion_constant", "must be one of distance_constants");
  TorusModel model = build_model(c.spectral.model);
  guard(model.d_g() >= 1, path + "/spectral/model/action", "needs a subtorus action");
  guarded(path + "/point", [&] { return build_point(model, c.point, true); });
}

void check_weyl(const WeylConfig& c, const std::string& path) {
  TorusModel model = check_model(c.model, path + "/model");
  guard(model.d() >= 2 * model.d_g(), path + "/model", "hypothesis violated: the Poisson Weyl law needs d >= 2 d_G");
  guard(model.action().kind() != ActionKind::cyclic && stabilizer_order(model) == 1, path + "/model/action",
        "hypothesis violated: the action must be free on Z^tau");
  guarded(path + "/nu", [&] { return build_isotype(model, std::optional<std::vector<long>>(c.nu)); });
  check_positive_list(c.lambdas, path + "/lambdas");
  guard(c.lambdas.size() >= 2, path + "/lambdas", "needs at least two lambdas");
  guard(c.exponent_tol > 0 && c.coefficient_tol > 0, path, "tolerances must be positive");
}

void check_husimi(const HusimiConfig& c, const std::string& path) {
  guard(!c.cases.empty(), path + "/cases", "must not be empty");
  for (size_t i = 0; i < c.cases.size(); ++i) {
    const HusimiCase& h = c.cases[i];
    const std::string p = path + "/cases/" + std::to_string(i);
    TorusModel model = check_model(h.model, p + "/model");
    Isotype iso = guarded(p + "/nu", [&] { return build_isotype(model, h.nu); });
    guard(static_cast<int>(h.direction.size()) == model.d(), p + "/direction", "must have length d");
    guard(h.multiples.size() >= 2, p + "/multiples", "needs at least two entries");
    for (int m : h.multiples) {
      guard(m > 0, p + "/multiples", "entries must be positive");
      std::array<int, kMaxLatticeDim> k{};
      for (int j = 0; j < model.d(); ++j) k[j] = m * h.direction[j];
      guard(iso.contains(k.data(), model.d()), p + "/direction", "every multiple must lie in the isotype");
    }
    guard(h.grid_points >= 8, p + "/grid_points", "must be at least 8");
    guard(model.d() == 2 || model.d() == 3, p + "/model/d", "the sphere grid supports d = 2 or 3");
  }
}

void check_qsymbol(const QsymbolConfig& c, const std::string& path) {
  TorusModel model = check_model(c.model, path + "/model");
  guard(model.d() >= 2, path + "/model/d", "must be at least 2");
  check_positive_list(c.k_values, path + "/k_values");
  for (int d : c.extra_dims) guard(d >= 2 && d <= kMaxLatticeDim, path + "/extra_dims", "entries must lie in 2..4");
  guard(c.extra_k > 0.0, path + "/extra_k", "must be positive");
}

void check_kernel(const KernelConfig& c, const std::string& path) {
  check_spectral(c.spectral, path + "/spectral");
  TorusModel model = build_model(c.spectral.model);
  guard(!c.queries.empty(), path + "/queries", "must not be empty");
  for (size_t i = 0; i < c.queries.size(); ++i) {
    const KernelQuery& q = c.queries[i];
    const std::string p = path + "/queries/" + std::to_string(i);
    guard(q.lambda >= 0.0, p + "/lambda", "must be non-negative");
    guard(static_cast<int>(q.x.size()) == model.d() && static_cast<int>(q.p.size()) == model.d(), p,
          "x and p must have length d");
    Vec x = Eigen::Map<const Vec>(q.x.data(), model.d());
    Vec pv = Eigen::Map<const Vec>(q.p.data(), model.d());
    guarded(p + "/p", [&] { return model.point(x, pv); });
  }
}

// ---------------------------------------------------------------------------
// Serialization


Json to_json(const ActionConfig& c) {
  Json j;
  j["kind"] = c.kind;
  j["generators"] = c.generators;
  j["modulus"] = c.modulus;
  return j;
}

Json to_json(const PointConfig& c) {
  Json j;
  j["x"] = c.x;
  j["p_direction"] = c.p_direction;
  return j;
}

Json to_json(const CutoffSpec& c) {
  Json j;
  j["family"] = to_string(c.family);
  j["epsilon"] = c.epsilon;
  j["t0"] = c.t0;
  j["grid_step"] = c.grid_step;
  j["tail_floor"] = c.tail_floor;
  return j;
}

Json to_json(const TruncationPolicy& c) {
  Json j;
  j["trunc_tol"] = c.trunc_tol;
  j["max_modes"] = c.max_modes;
  return j;
}

Json to_json(const ValidityWindow& c) {
  Json j;
  j["c"] = c.c;
  j["eps_prime"] = c.eps_prime;
  return j;
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json opt_nu(const std::optional<std::vector<long>>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const DiagonalBlock& c) {
  return Json{{"ratio_tol", c.ratio_tol}, {"order_min", c.order_min}, {"order_max", c.order_max}};
}
Json to_json(const ThetaBlock& c) {
  return Json{{"samples", c.samples}, {"periods", c.periods}, {"freq_tol", c.freq_tol}};
}
Json to_json(const HorizontalBlock& c) {
  return Json{{"v1", c.v1}, {"v2", c.v2}, {"ratio_tol", c.ratio_tol}};
}
Json to_json(const TransverseBlock& c) { return Json{{"values", c.values}, {"slope_tol", c.slope_tol}}; }
Json to_json(const NearGraphBlock& c) {
  return Json{{"t1", c.t1}, {"pairs", c.pairs}, {"radius", c.radius}, {"ratio_tol", c.ratio_tol}};
}

Json to_json(const ScalingCase& c) {
  Json j;
  j["id"] = c.id;
  j["spectral"] = to_json(c.spectral);
  j["lambdas"] = c.lambdas;
  j["point"] = opt(c.point);
  j["window"] = to_json(c.window);
  j["diagonal"] = opt(c.diagonal);
  j["theta"] = opt(c.theta);
  j["horizontal"] = opt(c.horizontal);
  j["transverse"] = opt(c.transverse);
  j["near_graph"] = opt(c.near_graph);
  return j;
}

Json to_json(const HusimiCase& c) {
  Json j;
  j["id"] = c.id;
  j["model"] = to_json(c.model);
  j["nu"] = opt_nu(c.nu);
  j["direction"] = c.direction;
  j["multiples"] = c.multiples;
  j["grid_points"] = c.grid_points;
  j["exponent_tol"] = c.exponent_tol;
  j["norm_exponent_tol"] = c.norm_exponent_tol;
  return j;
}

Json to_json(const KernelQuery& c) { return Json{{"lambda", c.lambda}, {"x", c.x}, {"p", c.p}}; }

}  // namespace

Json to_json(const ModelConfig& c) {
  Json j;
  j["d"] = c.d;
  j["tau"] = c.tau;
  j["action"] = to_json(c.action);
  j["injectivity_threshold"] = c.injectivity_threshold;
  return j;
}

Json to_json(const SpectralConfig& c) {
  Json j;
  j["model"] = to_json(c.model);
  j["cutoff"] = to_json(c.cutoff);
  j["nu"] = opt_nu(c.nu);
  j["truncation"] = to_json(c.truncation);
  return j;
}

Json to_json(const SymplecticCheckConfig& c) {
  return Json{{"samples", c.samples},     {"max_n", c.max_n},
              {"vectors", c.vectors},     {"tol", c.tol},
              {"identity_tol", c.identity_tol}, {"reproducing_tol", c.reproducing_tol},
              {"shear", c.shear},         {"rotation", c.rotation},
              {"grid", c.grid},           {"box", c.box}};
}

Json to_json(const GaussianCheckConfig& c) {
  return Json{{"samples", c.samples},   {"max_m", c.max_m},
              {"tol", c.tol},           {"achi_dims", c.achi_dims},
              {"orthogonal_samples", c.orthogonal_samples}, {"achi_tol", c.achi_tol},
              {"achi_shear", c.achi_shear}, {"diag_tol", c.diag_tol}};
}

Json to_json(const KernelConfig& c) {
  Json q = Json::array();
  for (const auto& k : c.queries) q.push_back(to_json(k));
  return Json{{"spectral", to_json(c.spectral)}, {"queries", q}};
}

Json to_json(const ScalingConfig& c) {
  Json cases = Json::array();
  for (const auto& s : c.cases) cases.push_back(to_json(s));
  return Json{{"cases", cases}};
}

Json to_json(const RapidDecayConfig& c) {
  Json j;
  j["spectral"] = to_json(c.spectral);
  j["lambdas"] = c.lambdas;
  j["point"] = opt(c.point);
  j["eps_prime"] = c.eps_prime;
  j["distance_constants"] = c.distance_constants;
  j["criterion_constant"] = c.criterion_constant;
  j["off_order_max"] = c.off_order_max;
  j["on_order_min"] = c.on_order_min;
  return j;
}

Json to_json(const WeylConfig& c) {
  Json j;
  j["model"] = to_json(c.model);
  j["nu"] = c.nu;
  j["lambdas"] = c.lambdas;
  j["exponent_tol"] = c.exponent_tol;
  j["coefficient_tol"] = c.coefficient_tol;
  j["max_modes"] = c.max_modes;
  return j;
}

Json to_json(const HusimiConfig& c) {
  Json cases = Json::array();
  for (const auto& h : c.cases) cases.push_back(to_json(h));
  return Json{{"cases", cases}};
}

Json to_json(const QsymbolConfig& c) {
  Json j;
  j["model"] = to_json(c.model);
  j["k_values"] = c.k_values;
  j["tol"] = c.tol;
  j["extra_dims"] = c.extra_dims;
  j["extra_k"] = c.extra_k;
  j["extra_tol"] = c.extra_tol;
  return j;
}

Json to_json(const RunConfig& c) {
  Json j;
  j["schema_version"] = c.schema_version;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  if (c.symplectic_check) j["symplectic_check"] = to_json(*c.symplectic_check);
  if (c.gaussian_check) j["gaussian_check"] = to_json(*c.gaussian_check);
  if (c.kernel) j["kernel"] = to_json(*c.kernel);
  if (c.scaling) j["scaling"] = to_json(*c.scaling);
  if (c.rapid_decay) j["rapid_decay"] = to_json(*c.rapid_decay);
  if (c.weyl) j["weyl"] = to_json(*c.weyl);
  if (c.husimi) j["husimi"] = to_json(*c.husimi);
  if (c.qsymbol) j["qsymbol"] = to_json(*c.qsymbol);
  return j;
}

RunConfig parse_config(const Json& j) {
  RunConfig c;
  Obj o(j, "");
  o.require("schema_version", c.schema_version);
  if (c.schema_version != kSchemaVersion) {
    fail("/schema_version", "unsupported schema version " + std::to_string(c.schema_version));
  }
  o.get("seed", c.seed);
  o.get("output_dir", c.output_dir);
  o.get("symplectic_check", c.symplectic_check);
  o.get("gaussian_check", c.gaussian_check);
  o.get("kernel", c.kernel);
  o.get("scaling", c.scaling);
  o.get("rapid_decay", c.rapid_decay);
  o.get("weyl", c.weyl);
  o.get("husimi", c.husimi);
  o.get("qsymbol", c.qsymbol);
  o.finish();

  if (c.symplectic_check) {
    const auto& s = *c.symplectic_check;
    guard(s.samples >= 1 && s.max_n >= 1 && s.vectors >= 1, "/symplectic_check", "counts must be positive");
    guard(s.grid >= 50 && s.box > 0.0, "/symplectic_check", "grid must be at least 50 and box positive");
  }
  if (c.gaussian_check) {
    const auto& g = *c.gaussian_check;
    guard(g.samples >= 1 && g.max_m >= 1 && g.max_m <= 8, "/gaussian_check", "samples >= 1 and 1 <= max_m <= 8");
    for (int d : g.achi_dims) guard(d >= 2 && d <= 6, "/gaussian_check/achi_dims", "entries must lie in 2..6");
  }
  if (c.kernel) check_kernel(*c.kernel, "/kernel");
  if (c.scaling) check_scaling(*c.scaling, "/scaling");
  if (c.rapid_decay) check_rapid(*c.rapid_decay, "/rapid_decay");
  if (c.weyl) check_weyl(*c.weyl, "/weyl");
  if (c.husimi) check_husimi(*c.husimi, "/husimi");
  if (c.qsymbol) check_qsymbol(*c.qsymbol, "/qsymbol");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

void apply_override(Json& doc, const std::string& pointer, const std::string& value) {
  Json::json_pointer ptr;
  try {
    ptr = Json::json_pointer(pointer);
  } catch (const std::exception& e) {
    throw ConfigError("override '" + pointer + "': " + e.what());
  }
  if (ptr.empty()) throw ConfigError("override: the root cannot be replaced");
  if (doc.contains(ptr)) {
    const Json& cur = doc.at(ptr);
    if (cur.is_object() || cur.is_array()) {
      throw ConfigError("override '" + pointer + "': only scalar fields can be overridden");
    }
  } else if (!doc.contains(ptr.parent_pointer()) || !doc.at(ptr.parent_pointer()).is_object()) {
    throw ConfigError("override '" + pointer + "': parent object does not exist");
  }
  Json v;
  try {
    v = Json::parse(value);
  } catch (const Json::parse_error&) {
    v = value;
  }
  if (v.is_object() || v.is_array()) throw ConfigError("override '" + pointer + "': value must be a scalar");
  doc[ptr] = v;
}

TorusModel build_model(const ModelConfig& c) {
  GroupAction act = GroupAction::trivial(c.d);
  if (c.action.kind == "trivial") {
    if (!c.action.generators.empty()) throw ConfigError("trivial action takes no generators");
  } else if (c.action.kind == "subtorus") {
    if (c.action.generators.empty()) throw ConfigError("subtorus action needs at least one generator");
    act = GroupAction::subtorus(c.d, c.action.generators);
  } else if (c.action.kind == "cyclic") {
    if (c.action.generators.size() != 1) throw ConfigError("cyclic action needs exactly one generator");
    if (c.action.modulus < 2) throw ConfigError("cyclic action needs modulus >= 2");
    act = GroupAction::cyclic(c.d, c.action.generators[0], c.action.modulus);
  } else {
    throw ConfigError("unknown action kind '" + c.action.kind + "' (expected trivial, subtorus or cyclic)");
  }
  return TorusModel(c.d, c.tau, act, c.injectivity_threshold);
}

Isotype build_isotype(const TorusModel& model, const std::optional<std::vector<long>>& nu) {
  if (!nu) return Isotype::all();
  return Isotype::of(model.action(), *nu);
}

TubePoint build_point(const TorusModel& model, const std::optional<PointConfig>& pc, bool on_z) {
  TubePoint pt;
  if (!pc) {
    pt = default_z_point(model);
  } else {
    if (static_cast<int>(pc->x.size()) != model.d() || static_cast<int>(pc->p_direction.size()) != model.d()) {
      throw ConfigError("point: x and p_direction must have length d");
    }
    Vec x = Eigen::Map<const Vec>(pc->x.data(), model.d());
    Vec dir = Eigen::Map<const Vec>(pc->p_direction.data(), model.d());
    if (!(dir.norm() > 0)) throw ConfigError("point: p_direction must be non-zero");
    pt = model.point_along(x, dir);
  }
  if (on_z && z_locus_distance(model, pt) > 1e-9) throw ConfigError("point: must lie on Z^tau");
  return pt;
}

}  // namespace tubelab
