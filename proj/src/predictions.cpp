// SPDX-License-Identifier: Apache-2.0
#include "tubelab/predictions.hpp"

#include <cmath>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {

const cplx kI(0.0, 1.0);

void require_on_z(const TorusModel& model, const TubePoint& pt, const char* who) {
  if (z_locus_distance(model, pt) > 1e-9) throw DomainError(std::string(who) + ": point is not on Z^tau");
}

void require_window(const Displacement& d, double lambda, const ValidityWindow& w, int n2) {
  if (!(w.eps_prime > 0.0 && w.eps_prime < 1.0 / 6.0)) {
    throw DomainError("prediction: the window exponent must lie in (0, 1/6)");
  }
  require_dims(d.v.size() == n2, "prediction: displacement must have length 2(d-1)");
  const double bound = w.c * std::pow(lambda, w.eps_prime);
  if (std::abs(d.theta) > bound || d.v.norm() > bound) {
    throw DomainError("prediction: displacement lies outside the validity window");
  }
}

// (2 pi)^{-1/2} (lambda / 2 pi tau)^{d-1-dG/2}
double toeplitz_scale(const TorusModel& model, double lambda, int d_g) {
  const double tau = model.tau();
  return std::pow(2.0 * kPi, -0.5) * std::pow(lambda / (2.0 * kPi * tau), model.d() - 1 - 0.5 * d_g);
}

double poisson_factor(const TorusModel& model, double lambda) {
  return std::pow(lambda / (kPi * model.tau()), -0.5 * (model.d() - 1));
}

int effective_dg(const TorusModel& model, const Isotype& iso) { return iso.is_all() ? 0 : model.d_g(); }

}  // namespace

double Prediction::modulus() const { return coefficient * std::exp(gaussian_form.real()); }

double group_factor(const TorusModel& model, const Isotype& iso, const TubePoint& pt) {
  if (iso.is_all()) return 1.0;
  require_on_z(model, pt, "group_factor");
  const GroupAction& act = model.action();
  cplx sum(0.0, 0.0);
  for (const GroupElement& g : act.stabilizer()) sum += std::conj(act.character(iso.nu(), g));
  const double r = static_cast<double>(stabilizer_order(model));
  return std::abs(sum) / (r * effective_volume(model, pt, Metric::kappa_tilde));
}

Prediction predict_diag_Pi(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, const TubePoint& pt,
                           double lambda) {
  if (!(lambda > 0)) throw DomainError("predict_diag: lambda must be positive");
  if (!iso.is_all()) require_on_z(model, pt, "predict_diag");
  const int d_g = effective_dg(model, iso);
  Prediction out;
  out.lambda = lambda;
  out.lambda_exponent = model.d() - 1 - 0.5 * d_g;
  out.coefficient = toeplitz_scale(model, lambda, d_g) * std::abs(cutoff.chi(0.0)) * group_factor(model, iso, pt);
  out.provenance = "diagonal/toeplitz";
  return out;
}

Prediction predict_diag_P(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, const TubePoint& pt,
                          double lambda) {
  Prediction out = predict_diag_Pi(model, cutoff, iso, pt, lambda);
  out.coefficient *= poisson_factor(model, lambda);
  out.lambda_exponent -= 0.5 * (model.d() - 1);
  out.provenance = "diagonal/poisson";
  return out;
}

Prediction predict_gaussian_decay(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso,
                                  const TubePoint& pt, const Displacement& d1, const Displacement& d2, double lambda,
                                  const ValidityWindow& window) {
  Prediction out = predict_diag_P(model, cutoff, iso, pt, lambda);
  const int n2 = 2 * (model.d() - 1);
  require_window(d1, lambda, window, n2);
  require_window(d2, lambda, window, n2);
  const SplitDims dims(model.d(), effective_dg(model, iso));
  const double tau = model.tau();
  cplx form = kI * std::sqrt(lambda) * (d1.theta - d2.theta);
  form += -dims.transverse(d1.v).squaredNorm() - dims.transverse(d2.v).squaredNorm();
  Vec h1 = dims.horizontal(d1.v), h2 = dims.horizontal(d2.v);
  if (h1.size() > 0) form += psi2(h1, h2);
  out.gaussian_form = form / tau;
  out.provenance = "gaussian-decay/poisson";
  return out;
}

Prediction predict_near_graph(const TorusModel& model, const Cutoff& cutoff, const TubePoint& x2, double t1,
                              double lambda, const Displacement& d1, const Displacement& d2,
                              const ValidityWindow& window) {
  if (!(lambda > 0)) throw DomainError("predict_near_graph: lambda must be positive");
  const Interval supp = cutoff.support();
  if (!(t1 > supp.lo && t1 < supp.hi)) throw DomainError("predict_near_graph: t1 lies outside the support of chi");
  const int n2 = 2 * (model.d() - 1);
  require_window(d1, lambda, window, n2);
  require_window(d2, lambda, window, n2);
  const TubePoint x1 = geodesic_flow(model, x2, t1);
  const Frame f1 = nhlc_frame(model, x1, false);
  const Frame f2 = nhlc_frame(model, x2, false);
  const FlowLinearization lin = flow_linearization(model, x1, t1, f1, f2);
  const CayleyBlocks blocks = complexify(lin.b.inverse());
  const double tau = model.tau();
  const int d = model.d();

  Prediction out;
  out.lambda = lambda;
  out.lambda_exponent = 0.5 * (d - 1);
  out.coefficient = std::abs(cutoff.chi(t1)) * toeplitz_scale(model, lambda, 0) * poisson_factor(model, lambda) /
                    std::sqrt(std::abs(blocks.P.determinant()));
  out.gaussian_form = (kI * std::sqrt(lambda) * (d1.theta - d2.theta) + psi_a(blocks, d1.v, d2.v)) / tau;
  out.provenance = "near-graph/poisson";
  return out;
}

double weyl_poisson_exponent(const TorusModel& model) { return 0.5 * (model.d() + 1) - model.d_g(); }

double weyl_poisson_prediction(const TorusModel& model, double lambda, Metric z_metric) {
  const int d = model.d();
  const int d_g = model.d_g();
  if (d < 2 * d_g) throw DomainError("weyl: the Poisson Weyl law needs d >= 2 d_G");
  const double tau = model.tau();
  const double e = weyl_poisson_exponent(model);
  return std::pow(2.0, -0.5 * (d + 1 + d_g)) / kPi * std::pow(lambda / (2.0 * kPi * tau), 0.5 * (d - 1) - d_g) *
         quotient_volume(model, z_metric) * lambda / e;
}

double weyl_geodesic_prediction(const TorusModel& model, double lambda, Metric z_metric) {
  const int d = model.d();
  const int d_g = model.d_g();
  const double tau = model.tau();
  return std::pow(2.0, -0.5 * d_g) * tau / (d - d_g) * std::pow(lambda / (2.0 * kPi * tau), d - d_g) *
         quotient_volume(model, z_metric);
}

}  // namespace tubelab
