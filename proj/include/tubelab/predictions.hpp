// SPDX-License-Identifier: Apache-2.0
//
// Leading-order predictions for the tempered Poisson kernels of the torus
// model and for the weighted Weyl sums.
#pragma once

#include <string>

#include "tubelab/cutoff.hpp"
#include "tubelab/geometry.hpp"
#include "tubelab/lattice.hpp"

namespace tubelab {

// Displacement in rescaled frame coordinates: the point is
// displace(frame, theta / sqrt(lambda), v / sqrt(lambda)).
struct Displacement {
  double theta = 0.0;
  Vec v;
};

struct Prediction {
  // Modulus of the leading coefficient at the given lambda, without the
  // Gaussian factor.
  double coefficient = 0.0;
  double lambda_exponent = 0.0;
  double lambda = 0.0;
  // Exponent of the Gaussian factor, including the oscillatory term.
  cplx gaussian_form{0.0, 0.0};
  std::string provenance;

  double modulus() const;
};

// Bounds |theta_j|, |v_j| <= c * lambda^eps_prime with eps_prime < 1/6.
struct ValidityWindow {
  double c = 3.0;
  double eps_prime = 0.15;

  bool operator==(const ValidityWindow&) const = default;
};

// Group factor dim(nu)^2 |sum_{stabilizer} conj Xi_nu| / (r V_eff) at a point
// of Z^tau.  The full kernel (Isotype::all) has no group factor.
double group_factor(const TorusModel& model, const Isotype& iso, const TubePoint& pt);

// Toeplitz side, formula only.
Prediction predict_diag_Pi(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, const TubePoint& pt,
                           double lambda);
Prediction predict_diag_P(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso, const TubePoint& pt,
                          double lambda);

// Off-diagonal Gaussian decay near a point of Z^tau; the displacements are in
// the split frame of nhlc_frame(model, pt, true).
Prediction predict_gaussian_decay(const TorusModel& model, const Cutoff& cutoff, const Isotype& iso,
                                  const TubePoint& pt, const Displacement& d1, const Displacement& d2, double lambda,
                                  const ValidityWindow& window = {});

// Full kernel near x1 = Gamma_{t1}(x2); displacements in the unsplit frames at
// x1 and x2.
Prediction predict_near_graph(const TorusModel& model, const Cutoff& cutoff, const TubePoint& x2, double t1,
                              double lambda, const Displacement& d1, const Displacement& d2,
                              const ValidityWindow& window = {});

// Leading term of the weighted Weyl sum over an isotype.
double weyl_poisson_prediction(const TorusModel& model, double lambda, Metric z_metric = Metric::kappa_hat);
double weyl_poisson_exponent(const TorusModel& model);
// Geodesic-side Weyl formula for a free action (formula only).
double weyl_geodesic_prediction(const TorusModel& model, double lambda, Metric z_metric = Metric::kappa_hat);

}  // namespace tubelab
