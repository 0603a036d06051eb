// SPDX-License-Identifier: Apache-2.0
//
// Direct quadrature of complex Gaussian integrands, used to cross-check the
// closed forms.
#pragma once

#include "tubelab/gaussian.hpp"

namespace tubelab {

// Tensor Gauss-Hermite rule with `nodes` points per axis in coordinates
// whitened by the Cholesky factor of Re M.
cplx tensor_gauss_hermite(const ComplexQuadratic& q, int nodes);

struct QuadratureResult {
  cplx value;
  int nodes = 0;
  double change = 0.0;  // |difference to the previous refinement|
};

// Refines the node count in steps of 4 until two successive values agree to
// rel_tol (relative), or max_nodes is reached.
QuadratureResult adaptive_gauss_hermite(const ComplexQuadratic& q, double rel_tol, int start_nodes = 12,
                                        int max_nodes = 24);

}  // namespace tubelab
