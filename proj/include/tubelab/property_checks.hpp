// SPDX-License-Identifier: Apache-2.0
//
// Randomized property suites for the symplectic and Gaussian modules.
#pragma once

#include <cstdint>

#include "tubelab/config.hpp"
#include "tubelab/report.hpp"

namespace tubelab {

// Trapezoid quadrature of int Pi_1(v, B^{-1} u) Pi_1(u, w) du over a square box
// of half-width `box` around the peak of the integrand, n = 1.
cplx reproducing_integral(const Mat& b_inv, const Vec& v, const Vec& w, int grid, double box);
// pi^{-1} |det P|^{-1} exp(Re Psi_{B^{-1}}(v, w)) for n = 1.
double reproducing_modulus(const Mat& b_inv, const Vec& v, const Vec& w);

Report run_symplectic_check(const SymplecticCheckConfig& cfg, std::uint64_t seed);
Report run_gaussian_check(const GaussianCheckConfig& cfg, std::uint64_t seed);

}  // namespace tubelab
