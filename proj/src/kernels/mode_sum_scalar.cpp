// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "tubelab/mode_sum.hpp"

namespace tubelab {

void ModeTable::reserve(std::size_t n) {
  for (int i = 0; i < d; ++i) k[i].reserve(n);
  mu.reserve(n);
  weight.reserve(n);
}

void ModeTable::push(const Mode& m, double w) {
  for (int i = 0; i < d; ++i) k[i].push_back(static_cast<double>(m.k[i]));
  mu.push_back(m.mu);
  weight.push_back(w);
}

PartialSum mode_sum_scalar(const ModeTable& t, const ModeSumParams& p, std::size_t begin, std::size_t end) {
  PartialSum out;
  for (std::size_t i = begin; i < end; ++i) {
    double a = -p.two_tau * t.mu[i];
    double ph = p.t0 * t.mu[i];
    for (int j = 0; j < t.d; ++j) {
      a -= t.k[j][i] * p.s[j];
      ph += t.k[j][i] * p.dx[j];
    }
    double m = t.weight[i] * std::exp(a);
    out.re += m * std::cos(ph);
    out.im += m * std::sin(ph);
    out.abs += std::abs(m);
  }
  return out;
}

}  // namespace tubelab
