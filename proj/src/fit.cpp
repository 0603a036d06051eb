// SPDX-License-Identifier: Apache-2.0
#include "tubelab/fit.hpp"

#include <cmath>

#include "tubelab/errors.hpp"

namespace tubelab {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require_dims(x.size() == y.size() && x.size() >= 2, "fit_line: need at least two matching samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) throw NumericalError("fit_line: abscissae are all equal");
  LinearFit f;
  f.n = static_cast<int>(x.size());
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double rss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      double r = y[i] - f.intercept - f.slope * x[i];
      rss += r * r;
    }
    double s2 = rss / (n - 2.0);
    f.slope_se = std::sqrt(s2 / sxx);
    f.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  }
  return f;
}

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return fit_line(lx, ly);
}

double zero_crossing_frequency(const std::vector<double>& t, const std::vector<double>& f) {
  require_dims(t.size() == f.size(), "zero_crossing_frequency: size mismatch");
  std::vector<double> roots;
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    if (f[i] == 0.0) {
      roots.push_back(t[i]);
    } else if (f[i] * f[i + 1] < 0.0) {
      roots.push_back(t[i] + (t[i + 1] - t[i]) * f[i] / (f[i] - f[i + 1]));
    }
  }
  if (roots.size() < 2) return 0.0;
  double spacing = (roots.back() - roots.front()) / static_cast<double>(roots.size() - 1);
  return std::acos(-1.0) / spacing;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (!(v[i + 1] < v[i])) return false;
  return true;
}

}  // namespace tubelab
