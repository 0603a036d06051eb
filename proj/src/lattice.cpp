// SPDX-License-Identifier: Apache-2.0
#include "tubelab/lattice.hpp"

#include <cmath>

#include "tubelab/errors.hpp"

namespace tubelab {

namespace {

std::int64_t isqrt_floor(double x) {
  if (x < 0) return -1;
  auto r = static_cast<std::int64_t>(std::floor(std::sqrt(x)));
  while (static_cast<double>(r + 1) * static_cast<double>(r + 1) <= x) ++r;
  while (r > 0 && static_cast<double>(r) * static_cast<double>(r) > x) --r;
  return r;
}

std::int64_t isqrt_ceil(double x) {
  if (x <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(x)));
  while (r > 0 && static_cast<double>(r - 1) * static_cast<double>(r - 1) >= x) --r;
  while (static_cast<double>(r) * static_cast<double>(r) < x) ++r;
  return r;
}

void visit(int d, int level, double lo2, double hi2, Mode& m, const std::function<void(const Mode&)>& fn) {
  const double rest_hi = hi2 - static_cast<double>(m.norm2);
  if (level == d - 1) {
    std::int64_t top = isqrt_floor(rest_hi);
    if (top < 0) return;
    std::int64_t bottom = isqrt_ceil(lo2 - static_cast<double>(m.norm2));
    if (bottom > top) return;
    const std::int64_t base = m.norm2;
    auto emit = [&](std::int64_t v) {
      m.k[level] = static_cast<int>(v);
      m.norm2 = base + v * v;
      m.mu = std::sqrt(static_cast<double>(m.norm2));
      fn(m);
    };
    for (std::int64_t v = -top; v <= -std::max<std::int64_t>(bottom, 1); ++v) emit(v);
    if (bottom == 0) emit(0);
    for (std::int64_t v = std::max<std::int64_t>(bottom, 1); v <= top; ++v) emit(v);
    m.norm2 = base;
    m.k[level] = 0;
    return;
  }
  std::int64_t top = isqrt_floor(rest_hi);
  const std::int64_t base = m.norm2;
  for (std::int64_t v = -top; v <= top; ++v) {
    m.k[level] = static_cast<int>(v);
    m.norm2 = base + v * v;
    visit(d, level + 1, lo2, hi2, m, fn);
  }
  m.norm2 = base;
  m.k[level] = 0;
}

}  // namespace

Isotype Isotype::all() { return Isotype(); }

Isotype Isotype::of(const GroupAction& action, std::vector<long> nu) {
  Isotype iso;
  iso.kind_ = action.kind();
  iso.gens_ = action.generators();
  iso.modulus_ = action.modulus();
  switch (action.kind()) {
    case ActionKind::trivial:
      if (!nu.empty()) throw DomainError("Isotype: the trivial action has only the trivial isotype");
      iso.all_ = true;
      break;
    case ActionKind::subtorus:
      if (static_cast<int>(nu.size()) != action.dim()) throw DomainError("Isotype: nu needs one entry per generator");
      iso.all_ = false;
      break;
    case ActionKind::cyclic:
      if (nu.size() != 1) throw DomainError("Isotype: nu needs exactly one entry for a cyclic action");
      iso.all_ = false;
      nu[0] = ((nu[0] % action.modulus()) + action.modulus()) % action.modulus();
      break;
  }
  iso.nu_ = std::move(nu);
  return iso;
}

bool Isotype::contains(const int* k, int d) const {
  if (all_) return true;
  if (kind_ == ActionKind::subtorus) {
    for (size_t j = 0; j < gens_.size(); ++j) {
      long dot = 0;
      for (int i = 0; i < d; ++i) dot += static_cast<long>(k[i]) * gens_[j][i];
      if (dot != nu_[j]) return false;
    }
    return true;
  }
  long dot = 0;
  for (int i = 0; i < d; ++i) dot += static_cast<long>(k[i]) * gens_[0][i];
  return ((dot % modulus_) + modulus_) % modulus_ == nu_[0];
}

void for_each_lattice_point(int d, double r_lo, double r_hi, const std::function<void(const Mode&)>& fn) {
  require_dims(d >= 1 && d <= kMaxLatticeDim, "lattice: dimension must lie in 1..4");
  if (r_hi < 0 || r_hi < r_lo) return;
  Mode m;
  m.d = d;
  double lo = std::max(0.0, r_lo);
  visit(d, 0, lo * lo, r_hi * r_hi, m, fn);
}

std::vector<Mode> enumerate_shell(int d, double r_lo, double r_hi, const Isotype& iso, std::size_t cap) {
  std::vector<Mode> out;
  for_each_lattice_point(d, r_lo, r_hi, [&](const Mode& m) {
    if (!iso.contains(m)) return;
    if (out.size() >= cap) throw CapacityError("enumerate_modes: mode count exceeds the configured cap");
    out.push_back(m);
  });
  return out;
}

std::vector<Mode> enumerate_modes(int d, double lambda_max, double margin, const Isotype& iso, std::size_t cap) {
  if (!(lambda_max > 0)) throw DomainError("enumerate_modes: lambda_max must be positive");
  return enumerate_shell(d, 0.0, lambda_max + margin, iso, cap);
}

double lattice_shell_bound(int d, double a, double b) {
  // Every lattice point in the shell owns a unit cube inside the shell
  // widened by sqrt(d)/2 on both sides.
  double w = 0.5 * std::sqrt(static_cast<double>(d));
  double lo = std::max(0.0, a - w), hi = b + w;
  double vol_unit = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  return vol_unit * (std::pow(hi, d) - std::pow(lo, d));
}

}  // namespace tubelab
