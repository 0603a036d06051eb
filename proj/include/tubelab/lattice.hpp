// SPDX-License-Identifier: Apache-2.0
//
// Lattice eigendata of the flat torus: k in Z^d with eigenvalue mu = |k| of
// sqrt(Laplacian), and isotype selectors for the group actions.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tubelab/geometry.hpp"

namespace tubelab {

inline constexpr int kMaxLatticeDim = 4;

struct Mode {
  std::array<int, kMaxLatticeDim> k{};
  int d = 0;
  std::int64_t norm2 = 0;
  double mu = 0.0;
};

class Isotype {
 public:
  // Every mode.
  static Isotype all();
  // Subtorus: k . g_j = nu_j for every generator.  Cyclic: k . g = nu mod m.
  // Trivial action: nu must be empty and every mode is selected.
  static Isotype of(const GroupAction& action, std::vector<long> nu);

  bool is_all() const { return all_; }
  const std::vector<long>& nu() const { return nu_; }
  bool contains(const int* k, int d) const;
  bool contains(const Mode& m) const { return contains(m.k.data(), m.d); }

 private:
  bool all_ = true;
  ActionKind kind_ = ActionKind::trivial;
  std::vector<std::vector<int>> gens_;
  int modulus_ = 1;
  std::vector<long> nu_;
};

// Visits every k with r_lo <= |k| <= r_hi in lexicographic order.
void for_each_lattice_point(int d, double r_lo, double r_hi, const std::function<void(const Mode&)>& fn);

// All k with |k| <= lambda_max + margin in the isotype, in lexicographic order.
std::vector<Mode> enumerate_modes(int d, double lambda_max, double margin, const Isotype& iso,
                                  std::size_t cap = 50'000'000);

// Same, restricted to the shell r_lo <= |k| <= r_hi.
std::vector<Mode> enumerate_shell(int d, double r_lo, double r_hi, const Isotype& iso, std::size_t cap = 50'000'000);

// Upper bound on the number of lattice points with a <= |k| <= b.
double lattice_shell_bound(int d, double a, double b);

}  // namespace tubelab
