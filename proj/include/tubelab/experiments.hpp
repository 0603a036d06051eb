// SPDX-License-Identifier: Apache-2.0
//
// Comparison experiments between lattice-sum numerics and the leading-order
// predictions.
#pragma once

#include <cstdint>

#include "tubelab/config.hpp"
#include "tubelab/report.hpp"

namespace tubelab {

Report run_kernel(const KernelConfig& cfg);
Report run_scaling(const ScalingConfig& cfg, std::uint64_t seed);
Report run_rapid_decay(const RapidDecayConfig& cfg);
Report run_weyl(const WeylConfig& cfg);
Report run_husimi(const HusimiConfig& cfg);
Report run_qsymbol(const QsymbolConfig& cfg);

// Point with the same x as `base` and p rotated away from Z^tau towards the
// first generator, at kappa-tilde distance `distance` from Z^tau.
TubePoint off_locus_point(const TorusModel& model, const TubePoint& base, double distance);

}  // namespace tubelab
