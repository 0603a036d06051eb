// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: JSON documents with strict key checking, load-time
// hypothesis guards and an exact round trip through to_json.
#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tubelab/cutoff.hpp"
#include "tubelab/geometry.hpp"
#include "tubelab/lattice.hpp"
#include "tubelab/predictions.hpp"
#include "tubelab/spectra.hpp"

namespace tubelab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ActionConfig {
  std::string kind = "trivial";  // trivial | subtorus | cyclic
  std::vector<std::vector<int>> generators;
  int modulus = 1;
  bool operator==(const ActionConfig&) const = default;
};

struct ModelConfig {
  int d = 2;
  double tau = 0.5;
  ActionConfig action;
  double injectivity_threshold = kPi;
  bool operator==(const ModelConfig&) const = default;
};

struct PointConfig {
  std::vector<double> x;
  // Direction of p; rescaled to length tau.
  std::vector<double> p_direction;
  bool operator==(const PointConfig&) const = default;
};

struct SpectralConfig {
  ModelConfig model;
  CutoffSpec cutoff;
  // Absent: the full kernel over every mode.
  std::optional<std::vector<long>> nu;
  TruncationPolicy truncation;
  bool operator==(const SpectralConfig&) const = default;
};

struct DiagonalBlock {
  double ratio_tol = 0.05;
  double order_min = -0.8;
  double order_max = -0.3;
  bool operator==(const DiagonalBlock&) const = default;
};

struct ThetaBlock {
  int samples = 161;
  double periods = 4.0;
  double freq_tol = 0.02;
  bool operator==(const ThetaBlock&) const = default;
};

struct HorizontalBlock {
  // Horizontal-block vectors of length 2(d-1-d_G), rescaled units.
  std::vector<double> v1;
  std::vector<double> v2;
  double ratio_tol = 0.10;
  bool operator==(const HorizontalBlock&) const = default;
};

struct TransverseBlock {
  std::vector<double> values{0.0, 0.25, 0.5, 0.75, 1.0};
  double slope_tol = 0.10;
  bool operator==(const TransverseBlock&) const = default;
};

struct NearGraphBlock {
  double t1 = 0.3;
  int pairs = 10;
  double radius = 2.0;
  double ratio_tol = 0.10;
  bool operator==(const NearGraphBlock&) const = default;
};

struct ScalingCase {
  std::string id;
  SpectralConfig spectral;
  std::vector<double> lambdas{100, 141, 200, 283, 400};
  std::optional<PointConfig> point;
  ValidityWindow window;
  std::optional<DiagonalBlock> diagonal;
  std::optional<ThetaBlock> theta;
  std::optional<HorizontalBlock> horizontal;
  std::optional<TransverseBlock> transverse;
  std::optional<NearGraphBlock> near_graph;
  bool operator==(const ScalingCase&) const = default;
};

struct ScalingConfig {
  std::vector<ScalingCase> cases;
  bool operator==(const ScalingConfig&) const = default;
};

struct RapidDecayConfig {
  SpectralConfig spectral;
  std::vector<double> lambdas{100, 141, 200, 283, 400};
  std::optional<PointConfig> point;
  // Off-locus points sit at kappa-tilde distance C * lambda^(eps_prime - 1/2).
  double eps_prime = 1.0 / 6.0;
  std::vector<double> distance_constants{0.5, 0.75, 1.0};
  double criterion_constant = 1.0;
  double off_order_max = -5.0;
  double on_order_min = -1.0;
  bool operator==(const RapidDecayConfig&) const = default;
};

struct WeylConfig {
  ModelConfig model;
  std::vector<long> nu;
  std::vector<double> lambdas{100, 141, 200, 283, 400};
  double exponent_tol = 0.10;
  double coefficient_tol = 0.15;
  std::size_t max_modes = 50'000'000;
  bool operator==(const WeylConfig&) const = default;
};

struct HusimiCase {
  std::string id;
  ModelConfig model;
  std::optional<std::vector<long>> nu;
  std::vector<int> direction;
  std::vector<int> multiples{25, 50, 100, 200, 400};
  int grid_points = 256;
  double exponent_tol = 0.15;
  double norm_exponent_tol = 0.05;
  bool operator==(const HusimiCase&) const = default;
};

struct HusimiConfig {
  std::vector<HusimiCase> cases;
  bool operator==(const HusimiConfig&) const = default;
};

struct QsymbolConfig {
  ModelConfig model;
  std::vector<double> k_values{50, 100, 200};
  double tol = 0.02;
  std::vector<int> extra_dims{3};
  double extra_k = 200.0;
  double extra_tol = 0.05;
  bool operator==(const QsymbolConfig&) const = default;
};

struct SymplecticCheckConfig {
  int samples = 100;
  int max_n = 4;
  int vectors = 100;
  double tol = 1e-10;
  double identity_tol = 1e-12;
  double reproducing_tol = 1e-6;
  double shear = 0.7;
  double rotation = 0.9;
  int grid = 400;
  double box = 10.0;
  bool operator==(const SymplecticCheckConfig&) const = default;
};

struct GaussianCheckConfig {
  int samples = 50;
  int max_m = 6;
  double tol = 1e-8;
  std::vector<int> achi_dims{2, 3, 4};
  int orthogonal_samples = 5;
  double achi_tol = 1e-10;
  double achi_shear = 0.7;
  double diag_tol = 1e-10;
  bool operator==(const GaussianCheckConfig&) const = default;
};

struct KernelQuery {
  double lambda = 0.0;
  std::vector<double> x;
  std::vector<double> p;
  bool operator==(const KernelQuery&) const = default;
};

struct KernelConfig {
  SpectralConfig spectral;
  std::vector<KernelQuery> queries;
  bool operator==(const KernelConfig&) const = default;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 20240601;
  std::string output_dir = "tubelab-out";
  std::optional<SymplecticCheckConfig> symplectic_check;
  std::optional<GaussianCheckConfig> gaussian_check;
  std::optional<KernelConfig> kernel;
  std::optional<ScalingConfig> scaling;
  std::optional<RapidDecayConfig> rapid_decay;
  std::optional<WeylConfig> weyl;
  std::optional<HusimiConfig> husimi;
  std::optional<QsymbolConfig> qsymbol;
  bool operator==(const RunConfig&) const = default;
};

// Parsing throws ConfigError on unknown keys, wrong types and violated
// hypotheses.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);
Json to_json(const RunConfig& c);

Json to_json(const ModelConfig& c);
Json to_json(const SpectralConfig& c);
Json to_json(const SymplecticCheckConfig& c);
Json to_json(const GaussianCheckConfig& c);
Json to_json(const KernelConfig& c);
Json to_json(const ScalingConfig& c);
Json to_json(const RapidDecayConfig& c);
Json to_json(const WeylConfig& c);
Json to_json(const HusimiConfig& c);
Json to_json(const QsymbolConfig& c);

// Replaces the scalar at a JSON pointer ("/scaling/cases/0/lambdas/4") with
// `value`, parsed as JSON when possible and as a string otherwise.  Objects and
// arrays cannot be replaced.
void apply_override(Json& doc, const std::string& pointer, const std::string& value);

TorusModel build_model(const ModelConfig& c);
Isotype build_isotype(const TorusModel& model, const std::optional<std::vector<long>>& nu);
// Base point from the config, or default_z_point; validated to lie on Z^tau
// when `on_z` is set.
TubePoint build_point(const TorusModel& model, const std::optional<PointConfig>& pc, bool on_z);

}  // namespace tubelab
