// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <string>

#include "tubelab/config.hpp"
#include "tubelab/errors.hpp"

using namespace tubelab;

namespace {

const std::string kConfigDir = TUBELAB_CONFIG_DIR;

Json default_doc() { return to_json(load_config(kConfigDir + "/default.json")); }

}  // namespace

TEST(Config, ShippedConfigsRoundTrip) {
  for (const char* name : {"default.json", "point-query.json"}) {
    RunConfig a = load_config(kConfigDir + "/" + name);
    Json j = to_json(a);
    RunConfig b = parse_config(j);
    EXPECT_TRUE(a == b) << name;
    EXPECT_EQ(j.dump(), to_json(b).dump()) << name;
    EXPECT_EQ(parse_config(Json::parse(j.dump())), a) << name;
  }
}

TEST(Config, DefaultsFillMissingFields) {
  RunConfig c = parse_config(Json::parse(R"({"schema_version": 1, "qsymbol": {"model": {"d": 2, "tau": 0.5}}})"));
  ASSERT_TRUE(c.qsymbol.has_value());
  EXPECT_EQ(c.qsymbol->k_values, (std::vector<double>{50, 100, 200}));
  EXPECT_EQ(c.seed, 20240601u);
  EXPECT_FALSE(c.scaling.has_value());
}

TEST(Config, RejectsUnknownKeys) {
  Json top = default_doc();
  top["extra"] = 1;
  EXPECT_THROW(parse_config(top), ConfigError);
  Json nested = default_doc();
  nested["scaling"]["cases"][0]["spectral"]["cutoff"]["width"] = 0.3;
  EXPECT_THROW(parse_config(nested), ConfigError);
  Json model = default_doc();
  model["weyl"]["model"]["tau_typo"] = 0.5;
  EXPECT_THROW(parse_config(model), ConfigError);
}

TEST(Config, RejectsWrongTypesAndVersions) {
  Json j = default_doc();
  j["seed"] = "abc";
  EXPECT_THROW(parse_config(j), ConfigError);
  j = default_doc();
  j["schema_version"] = 2;
  EXPECT_THROW(parse_config(j), ConfigError);
  j = default_doc();
  j["weyl"]["lambdas"] = Json::array({100, -1});
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, HypothesisGuards) {
  // Validity window exponent must stay below 1/6.
  Json j = default_doc();
  j["scaling"]["cases"][0]["window"] = Json{{"c", 3.0}, {"eps_prime", 0.2}};
  EXPECT_THROW(parse_config(j), ConfigError);
  // Cutoff support must stay inside the injectivity threshold.
  j = default_doc();
  j["scaling"]["cases"][0]["spectral"]["cutoff"]["epsilon"] = 1.0;
  EXPECT_THROW(parse_config(j), ConfigError);
  // Weyl law needs d >= 2 d_G.
  j = default_doc();
  j["weyl"]["model"]["action"]["generators"] = Json::array({Json::array({1, 0, 0}), Json::array({0, 1, 0})});
  j["weyl"]["nu"] = Json::array({0, 0});
  EXPECT_THROW(parse_config(j), ConfigError);
  // Near-graph time inside the support.
  j = default_doc();
  for (auto& c : j["scaling"]["cases"])
    if (c.contains("near_graph")) c["near_graph"]["t1"] = 5.0;
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, ScalarOverrides) {
  Json j = default_doc();
  apply_override(j, "/seed", "7");
  apply_override(j, "/output_dir", "elsewhere");
  apply_override(j, "/weyl/lambdas/0", "120");
  RunConfig c = parse_config(j);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.output_dir, "elsewhere");
  EXPECT_EQ(c.weyl->lambdas[0], 120.0);
  EXPECT_THROW(apply_override(j, "/weyl", "1"), ConfigError);
  EXPECT_THROW(apply_override(j, "/weyl/lambdas", "[1, 2]"), ConfigError);
  EXPECT_THROW(apply_override(j, "/no/such/key", "1"), ConfigError);
}

TEST(Config, BuildsModelObjects) {
  RunConfig c = load_config(kConfigDir + "/default.json");
  TorusModel m = build_model(c.weyl->model);
  EXPECT_EQ(m.d(), 3);
  EXPECT_EQ(m.d_g(), 1);
  Isotype all = build_isotype(m, std::nullopt);
  EXPECT_TRUE(all.is_all());
  TubePoint p = build_point(m, std::nullopt, true);
  EXPECT_NEAR(z_locus_distance(m, p), 0.0, 1e-12);
}
