#include <gtest/gtest.h>

#include <string>

#include "abcpac/config.hpp"
#include "abcpac/errors.hpp"

namespace {

using namespace abcpac;

TEST(Config, EveryPresetRoundTrips) {
  for (const auto& name : preset_names()) {
    const RunConfig c = preset(name);
    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    EXPECT_EQ(serialize_config(back), text) << name;
  }
}

TEST(Config, OverridesApplyBeforeValidation) {
  const auto text = serialize_config(preset("exp1"));
  const auto c = parse_config(text, {"smc.particles=250", "smc.m_policy=fixed", "bounds.epsilon=0.1"});
  EXPECT_EQ(c.smc.particles, 250u);
  EXPECT_EQ(c.smc.m_policy, MPolicy::kFixed);
  EXPECT_DOUBLE_EQ(c.bounds.epsilon, 0.1);
  EXPECT_THROW(parse_config(text, {"smc.nonexistent.key=1"}), InvalidConfigError);
  EXPECT_THROW(parse_config(text, {"no-equals-sign"}), InvalidConfigError);
}

TEST(Config, ErrorsCarryTheLineOfTheOffendingKey) {
  auto doc = nlohmann::ordered_json::parse(serialize_config(preset("toy-quadrature")));
  doc["smc"]["tau"] = 1.5;
  const std::string bad = doc.dump(2);
  std::size_t want_line = 1;
  for (std::size_t i = 0; i < bad.find("\"tau\""); ++i) want_line += bad[i] == '\n';
  try {
    parse_config(bad);
    FAIL() << "tau = 1.5 accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), want_line);
    EXPECT_EQ(e.path(), "smc.tau");
  }
}

TEST(Config, UnknownKeysAreRejected) {
  auto doc = nlohmann::ordered_json::parse(serialize_config(preset("exp2")));
  doc["smc"]["partcles"] = 10;
  EXPECT_THROW(parse_config(doc.dump(2)), ConfigError);
}

TEST(Config, MalformedJsonReportsALine) {
  try {
    parse_config("{\n  \"name\": \"x\",\n  \"seed\": ,\n}");
    FAIL() << "malformed document accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Config, UnknownPresetIsInvalid) { EXPECT_THROW(preset("exp9"), InvalidConfigError); }

TEST(Config, DerivedConstantsForExperimentOne) {
  const auto c = derive_constants(preset("exp1"));
  EXPECT_EQ(c.n, 90.0);
  EXPECT_EQ(c.m, 6.0);
  EXPECT_EQ(c.p, 2.0);
  EXPECT_EQ(c.K, 625.0);
  EXPECT_EQ(c.d, 4.0);
}

TEST(Config, ConstantsDocumentRoundTrip) {
  ConstantsDocument doc;
  doc.constants = derive_constants(preset("exp3"));
  doc.beta_smooth = 2.0;
  const auto back = parse_constants(serialize_constants(doc));
  EXPECT_TRUE(std::isinf(back.constants.p));
  EXPECT_EQ(back.constants.m, doc.constants.m);
  EXPECT_EQ(back.beta_smooth, 2.0);
  EXPECT_THROW(parse_constants("{\"n\": -1}"), InvalidConfigError);
}

TEST(Config, ObservationsAreSeeded) {
  const auto c = preset("exp1");
  EXPECT_EQ(build_observations(c.data, 3), build_observations(c.data, 3));
  EXPECT_NE(build_observations(c.data, 3), build_observations(c.data, 4));
  const auto fixed = preset("toy-discrete");
  EXPECT_EQ(build_observations(fixed.data, 1), fixed.data.values);
}

}  // namespace
