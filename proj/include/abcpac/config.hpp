#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "abcpac/bounds.hpp"
#include "abcpac/models.hpp"
#include "abcpac/smc.hpp"
#include "abcpac/statistics.hpp"

namespace abcpac {

/// Generative model section. Only the fields of the selected kind are read or written.
struct ModelConfig {
  enum class Kind { kMixture, kGaussianMean, kDiscreteIid };

  Kind kind = Kind::kMixture;
  // mixture
  double p = 0.8;
  std::vector<double> prior_mean{0.0, 0.0, 0.0, 0.0};
  std::vector<double> prior_sd{10.0, 1.0, 10.0, 1.0};
  // gaussian_mean
  double prior_var = 1.0;
  double noise_sd = 1.0;
  // discrete_iid
  std::vector<double> atoms;
  std::vector<double> prior_weights;
  std::vector<double> alphabet;
  std::vector<std::vector<double>> outcome_probs;
  std::size_t sample_size = 0;

  bool operator==(const ModelConfig&) const = default;
};

/// Observed data: a truth generator, or a literal dataset (`kind = fixed`).
struct DataConfig {
  bool fixed = false;
  TruthGenerator truth;
  std::vector<double> values;

  std::size_t n() const { return fixed ? values.size() : truth.n; }
};

/// User-supplied constants for the bound calculators; the remaining constants
/// (n, m, p, K, d) follow from the rest of the run configuration.
struct BoundsConfig {
  double epsilon = 0.05;
  double alpha = 1e-3;
  double vartheta = 100.0;
  double L = 1.0;
  double C = 1.0;
  std::size_t beta_grid_size = 64;
};

struct RunConfig {
  std::string name = "custom";
  std::uint64_t seed = 0;
  ModelConfig model;
  DataConfig data;
  SummarySpec summary = SummarySpec::moments_and_tails();
  DistanceSpec distance = DistanceSpec::lp(2.0);
  SmcConfig smc;
  BoundsConfig bounds;

  /// Cross-section checks on top of the per-section ones. Throws InvalidConfigError.
  void validate() const;
};

/// InvalidConfigError carrying the 1-based line of the offending key (0 if unknown).
class ConfigError : public InvalidConfigError {
 public:
  ConfigError(const std::string& message, std::string path, std::size_t line)
      : InvalidConfigError(message, std::move(path)), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

nlohmann::ordered_json config_to_json(const RunConfig& config);
/// Strict: unknown keys and wrong types are errors, reported with their dotted path.
RunConfig config_from_json(const nlohmann::ordered_json& doc);

/// Parses and validates a JSON config document, applying `overrides` ("a.b=value",
/// value parsed as JSON, falling back to a string) before validation. Errors are
/// ConfigError with the line of the offending key in `text`.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
std::string serialize_config(const RunConfig& config);

/// Sets the dotted path in `doc`; parents must exist.
void apply_override(nlohmann::ordered_json& doc, const std::string& assignment);

std::vector<std::string> preset_names();
/// Throws InvalidConfigError for an unknown name.
RunConfig preset(const std::string& name);

std::unique_ptr<GenerativeModel> build_model(const ModelConfig& config);
/// Observed sample: the literal values, or a draw from the truth generator on the
/// observation stream of `seed`.
Dataset build_observations(const DataConfig& data, std::uint64_t seed);
/// Bound constants implied by the run: n, m and K from the data and summary, p from
/// the distance, d from the model.
BoundConstants derive_constants(const RunConfig& config);

/// Constants document consumed by the `bound` subcommand:
///   {"n": 90, "m": 6, "p": 2, "K": 625, "d": 4, "vartheta": 100, "L": 1, "C": 1,
///    "epsilon": 0.05, "alpha": 0.001, "concentration": "lp",
///    "beta_grid_size": 64, "beta_smooth": 2}
/// `p` may be the string "inf". `beta_smooth` is needed only for the nonparametric rate.
struct ConstantsDocument {
  BoundConstants constants;
  std::size_t beta_grid_size = 64;
  std::optional<double> beta_smooth;
};
ConstantsDocument parse_constants(const std::string& text);
std::string serialize_constants(const ConstantsDocument& doc);

std::string to_string(ModelConfig::Kind kind);
ModelConfig::Kind model_kind_from_string(const std::string& s);

}  // namespace abcpac
