#include "abcpac/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "abcpac/errors.hpp"

namespace abcpac {
namespace {

using Json = nlohmann::ordered_json;

/// Strict view of one JSON object: every key must be consumed exactly once.
class Section {
 public:
  Section(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw InvalidConfigError(where() + " must be an object", path_);
  }

  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return node_.contains(key); }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    if (!node_.contains(key)) throw InvalidConfigError("missing key " + child_path(key), child_path(key));
    return node_.at(key);
  }

  double number(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_number()) throw InvalidConfigError(child_path(key) + " must be a number", child_path(key));
    return v.get<double>();
  }
  double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const auto& v = raw(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw InvalidConfigError(child_path(key) + " must be a number or null", child_path(key));
    return v.get<double>();
  }

  std::uint64_t count(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw InvalidConfigError(child_path(key) + " must be a non-negative integer", child_path(key));
    }
    return v.get<std::uint64_t>();
  }
  std::uint64_t count_or(const std::string& key, std::uint64_t fallback) { return has(key) ? count(key) : fallback; }

  bool boolean(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_boolean()) throw InvalidConfigError(child_path(key) + " must be true or false", child_path(key));
    return v.get<bool>();
  }
  bool boolean_or(const std::string& key, bool fallback) { return has(key) ? boolean(key) : fallback; }

  std::optional<bool> optional_boolean(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const auto& v = raw(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_boolean()) throw InvalidConfigError(child_path(key) + " must be true, false or null", child_path(key));
    return v.get<bool>();
  }

  std::string text(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_string()) throw InvalidConfigError(child_path(key) + " must be a string", child_path(key));
    return v.get<std::string>();
  }
  std::string text_or(const std::string& key, const std::string& fallback) { return has(key) ? text(key) : fallback; }

  std::vector<double> numbers(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_array()) throw InvalidConfigError(child_path(key) + " must be an array of numbers", child_path(key));
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw InvalidConfigError(child_path(key) + " must be an array of numbers", child_path(key));
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::optional<std::pair<double, double>> interval(const std::string& key) {
    if (!has(key)) return std::nullopt;
    if (raw(key).is_null()) return std::nullopt;
    const auto v = numbers(key);
    if (v.size() != 2) throw InvalidConfigError(child_path(key) + " must be [a, b] or null", child_path(key));
    return std::make_pair(v[0], v[1]);
  }

  Section sub(const std::string& key) { return Section(raw(key), child_path(key)); }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw InvalidConfigError("unknown key " + child_path(key), child_path(key));
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config document" : path_; }

  const Json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InvalidConfigError& e) {
    if (!e.path().empty()) throw;
    throw InvalidConfigError(e.what(), path);
  }
}

Json interval_json(const std::optional<std::pair<double, double>>& v) {
  if (!v) return nullptr;
  return Json::array({v->first, v->second});
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

/// Line of the key addressed by a dotted path, found by scanning for each segment in turn.
/// A key that is absent from the text is reported at its nearest present ancestor, or at
/// line 1 for the top-level object.
std::size_t locate_line(const std::string& text, const std::string& path) {
  if (path.empty()) return 0;
  std::size_t pos = 0;
  bool found_any = false;
  std::istringstream segments(path);
  std::string seg;
  while (std::getline(segments, seg, '.')) {
    const auto hit = text.find("\"" + seg + "\"", pos);
    if (hit == std::string::npos) break;
    pos = hit;
    found_any = true;
  }
  if (!found_any) return 1;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

std::string remap_path(std::string path) {
  if (path.rfind("truth", 0) == 0) path.replace(0, 5, "data");
  return path;
}

Json model_json(const ModelConfig& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  switch (m.kind) {
    case ModelConfig::Kind::kMixture:
      j["p"] = m.p;
      j["prior_mean"] = m.prior_mean;
      j["prior_sd"] = m.prior_sd;
      break;
    case ModelConfig::Kind::kGaussianMean:
      j["prior_var"] = m.prior_var;
      j["noise_sd"] = m.noise_sd;
      break;
    case ModelConfig::Kind::kDiscreteIid:
      j["atoms"] = m.atoms;
      j["prior_weights"] = m.prior_weights;
      j["alphabet"] = m.alphabet;
      j["outcome_probs"] = m.outcome_probs;
      j["n"] = m.sample_size;
      break;
  }
  return j;
}

ModelConfig model_from(Section s) {
  ModelConfig m;
  m.kind = with_path(s.child_path("kind"), [&] { return model_kind_from_string(s.text("kind")); });
  switch (m.kind) {
    case ModelConfig::Kind::kMixture:
      m.p = s.number_or("p", m.p);
      if (s.has("prior_mean")) m.prior_mean = s.numbers("prior_mean");
      if (s.has("prior_sd")) m.prior_sd = s.numbers("prior_sd");
      break;
    case ModelConfig::Kind::kGaussianMean:
      m.prior_var = s.number_or("prior_var", m.prior_var);
      m.noise_sd = s.number_or("noise_sd", m.noise_sd);
      break;
    case ModelConfig::Kind::kDiscreteIid: {
      m.atoms = s.numbers("atoms");
      m.prior_weights = s.numbers("prior_weights");
      m.alphabet = s.numbers("alphabet");
      const auto& rows = s.raw("outcome_probs");
      if (!rows.is_array()) throw InvalidConfigError("model.outcome_probs must be an array of rows", "model.outcome_probs");
      for (const auto& row : rows) {
        if (!row.is_array()) throw InvalidConfigError("model.outcome_probs must be an array of rows", "model.outcome_probs");
        std::vector<double> r;
        for (const auto& e : row) {
          if (!e.is_number()) throw InvalidConfigError("model.outcome_probs entries must be numbers", "model.outcome_probs");
          r.push_back(e.get<double>());
        }
        m.outcome_probs.push_back(std::move(r));
      }
      m.sample_size = s.count("n");
      break;
    }
  }
  s.finish();
  return m;
}

Json data_json(const DataConfig& d) {
  Json j;
  if (d.fixed) {
    j["kind"] = "fixed";
    j["values"] = d.values;
    return j;
  }
  j["kind"] = to_string(d.truth.kind);
  j["weights"] = d.truth.weights;
  j["means"] = d.truth.means;
  j["sds"] = d.truth.sds;
  j["n"] = d.truth.n;
  j["truncation"] = interval_json(d.truth.truncation);
  return j;
}

DataConfig data_from(Section s) {
  DataConfig d;
  const auto kind = s.text("kind");
  if (kind == "fixed") {
    d.fixed = true;
    d.values = s.numbers("values");
    if (d.values.empty()) throw InvalidConfigError("data.values must not be empty", "data.values");
  } else {
    d.truth.kind = with_path(s.child_path("kind"), [&] { return truth_kind_from_string(kind); });
    d.truth.weights = s.numbers("weights");
    d.truth.means = s.numbers("means");
    d.truth.sds = s.numbers("sds");
    d.truth.n = s.count("n");
    d.truth.truncation = s.interval("truncation");
  }
  s.finish();
  return d;
}

Json summary_json(const SummarySpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  if (spec.kind == SummarySpec::Kind::kIndicatorGrid) j["thresholds"] = spec.thresholds;
  j["clamp"] = interval_json(spec.clamp);
  return j;
}

SummarySpec summary_from(Section s) {
  SummarySpec spec;
  spec.kind = with_path(s.child_path("kind"), [&] { return summary_kind_from_string(s.text("kind")); });
  if (spec.kind == SummarySpec::Kind::kIndicatorGrid) {
    if (s.has("grid")) {
      auto g = s.sub("grid");
      const double lo = g.number("lo");
      const double hi = g.number("hi");
      const auto count = g.count("count");
      g.finish();
      if (s.has("thresholds")) throw InvalidConfigError("give summary.grid or summary.thresholds, not both", "summary.grid");
      spec.thresholds = with_path("summary.grid", [&] { return SummarySpec::indicator_grid(lo, hi, count).thresholds; });
    } else {
      spec.thresholds = s.numbers("thresholds");
    }
  }
  spec.clamp = s.interval("clamp");
  s.finish();
  return spec;
}

Json distance_json(const DistanceSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  if (spec.kind == DistanceSpec::Kind::kLp) j["p"] = spec.p;
  return j;
}

DistanceSpec distance_from(Section s) {
  DistanceSpec spec;
  spec.kind = with_path(s.child_path("kind"), [&] { return distance_kind_from_string(s.text("kind")); });
  if (spec.kind == DistanceSpec::Kind::kLp) spec.p = s.number_or("p", 2.0);
  if (spec.kind == DistanceSpec::Kind::kScaledEmpiricalL2) spec.p = 2.0;
  s.finish();
  return spec;
}

Json smc_json(const SmcConfig& c) {
  Json j;
  j["particles"] = c.particles;
  j["tau"] = c.tau;
  j["lambda_target"] = c.lambda_target;
  j["lambda_max"] = optional_json(c.lambda_max);
  j["adaptive_lambda"] = c.adaptive_lambda;
  j["mcmc_steps"] = c.mcmc_steps;
  j["rw_scale"] = optional_json(c.rw_scale);
  j["m_initial"] = c.initial_replicates;
  j["m_policy"] = to_string(c.m_policy);
  j["acceptance_target"] = c.acceptance_target;
  j["m_max"] = c.max_replicates;
  j["kernel"] = to_string(c.kernel);
  j["bisection_tol"] = c.bisection_tol;
  j["bisection_max_iterations"] = c.bisection_max_iterations;
  j["snapshot_limit"] = c.snapshot_limit;
  j["full_snapshots"] = optional_json(c.full_snapshots);
  j["simulation_budget"] = c.simulation_budget;
  j["fail_on_degeneracy"] = c.fail_on_degeneracy;
  return j;
}

SmcConfig smc_from(Section s) {
  SmcConfig c;
  c.particles = s.count_or("particles", c.particles);
  c.tau = s.number_or("tau", c.tau);
  c.lambda_target = s.number_or("lambda_target", c.lambda_target);
  c.lambda_max = s.optional_number("lambda_max");
  c.adaptive_lambda = s.boolean_or("adaptive_lambda", c.adaptive_lambda);
  c.mcmc_steps = s.count_or("mcmc_steps", c.mcmc_steps);
  c.rw_scale = s.optional_number("rw_scale");
  c.initial_replicates = s.count_or("m_initial", c.initial_replicates);
  if (s.has("m_policy")) {
    c.m_policy = with_path(s.child_path("m_policy"), [&] { return m_policy_from_string(s.text("m_policy")); });
  }
  c.acceptance_target = s.number_or("acceptance_target", c.acceptance_target);
  c.max_replicates = s.count_or("m_max", c.max_replicates);
  if (s.has("kernel")) {
    c.kernel = with_path(s.child_path("kernel"), [&] { return kernel_kind_from_string(s.text("kernel")); });
  }
  c.bisection_tol = s.number_or("bisection_tol", c.bisection_tol);
  c.bisection_max_iterations = s.count_or("bisection_max_iterations", c.bisection_max_iterations);
  c.snapshot_limit = s.count_or("snapshot_limit", c.snapshot_limit);
  c.full_snapshots = s.optional_boolean("full_snapshots");
  c.simulation_budget = s.count_or("simulation_budget", c.simulation_budget);
  c.fail_on_degeneracy = s.boolean_or("fail_on_degeneracy", c.fail_on_degeneracy);
  s.finish();
  return c;
}

Json bounds_json(const BoundsConfig& b) {
  Json j;
  j["epsilon"] = b.epsilon;
  j["alpha"] = b.alpha;
  j["vartheta"] = b.vartheta;
  j["L"] = b.L;
  j["C"] = b.C;
  j["beta_grid_size"] = b.beta_grid_size;
  return j;
}

BoundsConfig bounds_from(Section s) {
  BoundsConfig b;
  b.epsilon = s.number_or("epsilon", b.epsilon);
  b.alpha = s.number_or("alpha", b.alpha);
  b.vartheta = s.number_or("vartheta", b.vartheta);
  b.L = s.number_or("L", b.L);
  b.C = s.number_or("C", b.C);
  b.beta_grid_size = s.count_or("beta_grid_size", b.beta_grid_size);
  s.finish();
  return b;
}

TruthGenerator two_component_truth(std::size_t n) {
  TruthGenerator g;
  g.kind = TruthGenerator::Kind::kTwoComponent;
  g.weights = {0.8, 0.2};
  g.means = {0.0, 2.5};
  g.sds = {1.0, 0.5};
  g.n = n;
  return g;
}

}  // namespace

std::string to_string(ModelConfig::Kind kind) {
  switch (kind) {
    case ModelConfig::Kind::kMixture: return "mixture";
    case ModelConfig::Kind::kGaussianMean: return "gaussian_mean";
    case ModelConfig::Kind::kDiscreteIid: return "discrete_iid";
  }
  return "unknown";
}

ModelConfig::Kind model_kind_from_string(const std::string& s) {
  if (s == "mixture") return ModelConfig::Kind::kMixture;
  if (s == "gaussian_mean") return ModelConfig::Kind::kGaussianMean;
  if (s == "discrete_iid") return ModelConfig::Kind::kDiscreteIid;
  throw InvalidConfigError("unknown model kind '" + s + "'", "model.kind");
}

void RunConfig::validate() const {
  if (data.fixed) {
    for (double v : data.values) {
      if (!std::isfinite(v)) throw InvalidConfigError("data.values must be finite", "data.values");
    }
  } else {
    data.truth.validate();
  }
  summary.validate();
  distance.validate();
  smc.validate();
  if (model.kind == ModelConfig::Kind::kDiscreteIid && data.n() != model.sample_size) {
    throw InvalidConfigError("data size must equal model.n for a discrete model", "model.n");
  }
  if (!(bounds.epsilon > 0.0 && bounds.epsilon <= 1.0)) {
    throw InvalidConfigError("bounds.epsilon must lie in (0,1]", "bounds.epsilon");
  }
  for (auto [v, key] : {std::pair{bounds.alpha, "bounds.alpha"}, std::pair{bounds.vartheta, "bounds.vartheta"},
                        std::pair{bounds.L, "bounds.L"}, std::pair{bounds.C, "bounds.C"}}) {
    if (!(v > 0.0)) throw InvalidConfigError(std::string(key) + " must be positive", key);
  }
  if (bounds.beta_grid_size < 2) throw InvalidConfigError("bounds.beta_grid_size must be at least 2", "bounds.beta_grid_size");
  // model construction carries its own checks
  build_model(model);
}

nlohmann::ordered_json config_to_json(const RunConfig& config) {
  Json j;
  j["name"] = config.name;
  j["seed"] = config.seed;
  j["model"] = model_json(config.model);
  j["data"] = data_json(config.data);
  j["summary"] = summary_json(config.summary);
  j["distance"] = distance_json(config.distance);
  j["smc"] = smc_json(config.smc);
  j["bounds"] = bounds_json(config.bounds);
  return j;
}

RunConfig config_from_json(const nlohmann::ordered_json& doc) {
  Section root(doc, "");
  RunConfig c;
  c.name = root.text_or("name", c.name);
  c.seed = root.count_or("seed", c.seed);
  c.model = model_from(root.sub("model"));
  c.data = data_from(root.sub("data"));
  c.summary = summary_from(root.sub("summary"));
  c.distance = distance_from(root.sub("distance"));
  c.smc = root.has("smc") ? smc_from(root.sub("smc")) : SmcConfig{};
  c.bounds = root.has("bounds") ? bounds_from(root.sub("bounds")) : BoundsConfig{};
  root.finish();
  c.smc.seed = c.seed;
  return c;
}

void apply_override(nlohmann::ordered_json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InvalidConfigError("override '" + assignment + "' must look like key.path=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    value = text;
  }
  Json* node = &doc;
  std::istringstream segments(path);
  std::string seg;
  std::vector<std::string> parts;
  while (std::getline(segments, seg, '.')) parts.push_back(seg);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object() || !node->contains(parts[i])) {
      throw InvalidConfigError("override path " + path + " does not exist", path);
    }
    node = &(*node)[parts[i]];
  }
  if (!node->is_object()) throw InvalidConfigError("override path " + path + " does not exist", path);
  (*node)[parts.back()] = value;
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const auto line =
        static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n')) + 1;
    throw ConfigError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")", "", line);
  }
  try {
    for (const auto& o : overrides) apply_override(doc, o);
    auto config = config_from_json(doc);
    config.validate();
    return config;
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidConfigError& e) {
    const auto path = remap_path(e.path());
    const auto line = locate_line(text, path);
    const std::string where = line > 0 ? "line " + std::to_string(line) : "config";
    throw ConfigError(where + (path.empty() ? "" : " (" + path + ")") + ": " + e.what(), path, line);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what(), "", 0);
  }
}

std::string serialize_config(const RunConfig& config) { return config_to_json(config).dump(2) + "\n"; }

ConstantsDocument parse_constants(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const auto line =
        static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n')) + 1;
    throw ConfigError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")", "", line);
  }
  try {
    Section s(doc, "");
    ConstantsDocument out;
    auto& c = out.constants;
    c.n = s.number("n");
    c.m = s.number("m");
    if (s.has("p") && s.raw("p").is_string()) {
      if (s.text("p") != "inf") throw InvalidConfigError("p must be a number or \"inf\"", "p");
      c.p = std::numeric_limits<double>::infinity();
    } else {
      c.p = s.number("p");
    }
    c.K = s.number("K");
    c.d = s.number("d");
    c.vartheta = s.number_or("vartheta", c.vartheta);
    c.L = s.number_or("L", c.L);
    c.C = s.number_or("C", c.C);
    c.epsilon = s.number_or("epsilon", c.epsilon);
    c.alpha = s.number_or("alpha", c.alpha);
    if (s.has("concentration")) c.concentration = concentration_from_string(s.text("concentration"));
    out.beta_grid_size = s.count_or("beta_grid_size", out.beta_grid_size);
    out.beta_smooth = s.optional_number("beta_smooth");
    s.finish();
    c.validate();
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidConfigError& e) {
    const auto line = locate_line(text, e.path());
    const std::string where = line > 0 ? "line " + std::to_string(line) : "constants";
    throw ConfigError(where + (e.path().empty() ? "" : " (" + e.path() + ")") + ": " + e.what(), e.path(), line);
  }
}

std::string serialize_constants(const ConstantsDocument& doc) {
  const auto& c = doc.constants;
  Json j;
  j["n"] = c.n;
  j["m"] = c.m;
  if (std::isinf(c.p)) {
    j["p"] = "inf";
  } else {
    j["p"] = c.p;
  }
  j["K"] = c.K;
  j["d"] = c.d;
  j["vartheta"] = c.vartheta;
  j["L"] = c.L;
  j["C"] = c.C;
  j["epsilon"] = c.epsilon;
  j["alpha"] = c.alpha;
  j["concentration"] = to_string(c.concentration);
  j["beta_grid_size"] = doc.beta_grid_size;
  j["beta_smooth"] = optional_json(doc.beta_smooth);
  return j.dump(2) + "\n";
}

std::vector<std::string> preset_names() { return {"exp1", "exp2", "exp3", "toy-discrete", "toy-quadrature"}; }

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.name = name;
  if (name == "exp1") {
    c.model = ModelConfig{};
    c.data.truth = two_component_truth(90);
    c.summary = SummarySpec::moments_and_tails(std::make_pair(-5.0, 5.0));
    c.distance = DistanceSpec::lp(2.0);
    c.smc.particles = 3000;
    c.smc.lambda_target = 60.0;
  } else if (name == "exp2") {
    c.model = ModelConfig{};
    c.data.truth = TruthGenerator::three_component_default(90);
    c.data.truth.truncation = std::make_pair(-5.0, 5.0);
    c.summary = SummarySpec::moments_and_tails(std::make_pair(-5.0, 5.0));
    c.distance = DistanceSpec::lp(2.0);
    c.smc.particles = 1000;
    c.smc.lambda_target = 90.0;
    c.smc.lambda_max = 900.0;
  } else if (name == "exp3") {
    c.model = ModelConfig{};
    c.data.truth = TruthGenerator::three_component_default(90);
    c.data.truth.truncation = std::make_pair(-5.0, 5.0);
    c.summary = SummarySpec::indicator_grid(-5.0, 5.0, 21, std::make_pair(-5.0, 5.0));
    c.distance = DistanceSpec::sup();
    c.smc.particles = 1000;
    c.smc.lambda_target = 90.0;
  } else if (name == "toy-discrete") {
    c.model.kind = ModelConfig::Kind::kDiscreteIid;
    c.model.atoms = {0.0, 1.0, 2.0, 3.0, 4.0};
    c.model.prior_weights = {0.1, 0.2, 0.3, 0.25, 0.15};
    c.model.alphabet = {0.0, 1.0, 2.0};
    c.model.outcome_probs = {
        {0.7, 0.2, 0.1}, {0.5, 0.3, 0.2}, {0.3, 0.4, 0.3}, {0.2, 0.3, 0.5}, {0.1, 0.2, 0.7}};
    c.model.sample_size = 3;
    c.data.fixed = true;
    c.data.values = {2.0, 1.0, 2.0};
    c.summary.kind = SummarySpec::Kind::kIdentity;
    c.distance = DistanceSpec::lp(1.0);
    c.smc.particles = 100000;
    c.smc.lambda_target = 5.0;
    c.smc.m_policy = MPolicy::kFixed;
    c.bounds.vartheta = 1.0;
  } else if (name == "toy-quadrature") {
    c.model.kind = ModelConfig::Kind::kGaussianMean;
    c.model.prior_var = 1.0;
    c.model.noise_sd = 1.0;
    c.data.truth.kind = TruthGenerator::Kind::kGaussian;
    c.data.truth.weights = {1.0};
    c.data.truth.means = {0.5};
    c.data.truth.sds = {1.0};
    c.data.truth.n = 20;
    c.summary = SummarySpec::mean(std::make_pair(-6.0, 6.0));
    c.distance = DistanceSpec::lp(1.0);
    c.smc.particles = 20000;
    c.smc.lambda_target = 20.0;
    c.smc.m_policy = MPolicy::kFixed;
    c.bounds.vartheta = 1.0;
  } else {
    throw InvalidConfigError("unknown preset '" + name + "'", "preset");
  }
  c.smc.seed = c.seed;
  return c;
}

std::unique_ptr<GenerativeModel> build_model(const ModelConfig& m) {
  try {
    switch (m.kind) {
      case ModelConfig::Kind::kMixture: {
        if (!(m.p > 0.0 && m.p < 1.0)) throw InvalidConfigError("model.p must lie in (0,1)", "model.p");
        if (m.prior_mean.size() != 4 || m.prior_sd.size() != 4) {
          throw InvalidConfigError("mixture prior needs four means and four sds", "model.prior_sd");
        }
        Vector mean = Eigen::Map<const Vector>(m.prior_mean.data(), 4);
        Vector sd = Eigen::Map<const Vector>(m.prior_sd.data(), 4);
        return std::make_unique<MixtureModel>(m.p, DiagonalGaussianPrior(mean, sd));
      }
      case ModelConfig::Kind::kGaussianMean:
        return std::make_unique<GaussianMeanModel>(m.prior_var, m.noise_sd);
      case ModelConfig::Kind::kDiscreteIid:
        return std::make_unique<DiscreteToyModel>(
            DiscreteToyModel::iid(m.atoms, m.prior_weights, m.alphabet, m.outcome_probs, m.sample_size));
    }
  } catch (const InvalidConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InvalidConfigError(e.what(), "model");
  }
  throw InvalidConfigError("unknown model kind", "model.kind");
}

Dataset build_observations(const DataConfig& data, std::uint64_t seed) {
  if (data.fixed) return data.values;
  Rng rng = derive_stream(seed, StreamTag::kObservations, 0, 0);
  return generate_observations(data.truth, rng);
}

BoundConstants derive_constants(const RunConfig& config) {
  const auto bound = config.summary.feature_bound();
  if (!bound) {
    throw InvalidConfigError("bounds need a bounded statistic; set summary.clamp", "summary.clamp");
  }
  const auto n = config.data.n();
  BoundConstants c;
  c.n = static_cast<double>(n);
  c.m = static_cast<double>(config.summary.dim(n));
  c.p = config.distance.norm_order();
  c.K = *bound;
  c.d = static_cast<double>(build_model(config.model)->param_dim());
  c.vartheta = config.bounds.vartheta;
  c.L = config.bounds.L;
  c.C = config.bounds.C;
  c.epsilon = config.bounds.epsilon;
  c.alpha = config.bounds.alpha;
  c.concentration = config.distance.kind == DistanceSpec::Kind::kScaledEmpiricalL2
                        ? BoundConstants::Concentration::kScaledL2
                        : BoundConstants::Concentration::kLp;
  return c;
}

}  // namespace abcpac
