#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abcpac/bounds.hpp"
#include "abcpac/config.hpp"
#include "abcpac/errors.hpp"
#include "abcpac/experiments.hpp"
#include "abcpac/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;

using namespace abcpac;

/// "1,2,5-8" -> {1,2,5,6,7,8}
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(item));
      } else {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw InvalidConfigError("seed range " + item + " is empty", "seeds");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw InvalidConfigError("cannot read seed list '" + text + "'", "seeds");
    }
  }
  if (seeds.empty()) throw InvalidConfigError("seed list is empty", "seeds");
  return seeds;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto s : parse_seed_list(text)) out.push_back(static_cast<std::size_t>(s));
  return out;
}

/// Config from --config or --preset, with overrides applied and validated.
RunConfig load_config(const std::string& config_path, const std::string& preset_name,
                      const std::vector<std::string>& overrides) {
  if (!config_path.empty() && !preset_name.empty()) {
    throw InvalidConfigError("give --config or --preset, not both", "config");
  }
  std::string text;
  if (!config_path.empty()) {
    try {
      text = read_text_file(config_path);
    } catch (const InvalidInputError& e) {
      throw InvalidConfigError(e.what(), "config");
    }
  } else if (!preset_name.empty()) {
    text = serialize_config(preset(preset_name));
  } else {
    throw InvalidConfigError("one of --config or --preset is required", "config");
  }
  return parse_config(text, overrides);
}

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty() || out_path == "-") {
    std::cout << contents;
    return;
  }
  const auto parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  write_text_file(out_path, contents);
}

int cmd_run(const std::string& config_path, const std::string& preset_name, std::optional<std::uint64_t> seed,
            const std::string& out_dir, const std::vector<std::string>& overrides) {
  RunConfig config = load_config(config_path, preset_name, overrides);
  if (seed) {
    config.seed = *seed;
    config.smc.seed = *seed;
  }
  const auto outcome = execute_run(config);
  write_run_artifacts(out_dir, config, outcome);
  std::cerr << "run " << config.name << " seed " << config.seed << ": " << outcome.smc.trace.steps.size()
            << " ladder steps, lambda " << outcome.final_system.lambda << ", log Z " << outcome.final_system.log_z;
  if (outcome.tv_to_enumerated) std::cerr << ", TV to enumeration " << *outcome.tv_to_enumerated;
  std::cerr << "\n";
  return kExitOk;
}

int cmd_bound(const std::string& trace_path, const std::string& constants_path, const std::string& mode,
              const std::string& out_path) {
  ConstantsDocument doc;
  try {
    doc = parse_constants(read_text_file(constants_path));
  } catch (const InvalidInputError& e) {
    throw InvalidConfigError(e.what(), "constants");
  }
  const auto& c = doc.constants;
  std::ostringstream os;
  auto load_trace = [&] {
    if (trace_path.empty()) throw InvalidConfigError("mode " + mode + " needs --trace", "trace");
    std::istringstream in(read_text_file(trace_path));
    auto trace = read_trace_csv(in);
    if (trace.empty()) throw InvalidInputError("trace " + trace_path + " has no ladder steps");
    return trace;
  };

  if (mode == "empirical") {
    const auto trace = load_trace();
    std::vector<BoundReport> rows;
    for (const auto& st : trace.steps) rows.push_back(empirical_bound(st.log_z, st.lambda, c));
    write_bound_csv(os, rows);
  } else if (mode == "adaptive") {
    const auto trace = load_trace();
    const auto grid = default_beta_grid(trace, c, doc.beta_grid_size);
    const auto sel = adaptive_select_lambda(trace, c, grid);
    std::vector<BoundReport> rows{sel.report};
    rows.front().provenance += sel.boundary ? " (selected on the grid boundary)" : " (selected)";
    std::vector<std::string> labels{"selected"};
    for (const auto& r : sel.grid) {
      rows.push_back(r);
      labels.emplace_back("grid");
    }
    write_bound_csv(os, rows, labels);
  } else if (mode == "cor1") {
    const auto terms = corollary1_terms(c);
    std::vector<BoundComponent> rows{{"lambda", terms.lambda},
                                     {"delta", terms.delta},
                                     {"k_pm", terms.k_pm},
                                     {"small_ball_log_prob", terms.small_ball_log_prob}};
    rows.insert(rows.end(), terms.addends.begin(), terms.addends.end());
    rows.push_back({"total", terms.total});
    write_components_csv(os, rows);
  } else if (mode == "nonparam") {
    if (!doc.beta_smooth) throw InvalidConfigError("nonparam mode needs beta_smooth in the constants", "beta_smooth");
    const auto r = nonparametric_rate(c.n, *doc.beta_smooth, c.epsilon);
    const std::vector<BoundComponent> rows{{"rate", r.rate},
                                           {"deviation", r.deviation},
                                           {"lambda_n", r.lambda_n},
                                           {"c_n", r.c_n},
                                           {"order_only", r.order_only ? 1.0 : 0.0}};
    write_components_csv(os, rows);
  } else {
    throw InvalidConfigError("unknown bound mode '" + mode + "' (empirical, adaptive, cor1, nonparam)", "mode");
  }
  emit(out_path, os.str());
  return kExitOk;
}

int cmd_experiment(const std::string& name, const std::string& config_path, std::string preset_name,
                   const std::string& seeds_text, const std::string& out_dir, const std::vector<std::string>& overrides,
                   const std::string& n_grid_text) {
  if (config_path.empty() && preset_name.empty()) preset_name = name;
  const RunConfig base = load_config(config_path, preset_name, overrides);
  const auto seeds = parse_seed_list(seeds_text);
  const auto n_grid = parse_size_list(n_grid_text);
  const auto files = run_experiment(name, base, seeds, out_dir, n_grid);
  for (const auto& f : files) std::cerr << "wrote " << f << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential-kernel ABC with adaptive SMC and PAC-Bayes bounds"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_dir = "out";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "run one SMC-ABC ladder and write trace.csv, snapshots.csv, summary.json");
  run->add_option("--config", config_path, "JSON run config");
  run->add_option("--preset", preset_name, "built-in config")->check(CLI::IsMember(preset_names()));
  run->add_option("--seed", seed, "master seed (overrides the config)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--override", overrides, "dotted.key=value applied to the config")->take_all();

  std::string trace_path, constants_path, mode = "empirical", bound_out;
  auto* bound = app.add_subcommand("bound", "evaluate a bound from a ladder trace and a constants document");
  bound->add_option("--trace", trace_path, "trace.csv from a run");
  bound->add_option("--constants", constants_path, "JSON constants document")->required();
  bound->add_option("--mode", mode, "empirical | adaptive | cor1 | nonparam");
  bound->add_option("--out", bound_out, "output CSV (stdout when omitted)");

  std::string exp_name, seeds_text = "1", exp_out = "out", n_grid_text = "30,90,270";
  auto* experiment = app.add_subcommand("experiment", "run a seeded study and write per-seed and aggregate CSVs");
  experiment->add_option("name", exp_name, "exp1 | exp2 | exp3 | toy-discrete | toy-quadrature")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  experiment->add_option("--config", config_path, "JSON base config");
  experiment->add_option("--preset", preset_name, "base config preset (defaults to the experiment name)")
      ->check(CLI::IsMember(preset_names()));
  experiment->add_option("--seeds", seeds_text, "seed list, e.g. 1,2,3 or 1-10");
  experiment->add_option("--out", exp_out, "output directory");
  experiment->add_option("--override", overrides, "dotted.key=value applied to the base config")->take_all();
  experiment->add_option("--n-grid", n_grid_text, "sample sizes for exp2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*run) return cmd_run(config_path, preset_name, seed, out_dir, overrides);
    if (*bound) return cmd_bound(trace_path, constants_path, mode, bound_out);
    if (*experiment) {
      return cmd_experiment(exp_name, config_path, preset_name, seeds_text, exp_out, overrides, n_grid_text);
    }
  } catch (const InvalidConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DegenerateRunError& e) {
    std::cerr << "degenerate particle system: " << e.what() << " (after " << e.trace().steps.size()
              << " ladder steps)\n";
    return kExitDegenerate;
  } catch (const DegenerateSystemError& e) {
    std::cerr << "degenerate particle system: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const LadderStallError& e) {
    std::cerr << "ladder stalled: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const OutOfRangeError& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
