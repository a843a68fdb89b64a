#include "rgg/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rgg/errors.hpp"
#include "rgg/graph.hpp"
#include "rgg/moments1d.hpp"
#include "rgg/moments2d.hpp"
#include "rgg/polytope.hpp"
#include "rgg/radius_bound.hpp"
#include "rgg/random.hpp"
#include "rgg/sis.hpp"
#include "rgg/spectral.hpp"

namespace rgg::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

enum class Kind { kInt, kReal };

struct Param {
  std::string name;
  Kind kind;
  json fallback;  // null means "derived" or "auto"
  std::string help;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  bool randomized = true;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> all = {
      {"generate",
       "Sample an RGG and write edges.txt, points.csv and generate.json",
       {{"n", Kind::kInt, 1000, "node count"},
        {"d", Kind::kInt, 1, "dimension"},
        {"r", Kind::kReal, 0.01, "connectivity radius (< 0.5)"}}},
      {"moments",
       "Empirical vs analytic spectral moments over several realizations",
       {{"n", Kind::kInt, 1000, "node count"},
        {"d", Kind::kInt, 1, "dimension (1 or 2)"},
        {"r", Kind::kReal, nullptr, "radius; default from mean_degree"},
        {"mean_degree", Kind::kReal, nullptr, "target E[d_i]; default 20 (d=1) or 50 (d=2)"},
        {"realizations", Kind::kInt, 10, "number of seeds"},
        {"max_order", Kind::kInt, 4, "largest moment order K"},
        {"samples", Kind::kInt, 1000000, "Monte Carlo samples for 2D orders >= 4"}}},
      {"volumes",
       "Monte Carlo check of Vol(H_k(1)) against the reference list",
       {{"max_order", Kind::kInt, 8, "largest k"},
        {"samples", Kind::kInt, 10000000, "chains per order"}}},
      {"bound",
       "Spectral radius vs c_d n r^d sweep (CSV)",
       {{"n", Kind::kInt, 1000, "node count"},
        {"d", Kind::kInt, 1, "dimension"},
        {"dbar_min", Kind::kReal, 10, "first mean degree"},
        {"dbar_max", Kind::kReal, 100, "last mean degree"},
        {"dbar_step", Kind::kReal, 10, "mean degree step"},
        {"seeds", Kind::kInt, 5, "realizations per mean degree"},
        {"c", Kind::kReal, nullptr, "growth constant c_d; default per dimension"},
        {"samples", Kind::kInt, 1000000, "Monte Carlo samples when fitting c_2"}}},
      {"design",
       "Largest radius satisfying c_d n r^d < delta / beta",
       {{"n", Kind::kInt, 1000, "node count"},
        {"d", Kind::kInt, 1, "dimension"},
        {"beta", Kind::kReal, 0.02, "infection probability"},
        {"delta", Kind::kReal, 0.35, "recovery probability"},
        {"c", Kind::kReal, nullptr, "growth constant c_d; default per dimension"},
        {"samples", Kind::kInt, 1000000, "Monte Carlo samples when fitting c_2"}}},
      {"simulate",
       "Discrete-time SIS run: trajectory.csv, heatmap.ppm, simulate.json",
       {{"n", Kind::kInt, 1000, "node count"},
        {"d", Kind::kInt, 1, "dimension"},
        {"r", Kind::kReal, 0.005, "connectivity radius"},
        {"beta", Kind::kReal, 0.02, "infection probability"},
        {"delta", Kind::kReal, 0.018, "recovery probability"},
        {"level", Kind::kReal, 0.01, "p_i[0] ~ level * U[0,1)"},
        {"steps", Kind::kInt, 1000, "horizon"},
        {"threshold", Kind::kReal, 1e-6, "die-out threshold on max_i p_i"},
        {"p0_seed", Kind::kInt, nullptr, "seed of p0; default derived from seed"}}},
  };
  return all;
}

struct Invocation {
  const Command* command = nullptr;
  json config;  // fully resolved
  fs::path out_dir;
};

json parse_value(const Param& p, const std::string& text) {
  try {
    std::size_t pos = 0;
    if (p.kind == Kind::kInt) {
      long long v = std::stoll(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return v;
    }
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParameterError(fmt::format("--{}: cannot parse '{}'", p.name, text));
  }
}

json check_config_value(const Param& p, const json& v) {
  if (v.is_null()) return v;
  if (p.kind == Kind::kInt && !v.is_number_integer()) {
    throw ParameterError(fmt::format("config key '{}' must be an integer", p.name));
  }
  if (p.kind == Kind::kReal && !v.is_number()) {
    throw ParameterError(fmt::format("config key '{}' must be a number", p.name));
  }
  return v;
}

json load_config_file(const fs::path& path, const Command& cmd) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json file;
  try {
    file = json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError(fmt::format("config file {}: {}", path.string(), e.what()));
  }
  if (!file.is_object()) throw ParameterError("config file must hold a JSON object");
  if (file.contains(cmd.name) && file[cmd.name].is_object()) return file[cmd.name];
  json flat = json::object();
  for (auto& [key, value] : file.items()) {
    const bool other_command = value.is_object() && std::any_of(commands().begin(), commands().end(),
                                                                [&](const Command& c) { return c.name == key; });
    if (!other_command) flat[key] = value;
  }
  return flat;
}

std::int64_t as_int(const json& config, const std::string& key) {
  return config.at(key).get<std::int64_t>();
}
double as_real(const json& config, const std::string& key) { return config.at(key).get<double>(); }

std::size_t as_count(const json& config, const std::string& key) {
  auto v = as_int(config, key);
  if (v < 0) throw ParameterError(fmt::format("{} must be >= 0", key));
  return static_cast<std::size_t>(v);
}

int as_dim(const json& config) {
  auto d = as_int(config, "d");
  if (d < 1) throw ParameterError("d must be >= 1");
  return static_cast<int>(d);
}

std::uint64_t seed_of(const json& config) { return config.at("seed").get<std::uint64_t>(); }

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  f << j.dump(2) << '\n';
  if (!f) throw IoError("failed writing " + path.string());
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  return f;
}

// --- commands --------------------------------------------------------------

json cmd_generate(const Invocation& inv) {
  const auto& c = inv.config;
  RggSpec spec{as_count(c, "n"), as_real(c, "r"), as_dim(c), seed_of(c)};
  Graph g = build(spec);
  {
    auto f = open_output(inv.out_dir / "edges.txt");
    write_edge_list(f, g);
  }
  {
    auto f = open_output(inv.out_dir / "points.csv");
    write_points_csv(f, g.positions());
  }
  json report{{"command", "generate"},
              {"config", c},
              {"edges", g.edge_count()},
              {"mean_degree", g.mean_degree()},
              {"expected_degree", expected_degree(spec)},
              {"files", {"edges.txt", "points.csv"}}};
  write_json(inv.out_dir / "generate.json", report);
  return report;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / (v.size() - 1));
}

json cmd_moments(Invocation& inv) {
  auto& c = inv.config;
  const int d = as_dim(c);
  if (d != 1 && d != 2) throw ParameterError("moments supports d = 1 or d = 2 only");
  const std::size_t n = as_count(c, "n");
  if (c["r"].is_null()) {
    if (c["mean_degree"].is_null()) c["mean_degree"] = d == 1 ? 20.0 : 50.0;
    c["r"] = radius_for_mean_degree(n, as_real(c, "mean_degree"), d);
  }
  const double r = as_real(c, "r");
  const int K = static_cast<int>(as_int(c, "max_order"));
  if (K < 1) throw ParameterError("max_order must be >= 1");
  const std::size_t realizations = as_count(c, "realizations");
  const std::uint64_t seed = seed_of(c);

  std::vector<std::vector<double>> per_k(K);
  json runs = json::array();
  for (std::size_t s = 0; s < realizations; ++s) {
    RggSpec spec{n, r, d, derive_seed(seed, s)};
    Graph g = build(spec);
    auto m = moments_by_walks(g, K);
    for (int k = 0; k < K; ++k) per_k[k].push_back(m[k]);
    runs.push_back({{"graph_seed", spec.seed}, {"mean_degree", g.mean_degree()}, {"moments", m}});
  }

  json table = json::array();
  for (int k = 1; k <= K; ++k) {
    json row{{"k", k},
             {"empirical_mean", mean(per_k[k - 1])},
             {"empirical_std", sample_std(per_k[k - 1])}};
    try {
      if (d == 1) {
        auto p = expected_moment_1d(n, r, k);
        row["analytic"] = p.to_json();
      } else if (k == 1) {
        row["analytic"] = {{"k", 1}, {"value", 0.0}, {"source", "exact"}};
      } else if (k <= 3) {
        row["analytic"] = {{"k", k}, {"value", expected_moment_2d_closed(n, r, k)},
                           {"source", "closed-form"}};
      } else {
        auto e = expected_moment_2d_mc(n, r, k, as_count(c, "samples"), derive_seed(seed, 1000 + k));
        row["analytic"] = {{"k", k},
                           {"value", e.value},
                           {"source", "monte-carlo"},
                           {"std_error", e.value_std_error},
                           {"coefficient", to_json(e)}};
      }
    } catch (const UnsupportedOrderError& e) {
      row["analytic"] = {{"k", k}, {"value", nullptr}, {"error", e.what()}};
    }
    table.push_back(row);
  }
  json report{{"command", "moments"}, {"config", c}, {"table", table}, {"realizations", runs}};
  write_json(inv.out_dir / "moments.json", report);
  return report;
}

json cmd_volumes(const Invocation& inv) {
  const auto& c = inv.config;
  const int kmax = static_cast<int>(as_int(c, "max_order"));
  if (kmax < 1) throw ParameterError("max_order must be >= 1");
  const std::size_t samples = as_count(c, "samples");
  const std::uint64_t seed = seed_of(c);
  const auto reference = reference_volumes();
  const auto& cal = volume_formula_calibration();

  json estimates = json::array();
  bool all_pass = true;
  for (int k = 1; k <= kmax; ++k) {
    auto e = estimate_volume(k, samples, derive_seed(seed, k));
    json row = to_json(e);
    if (k <= reference.order()) {
      const double ref = reference.value(k);
      const bool pass = std::fabs(e.estimate - ref) <= 3.0 * e.std_error;
      row["reference"] = ref;
      row["within_3_std_errors"] = pass;
      all_pass = all_pass && pass;
    } else {
      row["reference"] = nullptr;
      row["within_3_std_errors"] = nullptr;
    }
    try {
      row["formula_value"] = volume_from_eulerian(k);
    } catch (const FormulaMismatchError& m) {
      row["formula_value"] = m.formula_value();
      row["formula_mismatch"] = m.what();
    } catch (const UnsupportedOrderError&) {
      row["formula_value"] = nullptr;
    }
    estimates.push_back(row);
  }
  json report{{"command", "volumes"},
              {"config", c},
              {"calibration",
               {{"variant", cal.variant.describe()},
                {"accepted", cal.accepted},
                {"matched", cal.matched},
                {"mismatched", cal.mismatched}}},
              {"estimates", estimates},
              {"all_within_3_std_errors", all_pass}};
  write_json(inv.out_dir / "volumes.json", report);
  return report;
}

GrowthConstant resolve_growth_constant(json& c, int d) {
  if (!c["c"].is_null()) return {as_real(c, "c"), "user"};
  auto g = default_growth_constant(d, as_count(c, "samples"), seed_of(c));
  c["c"] = g.c;
  c["c_provenance"] = g.provenance;
  return g;
}

json cmd_bound(Invocation& inv) {
  auto& c = inv.config;
  const int d = as_dim(c);
  const std::size_t n = as_count(c, "n");
  const double lo = as_real(c, "dbar_min"), hi = as_real(c, "dbar_max"), step = as_real(c, "dbar_step");
  if (!(step > 0.0)) throw ParameterError("dbar_step must be > 0");
  std::vector<double> targets;
  for (long i = 0;; ++i) {
    const double t = lo + i * step;
    if (t > hi + 1e-9 * std::max(1.0, std::fabs(hi))) break;
    targets.push_back(t);
  }
  auto growth = resolve_growth_constant(c, d);
  auto rows = bound_sweep(n, d, targets, static_cast<int>(as_int(c, "seeds")), growth.c, seed_of(c));
  {
    auto f = open_output(inv.out_dir / "bound.csv");
    write_sweep_csv(f, rows);
  }
  std::size_t violations = 0, below_mean = 0;
  for (const auto& r : rows) {
    violations += r.violated;
    below_mean += r.lambda_max + 1e-9 < r.mean_degree;
  }
  json report{{"command", "bound"},
              {"config", c},
              {"rows", rows.size()},
              {"violations", violations},
              {"lambda_below_mean_degree", below_mean},
              {"files", {"bound.csv"}}};
  write_json(inv.out_dir / "bound.json", report);
  return report;
}

json cmd_design(Invocation& inv) {
  auto& c = inv.config;
  const int d = as_dim(c);
  auto growth = resolve_growth_constant(c, d);
  auto result = design_radius(as_count(c, "n"), d, as_real(c, "beta"), as_real(c, "delta"), growth.c,
                              growth.provenance);
  json report{{"command", "design"}, {"config", c}, {"result", result.to_json()}};
  write_json(inv.out_dir / "design.json", report);
  return report;
}

json cmd_simulate(Invocation& inv) {
  auto& c = inv.config;
  const std::uint64_t seed = seed_of(c);
  if (c["p0_seed"].is_null()) c["p0_seed"] = derive_seed(seed, 1);
  RggSpec spec{as_count(c, "n"), as_real(c, "r"), as_dim(c), seed};
  Graph g = build(spec);
  EpidemicParams params;
  params.beta = as_real(c, "beta");
  params.delta = as_real(c, "delta");
  params.steps = as_count(c, "steps");
  params.die_out_threshold = as_real(c, "threshold");
  params.p0 = seed_infection(spec.n, as_real(c, "level"), c["p0_seed"].get<std::uint64_t>());
  auto traj = simulate(g, params);
  {
    auto f = open_output(inv.out_dir / "trajectory.csv");
    write_trajectory_csv(f, traj);
  }
  {
    auto f = open_output(inv.out_dir / "heatmap.ppm");
    write_heatmap_ppm(f, traj);
  }
  json report{{"command", "simulate"},
              {"config", c},
              {"graph", {{"edges", g.edge_count()}, {"mean_degree", g.mean_degree()}}},
              {"outcome", traj.summary_json()},
              {"files", {"trajectory.csv", "heatmap.ppm"}}};
  if (params.beta > 0.0) report["threshold"] = threshold_check(g, params.beta, params.delta).to_json();
  write_json(inv.out_dir / "simulate.json", report);
  return report;
}

json dispatch(Invocation& inv) {
  const auto& name = inv.command->name;
  if (name == "generate") return cmd_generate(inv);
  if (name == "moments") return cmd_moments(inv);
  if (name == "volumes") return cmd_volumes(inv);
  if (name == "bound") return cmd_bound(inv);
  if (name == "design") return cmd_design(inv);
  return cmd_simulate(inv);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random geometric graphs: spectral moments, radius bounds and SIS spreading", "rgg"};
  app.require_subcommand(1);
  std::string config_path;
  std::string seed_text;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "flat JSON config; CLI flags override it");
  app.add_option("--seed", seed_text, "master seed (auto-generated and recorded if absent)");
  app.add_option("--out", out_dir, "output directory");

  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    for (const auto& p : cmd.params) {
      auto& slot = flag_values[cmd.name][p.name];
      auto flag = "--" + p.name;
      std::string dashed = p.name;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      if (dashed != p.name) flag += ",--" + dashed;
      sub->add_option(flag, slot, p.help);
    }
    subs[cmd.name] = sub;
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    Invocation inv;
    for (const auto& cmd : commands()) {
      if (subs[cmd.name]->parsed()) inv.command = &cmd;
    }
    const Command& cmd = *inv.command;
    json file = config_path.empty() ? json::object() : load_config_file(config_path, cmd);

    json config = json::object();
    for (const auto& p : cmd.params) config[p.name] = p.fallback;
    config["seed"] = nullptr;
    for (auto& [key, value] : file.items()) {
      if (key == "seed") {
        if (!value.is_number_unsigned() && !value.is_null()) {
          throw ParameterError("config key 'seed' must be a non-negative integer");
        }
        config["seed"] = value;
        continue;
      }
      auto it = std::find_if(cmd.params.begin(), cmd.params.end(),
                             [&](const Param& p) { return p.name == key; });
      if (it == cmd.params.end()) {
        throw ParameterError(fmt::format("unknown config key '{}' for command {}", key, cmd.name));
      }
      config[key] = check_config_value(*it, value);
    }
    for (const auto& p : cmd.params) {
      auto* opt = subs[cmd.name]->get_option("--" + p.name);
      if (opt->count() > 0) config[p.name] = parse_value(p, flag_values[cmd.name][p.name]);
    }
    if (!seed_text.empty()) {
      try {
        std::size_t pos = 0;
        config["seed"] = static_cast<std::uint64_t>(std::stoull(seed_text, &pos));
        if (pos != seed_text.size()) throw std::invalid_argument(seed_text);
      } catch (const std::exception&) {
        throw ParameterError("--seed must be a non-negative integer");
      }
    }
    config["seed_auto_generated"] = config["seed"].is_null();
    if (config["seed"].is_null()) {
      std::random_device rd;
      config["seed"] = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }

    inv.config = std::move(config);
    inv.out_dir = out_dir;
    std::error_code ec;
    fs::create_directories(inv.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    json report = dispatch(inv);
    out << report.dump(2) << '\n';
    return 0;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedOrderError& e) {
    err << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rgg::cli
