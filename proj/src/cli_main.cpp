#include "moqi/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moqi/core.hpp"
#include "moqi/csv_io.hpp"
#include "moqi/harness.hpp"
#include "moqi/indicators.hpp"
#include "moqi/moea.hpp"
#include "moqi/problems.hpp"

namespace moqi {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kToolVersion = "0.1.0";

/// Console numbers use 6 significant digits; files keep full precision.
std::string console6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json manifest_base(const std::string& command) {
  return json{{"tool", "moqi"}, {"version", kToolVersion}, {"command", command}};
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << '\n';
}

void make_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {"igd",     "gd", "igd_p",   "gd_p",
                                                 "delta_p", "hv", "hv_mc",   "entropy"};
  return names;
}

std::string metric_names_joined() {
  std::string s;
  for (const auto& n : metric_names()) {
    if (!s.empty()) s += ", ";
    s += n;
  }
  return s;
}

bool known_metric(const std::string& name) {
  for (const auto& n : metric_names())
    if (n == name) return true;
  return false;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double_strict(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a number");
  }
}

struct MetricSpec {
  std::string name;
  double p = 2.0;
};

/// Parses "igd,gd,delta_p:2,hv,entropy" style lists. The optional ":p"
/// suffix applies to the _p family and delta_p.
std::vector<MetricSpec> parse_metric_list(const std::string& list) {
  if (list.empty()) throw UsageError("--metrics: empty metric list");
  std::vector<MetricSpec> specs;
  for (const auto& item : split(list, ',')) {
    if (item.empty()) throw UsageError("--metrics: empty entry in metric list");
    MetricSpec ms;
    const auto colon = item.find(':');
    ms.name = item.substr(0, colon);
    if (!known_metric(ms.name))
      throw UsageError("unknown metric '" + ms.name + "'; valid metrics: " +
                       metric_names_joined());
    if (colon != std::string::npos) {
      static const std::vector<std::string> takes_p = {"igd_p", "gd_p", "delta_p"};
      bool ok = false;
      for (const auto& n : takes_p) ok = ok || n == ms.name;
      if (!ok)
        throw UsageError("metric '" + ms.name + "' does not take a :p parameter");
      ms.p = parse_double_strict(item.substr(colon + 1), "--metrics " + ms.name);
      if (ms.p < 1.0) throw UsageError("metric '" + ms.name + "': p must be >= 1");
    }
    specs.push_back(std::move(ms));
  }
  return specs;
}

Vector parse_vector_list(const std::string& list, const std::string& what) {
  Vector v;
  for (const auto& item : split(list, ',')) v.push_back(parse_double_strict(item, what));
  return v;
}

Vector nadir_of(const std::vector<Vector>& points) {
  Vector nadir = points.front();
  for (const auto& p : points)
    for (std::size_t j = 0; j < nadir.size(); ++j) nadir[j] = std::max(nadir[j], p[j]);
  return nadir;
}

JacobianFn jacobian_for(const ProblemSpec& spec) {
  return [spec](const Individual& ind) {
    if (!ind.decision)
      throw UsageError("entropy indicator: member has no decision vector to differentiate");
    return jacobian(spec, *ind.decision);
  };
}

// ---------------------------------------------------------------------------
// front

struct FrontArgs {
  std::string problem;
  int m = 0;
  int n = 0;
  long long count = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

int run_front(const FrontArgs& a) {
  if (a.count < 1) throw UsageError("front: --count must be >= 1");
  const ProblemSpec spec = make_problem(a.problem, a.m, a.n);
  const ReferenceFront front =
      sample_true_front(spec, static_cast<std::size_t>(a.count), a.seed);
  write_front_csv(front, a.out, spec.name);
  std::cout << "wrote " << front.size() << " front points for " << spec.name << " to "
            << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// indicators

struct IndicatorsArgs {
  std::string population;
  std::string reference;
  std::string problem;
  int m = 0;
  int n = 0;
  long long front_size = 1000;
  std::uint64_t front_seed = 12345;
  std::string metrics = "igd,delta_p:2,hv,entropy";
  double qp_tol = 1e-12;
  double hv_scale = 1.1;
  std::string hv_raw_ref;
  long long mc_samples = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

int run_indicators(const IndicatorsArgs& a) {
  const Population pop = read_population_csv(a.population);
  const auto metrics = parse_metric_list(a.metrics);
  const std::string problem_name = !a.problem.empty() ? a.problem : pop.problem_id;
  const auto m = pop.objective_count();

  std::optional<ProblemSpec> spec;
  auto ensure_spec = [&](const char* needed_for) -> const ProblemSpec& {
    if (!spec) {
      if (problem_name.empty())
        throw UsageError(std::string(needed_for) +
                         " needs a problem: pass --problem or add a '# problem:' tag "
                         "to the population file");
      int n_eff = a.n;
      if (n_eff == 0 && pop.has_decisions())
        n_eff = static_cast<int>(pop.members.front().decision->size());
      const int m_eff = a.m != 0 ? a.m : static_cast<int>(m);
      spec = make_problem(problem_name, m_eff, n_eff);
      if (spec->m != static_cast<int>(m))
        throw UsageError("population has " + std::to_string(m) + " objectives but " +
                         spec->name + " was instantiated with m=" +
                         std::to_string(spec->m));
    }
    return *spec;
  };

  std::optional<ReferenceFront> front;
  auto ensure_front = [&](const std::string& needed_for) -> const ReferenceFront& {
    if (!front) {
      if (!a.reference.empty()) {
        front = read_front_csv(a.reference);
      } else {
        if (a.front_size < 1) throw UsageError("--front-size must be >= 1");
        front = sample_true_front(ensure_spec(needed_for.c_str()),
                                  static_cast<std::size_t>(a.front_size), a.front_seed);
      }
      if (front->points.empty())
        throw DataError("reference front is empty");
      if (front->points.front().size() != m)
        throw UsageError("reference front has " +
                         std::to_string(front->points.front().size()) +
                         " objectives but the population has " + std::to_string(m));
    }
    return *front;
  };

  json results = json::array();
  json warnings = json::array();
  const auto pop_objs = objectives_of(pop);

  for (const auto& ms : metrics) {
    json entry{{"indicator", ms.name}};
    double value = 0.0;
    if (ms.name == "igd") {
      value = igd(pop_objs, ensure_front("igd").points);
    } else if (ms.name == "gd") {
      value = gd(pop_objs, ensure_front("gd").points);
    } else if (ms.name == "igd_p" || ms.name == "gd_p" || ms.name == "delta_p") {
      const auto& ref = ensure_front(ms.name).points;
      value = ms.name == "igd_p"  ? igd_p(pop_objs, ref, ms.p)
              : ms.name == "gd_p" ? gd_p(pop_objs, ref, ms.p)
                                  : delta_p(pop_objs, ref, ms.p);
      entry["p"] = ms.p;
    } else if (ms.name == "hv" || ms.name == "hv_mc") {
      HvConfig hc;
      hc.mc_samples = static_cast<std::size_t>(a.mc_samples);
      hc.seed = a.seed;
      if (!a.hv_raw_ref.empty()) {
        hc.reference_point = parse_vector_list(a.hv_raw_ref, "--hv-raw-ref");
        if (hc.reference_point.size() != m)
          throw UsageError("--hv-raw-ref needs " + std::to_string(m) + " components");
        entry["reference_point"] = hc.reference_point;
      } else {
        hc.normalize = true;
        hc.nadir = nadir_of(ensure_front(ms.name).points);
        hc.reference_point = Vector(m, a.hv_scale);
        entry["normalized"] = true;
        entry["reference_scale"] = a.hv_scale;
      }
      const bool exact = ms.name == "hv" && m <= 4;
      const HvResult r = exact ? hv_exact(pop_objs, hc) : hv_monte_carlo(pop_objs, hc);
      if (!exact) {
        entry["std_error"] = r.std_error;
        entry["samples"] = r.samples;
        entry["seed"] = a.seed;
        if (ms.name == "hv")
          warnings.push_back("hv: " + std::to_string(m) +
                             " objectives exceeds the exact algorithm (m <= 4); "
                             "used Monte Carlo");
        if (r.degenerate) warnings.push_back(ms.name + ": sampling box has no volume");
      }
      if (r.discarded > 0)
        warnings.push_back(ms.name + ": " + std::to_string(r.discarded) +
                           " points beyond the reference point were discarded");
      value = r.value;
    } else {  // entropy
      if (!pop.has_decisions() && !pop.has_jacobians())
        throw UsageError(
            "entropy: decision vectors required (population file has only objective "
            "columns)");
      const ProblemSpec& sp = ensure_spec("entropy");
      if (pop.has_decisions() &&
          pop.members.front().decision->size() != static_cast<std::size_t>(sp.n))
        throw UsageError("population decision vectors have " +
                         std::to_string(pop.members.front().decision->size()) +
                         " variables but " + sp.name + " has n=" + std::to_string(sp.n));
      value = pop.has_jacobians()
                  ? entropy_indicator(pop, a.qp_tol).h_value
                  : entropy_indicator(pop, jacobian_for(sp), a.qp_tol).h_value;
      entry["qp_tol"] = a.qp_tol;
    }
    entry["value"] = value;
    results.push_back(std::move(entry));
    std::printf("%-10s %s\n", ms.name.c_str(), console6(value).c_str());
  }

  for (const auto& w : warnings)
    std::cerr << "warning: " << w.get<std::string>() << "\n";

  if (!a.out.empty()) {
    json manifest = manifest_base("indicators");
    manifest["config"] = {{"population", a.population},
                          {"reference", a.reference},
                          {"problem", problem_name},
                          {"metrics", a.metrics},
                          {"front_size", a.front_size},
                          {"front_seed", a.front_seed},
                          {"qp_tol", a.qp_tol},
                          {"hv_reference_scale", a.hv_scale},
                          {"hv_raw_ref", a.hv_raw_ref},
                          {"mc_samples", a.mc_samples},
                          {"seed", a.seed}};
    manifest["results"] = results;
    manifest["warnings"] = warnings;
    write_json_file(manifest, a.out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// run

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw UsageError("config: unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
T get_field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config: field '") + key + "' has the wrong type");
  }
}

ExperimentConfig parse_experiment_config(const json& j) {
  if (!j.is_object()) throw UsageError("config: top level must be an object");
  check_keys(j,
             {"problems", "algorithms", "runs", "seed", "evolution", "indicators",
              "reference_front_size"},
             "config");
  ExperimentConfig cfg;

  if (!j.contains("problems") || !j.at("problems").is_array() || j.at("problems").empty())
    throw UsageError("config: 'problems' must be a non-empty array");
  for (const auto& item : j.at("problems")) {
    ProblemRef ref;
    if (item.is_string()) {
      ref.name = item.get<std::string>();
    } else if (item.is_object()) {
      check_keys(item, {"name", "m", "n"}, "problems[]");
      if (!item.contains("name"))
        throw UsageError("config: every problems[] entry needs a 'name'");
      ref.name = get_field<std::string>(item, "name", "");
      ref.m = get_field<int>(item, "m", 0);
      ref.n = get_field<int>(item, "n", 0);
    } else {
      throw UsageError("config: problems[] entries must be strings or objects");
    }
    cfg.problems.push_back(std::move(ref));
  }

  if (!j.contains("algorithms") || !j.at("algorithms").is_array() ||
      j.at("algorithms").empty())
    throw UsageError("config: 'algorithms' must be a non-empty array");
  for (const auto& item : j.at("algorithms")) {
    AlgorithmRef ref;
    if (item.is_string()) {
      ref.kind = item.get<std::string>();
    } else if (item.is_object()) {
      check_keys(item, {"kind", "label", "csv_path"}, "algorithms[]");
      if (!item.contains("kind"))
        throw UsageError("config: every algorithms[] entry needs a 'kind'");
      ref.kind = get_field<std::string>(item, "kind", "");
      ref.label = get_field<std::string>(item, "label", "");
      ref.csv_path = get_field<std::string>(item, "csv_path", "");
    } else {
      throw UsageError("config: algorithms[] entries must be strings or objects");
    }
    cfg.algorithms.push_back(std::move(ref));
  }

  cfg.runs = get_field<int>(j, "runs", cfg.runs);
  cfg.seed = get_field<std::uint64_t>(j, "seed", cfg.seed);
  cfg.reference_front_size =
      get_field<std::size_t>(j, "reference_front_size", cfg.reference_front_size);

  if (j.contains("evolution")) {
    const json& e = j.at("evolution");
    if (!e.is_object()) throw UsageError("config: 'evolution' must be an object");
    check_keys(e,
               {"pop_size", "max_evaluations", "crossover_prob", "crossover_eta",
                "mutation_prob", "mutation_eta"},
               "evolution");
    cfg.evolution.pop_size = get_field<int>(e, "pop_size", cfg.evolution.pop_size);
    cfg.evolution.max_evaluations =
        get_field<long long>(e, "max_evaluations", cfg.evolution.max_evaluations);
    cfg.evolution.crossover_prob =
        get_field<double>(e, "crossover_prob", cfg.evolution.crossover_prob);
    cfg.evolution.crossover_eta =
        get_field<double>(e, "crossover_eta", cfg.evolution.crossover_eta);
    cfg.evolution.mutation_prob =
        get_field<double>(e, "mutation_prob", cfg.evolution.mutation_prob);
    cfg.evolution.mutation_eta =
        get_field<double>(e, "mutation_eta", cfg.evolution.mutation_eta);
  }

  if (j.contains("indicators")) {
    const json& ind = j.at("indicators");
    if (!ind.is_object()) throw UsageError("config: 'indicators' must be an object");
    check_keys(ind,
               {"metrics", "p", "qp_tol", "hv_normalize", "hv_reference_scale",
                "hv_mc_samples"},
               "indicators");
    if (ind.contains("metrics")) {
      if (!ind.at("metrics").is_array() || ind.at("metrics").empty())
        throw UsageError("config: indicators.metrics must be a non-empty array");
      cfg.indicators.metrics.clear();
      for (const auto& mj : ind.at("metrics")) {
        if (!mj.is_string())
          throw UsageError("config: indicators.metrics entries must be strings");
        const std::string name = mj.get<std::string>();
        if (name.find(':') != std::string::npos)
          throw UsageError("config: metric '" + name +
                           "': set the order via indicators.p, not a :p suffix");
        if (!known_metric(name))
          throw UsageError("config: unknown metric '" + name + "'; valid metrics: " +
                           metric_names_joined());
        cfg.indicators.metrics.push_back(name);
      }
    }
    cfg.indicators.p = get_field<double>(ind, "p", cfg.indicators.p);
    cfg.indicators.qp_tol = get_field<double>(ind, "qp_tol", cfg.indicators.qp_tol);
    cfg.indicators.hv_normalize =
        get_field<bool>(ind, "hv_normalize", cfg.indicators.hv_normalize);
    cfg.indicators.hv_reference_scale =
        get_field<double>(ind, "hv_reference_scale", cfg.indicators.hv_reference_scale);
    cfg.indicators.hv_mc_samples =
        get_field<std::size_t>(ind, "hv_mc_samples", cfg.indicators.hv_mc_samples);
  }
  return cfg;
}

json echo_config(const ExperimentConfig& cfg) {
  json problems = json::array();
  for (const auto& p : cfg.problems)
    problems.push_back({{"name", p.name}, {"m", p.m}, {"n", p.n}});
  json algorithms = json::array();
  for (const auto& a : cfg.algorithms)
    algorithms.push_back(
        {{"kind", a.kind}, {"label", a.label}, {"csv_path", a.csv_path}});
  return json{
      {"problems", problems},
      {"algorithms", algorithms},
      {"runs", cfg.runs},
      {"seed", cfg.seed},
      {"evolution",
       {{"pop_size", cfg.evolution.pop_size},
        {"max_evaluations", cfg.evolution.max_evaluations},
        {"crossover_prob", cfg.evolution.crossover_prob},
        {"crossover_eta", cfg.evolution.crossover_eta},
        {"mutation_prob", cfg.evolution.mutation_prob},
        {"mutation_eta", cfg.evolution.mutation_eta}}},
      {"indicators",
       {{"metrics", cfg.indicators.metrics},
        {"p", cfg.indicators.p},
        {"qp_tol", cfg.indicators.qp_tol},
        {"hv_normalize", cfg.indicators.hv_normalize},
        {"hv_reference_scale", cfg.indicators.hv_reference_scale},
        {"hv_mc_samples", cfg.indicators.hv_mc_samples}}},
      {"reference_front_size", cfg.reference_front_size}};
}

int run_run(const std::string& config_path, const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot open config file: " + config_path);
  json j;
  try {
    j = json::parse(in, nullptr, true, /*allow comments*/ true);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("config ") + config_path + ": " + e.what());
  }
  const ExperimentConfig cfg = parse_experiment_config(j);
  make_out_dir(out_dir);
  const ExperimentResult res = run_experiment(cfg);
  write_experiment_csv(res, out_dir);

  json table = json::array();
  for (const auto& c : res.cells)
    table.push_back({{"problem", c.problem},
                     {"algorithm", c.algorithm},
                     {"indicator", c.indicator},
                     {"mean", c.mean},
                     {"std", c.stddev}});
  json seeds = json::array();
  for (int r = 0; r < cfg.runs; ++r)
    seeds.push_back(cfg.seed + static_cast<std::uint64_t>(r));
  json manifest = manifest_base("run");
  manifest["config"] = echo_config(cfg);
  manifest["run_seeds"] = seeds;
  manifest["table"] = table;
  manifest["outputs"] = {"summary.csv", "raw.csv"};
  manifest["wall_seconds"] = res.wall_seconds;
  manifest["warnings"] = json::array();
  write_json_file(manifest, out_dir + "/manifest.json");

  for (const auto& c : res.cells)
    std::printf("%-8s %-10s %-8s %s (%s)\n", c.problem.c_str(), c.algorithm.c_str(),
                c.indicator.c_str(), console6(c.mean).c_str(),
                console6(c.stddev).c_str());
  std::cout << "wrote summary.csv, raw.csv, manifest.json to " << out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// timing

int run_timing(const std::string& mode, const std::string& out_dir,
               const TimingConfig& tc) {
  const bool popsize = mode == "popsize";
  if (!popsize && mode != "objectives")
    throw UsageError("timing: --mode must be popsize or objectives");
  make_out_dir(out_dir);
  const auto rows = popsize ? timing_study_popsize(tc) : timing_study_objectives(tc);
  const std::string csv_name = popsize ? "timing_popsize.csv" : "timing_objectives.csv";
  const std::string size_col = popsize ? "k" : "m";
  write_timing_csv(rows, out_dir + "/" + csv_name, size_col);

  json manifest = manifest_base("timing");
  manifest["config"] = {{"mode", mode},
                        {"problem", tc.problem},
                        {"sizes", tc.sizes},
                        {"objective_counts", tc.objective_counts},
                        {"reps", tc.reps},
                        {"seed", tc.seed},
                        {"mc_samples", tc.mc_samples},
                        {"qp_tol", tc.qp_tol}};
  manifest["outputs"] = {csv_name};
  json warnings = json::array();
  for (const auto& r : rows)
    if (r.ordering_flag && r.indicator == "entropy")
      warnings.push_back("at " + size_col + "=" + std::to_string(r.size) +
                         " delta_p was slower than entropy (soft ordering check)");
  manifest["warnings"] = warnings;
  write_json_file(manifest, out_dir + "/manifest.json");

  for (const auto& r : rows)
    std::printf("%-8s %s=%-6d median %ss over %d reps\n", r.indicator.c_str(),
                size_col.c_str(), r.size, console6(r.median_seconds).c_str(), r.reps);
  std::cout << "wrote " << csv_name << ", manifest.json to " << out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// trace

int run_trace(const TraceConfig& tc, const std::string& out_dir) {
  make_out_dir(out_dir);
  const auto rows = convergence_trace(tc);
  write_trace_csv(rows, out_dir + "/trace.csv");

  json manifest = manifest_base("trace");
  manifest["config"] = {{"problem", tc.problem},
                        {"m", tc.m},
                        {"n", tc.n},
                        {"algorithm", tc.algorithm},
                        {"pop_size", tc.evolution.pop_size},
                        {"max_evaluations", tc.evolution.max_evaluations},
                        {"seed", tc.evolution.seed},
                        {"qp_tol", tc.qp_tol},
                        {"front_size", tc.front_size},
                        {"front_seed", tc.front_seed}};
  manifest["generations"] = rows.size();
  manifest["outputs"] = {"trace.csv"};
  manifest["warnings"] = json::array();
  write_json_file(manifest, out_dir + "/manifest.json");

  if (!rows.empty())
    std::printf("H: generation 0 %s -> generation %d %s (%zu generations)\n",
                console6(rows.front().h).c_str(), rows.back().generation,
                console6(rows.back().h).c_str(), rows.size());
  std::cout << "wrote trace.csv, manifest.json to " << out_dir << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"moqi: multi-objective performance indicators and benchmark runner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("moqi ") + kToolVersion);

  FrontArgs fa;
  auto* front_cmd =
      app.add_subcommand("front", "Sample a problem's analytic Pareto front to CSV");
  front_cmd->add_option("--problem", fa.problem, "Problem name (dtlz1/2/5/7, zdt2)")
      ->required();
  front_cmd->add_option("--m", fa.m, "Objective count (0 = problem default)");
  front_cmd->add_option("--n", fa.n, "Decision dimension (0 = problem default)");
  front_cmd->add_option("--count", fa.count, "Number of front points");
  front_cmd->add_option("--seed", fa.seed, "Sampling seed");
  front_cmd->add_option("--out", fa.out, "Output CSV path")->required();

  IndicatorsArgs ia;
  auto* ind_cmd = app.add_subcommand(
      "indicators", "Compute performance indicators for a population CSV");
  ind_cmd->add_option("--population", ia.population, "Population CSV (f1..fm, optional x1..xn)")
      ->required();
  ind_cmd->add_option("--reference", ia.reference, "Reference front CSV");
  ind_cmd->add_option("--problem", ia.problem,
                      "Problem name (overrides the population file's '# problem:' tag)");
  ind_cmd->add_option("--m", ia.m, "Objective count for --problem");
  ind_cmd->add_option("--n", ia.n, "Decision dimension for --problem");
  ind_cmd->add_option("--front-size", ia.front_size,
                      "Points sampled from the problem's front when no --reference");
  ind_cmd->add_option("--front-seed", ia.front_seed, "Seed for front sampling");
  ind_cmd->add_option("--metrics", ia.metrics,
                      "Comma list: igd, gd, igd_p:p, gd_p:p, delta_p:p, hv, hv_mc, entropy");
  ind_cmd->add_option("--qp-tol", ia.qp_tol, "Entropy QP stationarity tolerance");
  ind_cmd->add_option("--hv-ref", ia.hv_scale,
                      "Hypervolume reference coordinate in normalized space");
  ind_cmd->add_option("--hv-raw-ref", ia.hv_raw_ref,
                      "Raw-space reference point (comma list; disables normalization)");
  ind_cmd->add_option("--mc-samples", ia.mc_samples, "Monte Carlo samples for hv_mc");
  ind_cmd->add_option("--seed", ia.seed, "Monte Carlo seed");
  ind_cmd->add_option("--out", ia.out, "Write a JSON result manifest here");

  std::string run_config, run_out;
  auto* run_cmd =
      app.add_subcommand("run", "Run an experiment table from a JSON config");
  run_cmd->add_option("--config", run_config, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out", run_out, "Output directory")->required();

  TimingConfig tc;
  std::string timing_mode, timing_out, timing_sizes, timing_objectives;
  auto* timing_cmd =
      app.add_subcommand("timing", "Wall-time studies over population size or objectives");
  timing_cmd->add_option("--mode", timing_mode, "popsize or objectives")->required();
  timing_cmd->add_option("--out", timing_out, "Output directory")->required();
  timing_cmd->add_option("--problem", tc.problem, "Problem family (default dtlz2)");
  timing_cmd->add_option("--sizes", timing_sizes, "Comma list of population sizes");
  timing_cmd->add_option("--objectives", timing_objectives,
                         "Comma list of objective counts");
  timing_cmd->add_option("--reps", tc.reps, "Repetitions per measurement (median)");
  timing_cmd->add_option("--seed", tc.seed, "Population sampling seed");
  timing_cmd->add_option("--mc-samples", tc.mc_samples,
                         "Monte Carlo samples for hypervolume above 4 objectives");
  timing_cmd->add_option("--qp-tol", tc.qp_tol, "Entropy QP tolerance");

  TraceConfig trc;
  std::string trace_out;
  auto* trace_cmd = app.add_subcommand(
      "trace", "Per-generation entropy (and igd) trace of one optimizer run");
  trace_cmd->add_option("--problem", trc.problem, "Problem name (default zdt2)");
  trace_cmd->add_option("--m", trc.m, "Objective count (0 = problem default)");
  trace_cmd->add_option("--n", trc.n, "Decision dimension (0 = problem default)");
  trace_cmd->add_option("--algo", trc.algorithm, "nsga2 or random");
  trace_cmd->add_option("--pop", trc.evolution.pop_size, "Population size");
  trace_cmd->add_option("--evals", trc.evolution.max_evaluations, "Evaluation budget");
  trace_cmd->add_option("--seed", trc.evolution.seed, "Run seed");
  trace_cmd->add_option("--qp-tol", trc.qp_tol, "Entropy QP tolerance");
  trace_cmd->add_option("--front-size", trc.front_size,
                        "Reference front size for the igd column (0 disables)");
  trace_cmd->add_option("--front-seed", trc.front_seed, "Seed for front sampling");
  trace_cmd->add_option("--out", trace_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (front_cmd->parsed()) return run_front(fa);
    if (ind_cmd->parsed()) return run_indicators(ia);
    if (run_cmd->parsed()) return run_run(run_config, run_out);
    if (timing_cmd->parsed()) {
      if (!timing_sizes.empty()) {
        tc.sizes.clear();
        for (const auto& s : split(timing_sizes, ','))
          tc.sizes.push_back(static_cast<int>(parse_double_strict(s, "--sizes")));
      }
      if (!timing_objectives.empty()) {
        tc.objective_counts.clear();
        for (const auto& s : split(timing_objectives, ','))
          tc.objective_counts.push_back(
              static_cast<int>(parse_double_strict(s, "--objectives")));
      }
      return run_timing(timing_mode, timing_out, tc);
    }
    if (trace_cmd->parsed()) return run_trace(trc, trace_out);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace moqi
