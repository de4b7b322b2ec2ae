#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "moqi/cli.hpp"
#include "moqi/csv_io.hpp"
#include "moqi/problems.hpp"

using namespace moqi;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("moqi_cli_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned = {"moqi"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(owned.size());
  for (const auto& s : owned) argv.push_back(s.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

json load_json(const std::string& path) { return json::parse(read_text(path)); }

double metric_value(const json& manifest, const std::string& name) {
  for (const auto& entry : manifest.at("results"))
    if (entry.at("indicator") == name) return entry.at("value").get<double>();
  REQUIRE(false);
  return 0.0;
}

}  // namespace

TEST_CASE("argument plumbing: help, version and parse errors") {
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"--version"}) == 0);
  CHECK(run_cli({"front", "--help"}) == 0);
  CHECK(run_cli({}) == 2);                            // a subcommand is required
  CHECK(run_cli({"launch"}) == 2);                    // unknown subcommand
  CHECK(run_cli({"front", "--bogus", "x"}) == 2);     // unknown flag
  CHECK(run_cli({"front", "--problem", "dtlz2"}) == 2);  // missing required --out
}

TEST_CASE("front subcommand samples reproducible reference fronts") {
  TempDir dir;
  const std::string out = dir.file("front.csv");

  SUBCASE("writes the requested number of points on the analytic front") {
    REQUIRE(run_cli({"front", "--problem", "dtlz2", "--count", "64", "--seed", "11",
                     "--out", out}) == 0);
    const ReferenceFront front = read_front_csv(out);
    REQUIRE(front.size() == 64);
    for (const auto& p : front.points) {
      REQUIRE(p.size() == 3);
      double s = 0.0;
      for (double f : p) s += f * f;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(read_text(out).rfind("# problem: dtlz2", 0) == 0);
  }

  SUBCASE("the same seed reproduces the file byte for byte") {
    const std::string out2 = dir.file("front2.csv");
    REQUIRE(run_cli({"front", "--problem", "zdt2", "--count", "32", "--seed", "4",
                     "--out", out}) == 0);
    REQUIRE(run_cli({"front", "--problem", "zdt2", "--count", "32", "--seed", "4",
                     "--out", out2}) == 0);
    CHECK(read_text(out) == read_text(out2));
  }

  SUBCASE("invalid count is a usage error") {
    CHECK(run_cli({"front", "--problem", "dtlz2", "--count", "0", "--out", out}) == 2);
  }

  SUBCASE("unknown problem is a usage error") {
    CHECK(run_cli({"front", "--problem", "dtlz9", "--out", out}) == 2);
  }
}

TEST_CASE("indicators subcommand computes metrics from CSV input") {
  TempDir dir;
  // A small zdt2-shaped population, objectives only.
  const std::string pop_path = dir.file("pop.csv");
  write_text(pop_path,
             "# problem: zdt2\n"
             "f1,f2\n"
             "0,1\n"
             "0.25,0.9375\n"
             "0.5,0.75\n"
             "1,0\n");

  SUBCASE("a population used as its own reference scores zero distance") {
    const std::string manifest_path = dir.file("m.json");
    REQUIRE(run_cli({"indicators", "--population", pop_path, "--reference", pop_path,
                     "--metrics", "igd,gd,delta_p:2", "--out", manifest_path}) == 0);
    const json manifest = load_json(manifest_path);
    CHECK(metric_value(manifest, "igd") == 0.0);
    CHECK(metric_value(manifest, "gd") == 0.0);
    CHECK(metric_value(manifest, "delta_p") == 0.0);
    CHECK(manifest.at("command") == "indicators");
    CHECK(manifest.at("config").at("population") == pop_path);
  }

  SUBCASE("the problem tag supplies the reference front implicitly") {
    const std::string manifest_path = dir.file("m2.json");
    REQUIRE(run_cli({"indicators", "--population", pop_path, "--metrics", "igd",
                     "--front-size", "200", "--out", manifest_path}) == 0);
    const double v = metric_value(load_json(manifest_path), "igd");
    CHECK(v > 0.0);
    CHECK(v < 0.2);  // four points on the true front of zdt2, igd is small
  }

  SUBCASE("hypervolume accepts a raw reference point") {
    const std::string manifest_path = dir.file("m3.json");
    REQUIRE(run_cli({"indicators", "--population", pop_path, "--metrics", "hv",
                     "--hv-raw-ref", "1,1", "--out", manifest_path}) == 0);
    const json manifest = load_json(manifest_path);
    const double v = metric_value(manifest, "hv");
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }

  SUBCASE("unknown metric names exit 2 and list the valid ones") {
    CHECK(run_cli({"indicators", "--population", pop_path, "--metrics", "spread"}) == 2);
  }

  SUBCASE("entropy without decision columns exits 2") {
    CHECK(run_cli({"indicators", "--population", pop_path, "--metrics", "entropy"}) == 2);
  }

  SUBCASE("entropy works when decision columns are present") {
    // dtlz2 optima are interior (distance variables at 0.5), so the
    // stationarity residual — and with it H — vanishes there.
    const ProblemSpec spec = make_problem("dtlz2");
    Population xpop;
    xpop.problem_id = spec.name;
    for (double u : {0.1, 0.4, 0.8}) {
      Individual ind;
      Vector x(spec.n, 0.5);
      x[0] = u;
      x[1] = 1.0 - u;
      ind.objectives = evaluate(spec, x);
      ind.decision = std::move(x);
      xpop.members.push_back(std::move(ind));
    }
    const std::string xpath = dir.file("xpop.csv");
    write_population_csv(xpop, xpath);
    const std::string manifest_path = dir.file("m4.json");
    REQUIRE(run_cli({"indicators", "--population", xpath, "--metrics", "entropy",
                     "--out", manifest_path}) == 0);
    const double h = metric_value(load_json(manifest_path), "entropy");
    CHECK(h >= 0.0);
    CHECK(h < 1e-6);
  }

  SUBCASE("missing population file exits 1") {
    CHECK(run_cli({"indicators", "--population", dir.file("absent.csv"),
                   "--metrics", "igd", "--problem", "zdt2"}) == 1);
  }

  SUBCASE("metrics needing a front fail without any problem context") {
    const std::string untagged = dir.file("untagged.csv");
    write_text(untagged, "f1,f2\n0.5,0.5\n0.2,0.8\n");
    CHECK(run_cli({"indicators", "--population", untagged, "--metrics", "igd"}) == 2);
  }
}

TEST_CASE("run subcommand executes a JSON experiment config") {
  TempDir dir;
  const std::string config_path = dir.file("exp.json");
  const std::string out_dir = dir.file("out");
  write_text(config_path, R"({
    "problems": [{"name": "dtlz2", "m": 3}],
    "algorithms": ["random", {"kind": "nsga2", "label": "moea"}],
    "runs": 2,
    "seed": 5,
    "evolution": {"pop_size": 16, "max_evaluations": 64},
    "indicators": {"metrics": ["igd", "hv"]},
    "reference_front_size": 60
  })");

  SUBCASE("produces summary, raw and manifest") {
    REQUIRE(run_cli({"run", "--config", config_path, "--out", out_dir}) == 0);
    CHECK(std::filesystem::exists(out_dir + "/summary.csv"));
    CHECK(std::filesystem::exists(out_dir + "/raw.csv"));
    const json manifest = load_json(out_dir + "/manifest.json");
    CHECK(manifest.at("command") == "run");
    CHECK(manifest.at("run_seeds") == json::array({5, 6}));
    CHECK(manifest.at("table").size() == 4);  // 2 algorithms x 2 indicators
    CHECK(manifest.at("config").at("evolution").at("pop_size") == 16);
    // The manifest echoes enough to reproduce: rerunning gives the same table.
    const std::string out2 = dir.file("out2");
    REQUIRE(run_cli({"run", "--config", config_path, "--out", out2}) == 0);
    CHECK(read_text(out2 + "/summary.csv") == read_text(out_dir + "/summary.csv"));
  }

  SUBCASE("missing config file exits 2") {
    CHECK(run_cli({"run", "--config", dir.file("none.json"), "--out", out_dir}) == 2);
  }

  SUBCASE("malformed JSON exits 1") {
    const std::string bad = dir.file("bad.json");
    write_text(bad, "{ this is not json");
    CHECK(run_cli({"run", "--config", bad, "--out", out_dir}) == 1);
  }

  SUBCASE("unknown config keys exit 2") {
    const std::string bad = dir.file("key.json");
    write_text(bad, R"({"problems": ["dtlz2"], "algorithms": ["random"], "runz": 3})");
    CHECK(run_cli({"run", "--config", bad, "--out", out_dir}) == 2);
  }

  SUBCASE("metric entries must not carry a :p suffix in configs") {
    const std::string bad = dir.file("colon.json");
    write_text(bad, R"({
      "problems": ["dtlz2"], "algorithms": ["random"],
      "indicators": {"metrics": ["delta_p:2"]}
    })");
    CHECK(run_cli({"run", "--config", bad, "--out", out_dir}) == 2);
  }

  SUBCASE("wrongly typed fields exit 2") {
    const std::string bad = dir.file("type.json");
    write_text(bad, R"({"problems": ["dtlz2"], "algorithms": ["random"], "runs": "two"})");
    CHECK(run_cli({"run", "--config", bad, "--out", out_dir}) == 2);
  }
}

TEST_CASE("trace subcommand writes one row per generation") {
  TempDir dir;
  const std::string out_dir = dir.file("trace_out");
  REQUIRE(run_cli({"trace", "--problem", "zdt2", "--n", "8", "--algo", "nsga2",
                   "--pop", "16", "--evals", "80", "--seed", "3", "--front-size", "50",
                   "--out", out_dir}) == 0);
  const json manifest = load_json(out_dir + "/manifest.json");
  CHECK(manifest.at("generations") == 5);  // 80 evaluations / 16 per generation
  const std::string csv = read_text(out_dir + "/trace.csv");
  CHECK(csv.rfind("generation,evaluations,h,igd", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 6);  // header + 5 generations

  SUBCASE("unknown algorithm exits 2") {
    CHECK(run_cli({"trace", "--algo", "hillclimb", "--out", dir.file("t2")}) == 2);
  }
}

TEST_CASE("timing subcommand writes the study table") {
  TempDir dir;
  const std::string out_dir = dir.file("timing_out");
  REQUIRE(run_cli({"timing", "--mode", "popsize", "--sizes", "30,60", "--reps", "1",
                   "--mc-samples", "2000", "--out", out_dir}) == 0);
  const std::string csv = read_text(out_dir + "/timing_popsize.csv");
  CHECK(csv.rfind("indicator,k,median_seconds,reps,ordering_flag", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 7);  // header + 3 indicators x 2 sizes
  CHECK(load_json(out_dir + "/manifest.json").at("config").at("mode") == "popsize");

  SUBCASE("bogus mode exits 2") {
    CHECK(run_cli({"timing", "--mode", "sideways", "--out", dir.file("t3")}) == 2);
  }
}
