#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rgg/cli.hpp"
#include "rgg/vendor_json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rgg");
  std::ostringstream out, err;
  int code = rgg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("rgg_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("generate writes a reproducible graph") {
  auto a = scratch("gen_a"), b = scratch("gen_b");
  auto r1 = run_cli({"--seed", "5", "--out", a.string(), "generate", "--n", "10", "--r", "0.2"});
  REQUIRE(r1.code == 0);
  auto r2 = run_cli({"--seed", "5", "--out", b.string(), "generate", "--n", "10", "--r", "0.2"});
  REQUIRE(r2.code == 0);
  for (const char* f : {"edges.txt", "points.csv", "generate.json"}) {
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  for (const auto& l : lines(slurp(a / "edges.txt"))) {
    std::istringstream in(l);
    unsigned i = 0, j = 0;
    in >> i >> j;
    CHECK(i < j);
    CHECK(j < 10);
  }
  auto report = load(a / "generate.json");
  CHECK(report["config"]["n"] == 10);
  CHECK(report["config"]["seed"] == 5);
  CHECK(report["config"]["seed_auto_generated"] == false);
}

TEST_CASE("invalid radius exits with a parameter error") {
  auto dir = scratch("bad_r");
  auto r = run_cli({"--out", dir.string(), "generate", "--n", "10", "--r", "0.6"});
  CHECK(r.code == 2);
  CHECK(r.err.find("0.5") != std::string::npos);
  CHECK(run_cli({"generate", "--n", "ten"}).code == 2);
  CHECK(run_cli({"generate", "--bogus", "1"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("an absent seed is generated and recorded") {
  auto dir = scratch("auto_seed");
  REQUIRE(run_cli({"--out", dir.string(), "generate", "--n", "20", "--r", "0.1"}).code == 0);
  auto report = load(dir / "generate.json");
  CHECK(report["config"]["seed_auto_generated"] == true);
  CHECK(report["config"]["seed"].is_number_unsigned());
}

TEST_CASE("moments report") {
  auto dir = scratch("moments");
  auto r = run_cli({"--seed", "1", "--out", dir.string(), "moments", "--n", "300",
                    "--realizations", "3", "--max-order", "4"});
  REQUIRE(r.code == 0);
  auto report = load(dir / "moments.json");
  auto table = report["table"];
  REQUIRE(table.size() == 4);
  CHECK(table[0]["k"] == 1);
  CHECK(std::abs(table[0]["empirical_mean"].get<double>()) < 1e-12);
  CHECK(table[1]["analytic"]["value"].get<double>() == doctest::Approx(20.0));
  CHECK(report["realizations"].size() == 3);
  CHECK(json::parse(r.out)["command"] == "moments");
}

TEST_CASE("bound sweep output") {
  auto empty = scratch("bound_empty");
  REQUIRE(run_cli({"--seed", "1", "--out", empty.string(), "bound", "--dbar-min", "50",
                   "--dbar-max", "10"})
              .code == 0);
  auto rows = lines(slurp(empty / "bound.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == "dbar,seed,lambda_max,bound,mean_degree,violated");

  auto full = scratch("bound_full");
  REQUIRE(run_cli({"--seed", "1", "--out", full.string(), "bound"}).code == 0);
  CHECK(lines(slurp(full / "bound.csv")).size() == 51);
  auto report = load(full / "bound.json");
  CHECK(report["rows"] == 50);
  CHECK(report["lambda_below_mean_degree"] == 0);
}

TEST_CASE("design command") {
  auto dir = scratch("design");
  REQUIRE(run_cli({"--out", dir.string(), "--seed", "1", "design", "--beta", "0.02", "--delta",
                   "0.4", "--c", "2"})
              .code == 0);
  auto res = load(dir / "design.json")["result"];
  CHECK(res["r_max"].get<double>() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(res["c_d_provenance"] == "user");

  auto d2 = scratch("design2");
  REQUIRE(run_cli({"--out", d2.string(), "--seed", "1", "design", "--d", "2", "--samples",
                   "100000"})
              .code == 0);
  auto res2 = load(d2 / "design.json")["result"];
  CHECK(res2["c_d_provenance"].get<std::string>().find("not a published value") != std::string::npos);

  CHECK(run_cli({"--out", dir.string(), "design", "--d", "3"}).code == 2);
  CHECK(run_cli({"--out", dir.string(), "design", "--delta", "1.5", "--c", "2"}).code == 2);
}

TEST_CASE("config file with flag override") {
  auto dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "cfg.json");
    f << R"({"n": 50, "r": 0.05, "seed": 9})";
  }
  REQUIRE(run_cli({"--config", (dir / "cfg.json").string(), "--out", dir.string(), "generate",
                   "--n", "40"})
              .code == 0);
  auto report = load(dir / "generate.json");
  CHECK(report["config"]["n"] == 40);
  CHECK(report["config"]["r"].get<double>() == 0.05);
  CHECK(report["config"]["seed"] == 9);

  {
    std::ofstream f(dir / "bad.json");
    f << R"({"radius": 0.05})";
  }
  CHECK(run_cli({"--config", (dir / "bad.json").string(), "--out", dir.string(), "generate"})
            .code == 2);
  {
    std::ofstream f(dir / "keyed.json");
    f << R"({"generate": {"n": 30, "r": 0.1}})";
  }
  REQUIRE(run_cli({"--config", (dir / "keyed.json").string(), "--out", dir.string(), "--seed",
                   "2", "generate"})
              .code == 0);
  CHECK(load(dir / "generate.json")["config"]["n"] == 30);
  CHECK(run_cli({"--config", (dir / "missing.json").string(), "generate"}).code == 4);
}

TEST_CASE("simulate with no initial infection") {
  auto dir = scratch("simulate");
  REQUIRE(run_cli({"--seed", "3", "--out", dir.string(), "simulate", "--n", "100", "--r", "0.02",
                   "--level", "0", "--steps", "20"})
              .code == 0);
  auto report = load(dir / "simulate.json");
  CHECK(report["outcome"]["outcome"] == "died-out");
  CHECK(report["outcome"]["die_out_step"] == 0);
  auto csv = lines(slurp(dir / "trajectory.csv"));
  REQUIRE(csv.size() == 2);
  CHECK(csv[0].rfind("step,p0,p1", 0) == 0);
  CHECK(slurp(dir / "heatmap.ppm").rfind("P6", 0) == 0);
}
