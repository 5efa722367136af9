#include "doctest.h"
#include "json.hpp"
#include "ym/spectral.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

class Sandbox {
 public:
  Sandbox() : dir_(fs::temp_directory_path() / ("ymlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(n_++))) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Run run(const std::string& args) const {
    const fs::path log = path("stdout.txt");
    const std::string cmd =
        "cd '" + dir_.string() + "' && '" + YMLAB_PATH + "' " + args + " > '" + log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read("stdout.txt")};
  }

 private:
  static inline int n_ = 0;
  fs::path dir_;
};

}  // namespace

TEST_CASE("schema errors exit with 2") {
  Sandbox box;
  box.write("empty.json", "");
  Run r = box.run("simulate --config empty.json");
  CHECK(r.code == 2);
  CHECK(r.out.find("not valid JSON") != std::string::npos);

  box.write("unknown.json", R"({"command": "simulate", "grid": {"N": 32, "spacing": 1}})");
  r = box.run("simulate --config unknown.json");
  CHECK(r.code == 2);
  CHECK(r.out.find("grid.spacing") != std::string::npos);

  box.write("type.json", R"({"command": "simulate", "scale": "big"})");
  CHECK(box.run("simulate --config type.json").code == 2);

  box.write("nocmd.json", R"({"scale": 0.1})");
  CHECK(box.run("simulate --config nocmd.json").code == 2);

  box.write("mismatch.json", R"({"command": "picard"})");
  CHECK(box.run("simulate --config mismatch.json").code == 2);

  CHECK(box.run("simulate --config missing.json").code == 2);
  CHECK(box.run("check-estimates --ids 30").code == 2);
  CHECK(box.run("simulate --n 12 --algebra sp4").code == 2);
  CHECK(box.run("simulate --stepper Euler").code == 2);
  CHECK(box.run("").code == 2);
  CHECK(box.run("frobnicate").code == 2);
}

TEST_CASE("zero data gives zero residuals") {
  Sandbox box;
  const Run r = box.run("simulate --scale 0 --n 16 --dt 0.01 --t-end 0.03 --monitor-every 1 --out runs/diag.csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  std::istringstream csv(box.read("runs/diag.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,energy,lorenz,gauss,compat,twinDiff");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.find(',')) == ",0,0,0,0,0");
  }
  CHECK(rows == 4);
  const json m = json::parse(box.read("runs/diag.csv.manifest.json"));
  CHECK(m["outcome"]["pass"] == true);
  CHECK(m["config"]["grid"]["N"] == 16);
  CHECK(m["config"]["command"] == "simulate");
}

TEST_CASE("config file with flag overrides and snapshots") {
  Sandbox box;
  box.write("sim.json", R"({"command": "simulate", "algebra": "so3", "scale": 0.01, "grid": {"N": 16},
                            "evolve": {"dt": 0.01, "tEnd": 0.02, "monitorEvery": 1}, "snapshotEvery": 1})");
  const Run r = box.run("simulate --config sim.json --t-end 0.01 --out sim.csv");
  REQUIRE(r.code == 0);
  const json m = json::parse(box.read("sim.csv.manifest.json"));
  CHECK(m["config"]["algebra"] == "so3");
  CHECK(m["config"]["evolve"]["tEnd"] == 0.01);
  REQUIRE(m["outcome"]["snapshots"].size() == 2);
  auto alg = ym::makeAlgebra(ym::AlgebraSpec::parse("so3"));
  const auto comps = ym::readSnapshot(box.path("sim_000001.ymf2").string(), alg);
  CHECK(comps.size() == 12);
  CHECK(comps[0].grid()->N() == 16);
}

TEST_CASE("checks report pass") {
  Sandbox box;
  Run r = box.run("check-identities --seeds 2 --algebra so3");
  CHECK(r.code == 0);
  std::istringstream lines(box.read("check-identities.jsonl"));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK_NOTHROW(json::parse(line));
    ++n;
  }
  CHECK(n >= 2);
  CHECK(fs::exists(box.path("check-identities.jsonl.manifest.json")));

  // the symbol bounds hold; the lemma sweep exceeds its threshold, so the command fails
  r = box.run("check-symbols --samples 2000 --out sym.jsonl");
  CHECK(r.code == 1);
  std::istringstream sym(box.read("sym.jsonl"));
  int records = 0;
  while (std::getline(sym, line)) {
    const json j = json::parse(line);
    INFO(j["name"]);
    CHECK(j["pass"] == (j["name"] != "lemma-quantity-sweep"));
    ++records;
  }
  CHECK(records == 10);
  r = box.run("picard --n 16 --T 0.1 --steps 10 --iterations 3 --out p.jsonl");
  CHECK(r.code == 0);
  const json m = json::parse(box.read("p.jsonl.manifest.json"));
  CHECK(m["outcome"]["pass"] == true);
}

TEST_CASE("numerical blow-up exits with 3 and records the abort") {
  Sandbox box;
  const Run r = box.run("simulate --scale 1 --n 16 --dt 1 --t-end 400 --no-twin --out big.csv");
  CHECK(r.code == 3);
  const json m = json::parse(box.read("big.csv.manifest.json"));
  CHECK(m["outcome"]["pass"] == false);
  CHECK(m["outcome"]["abort"].get<std::string>().find("non-finite") != std::string::npos);
}
