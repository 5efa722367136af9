#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ym/algebra.hpp"
#include "ym/estimates.hpp"
#include "ym/evolve.hpp"

namespace ym {

enum class Command { Simulate, CheckIdentities, CheckSymbols, CheckEstimates, Convergence, Picard };

std::string commandName(Command c);
Command parseCommand(const std::string& s);

struct GridParams {
  int N = 64;
  double L = 2 * M_PI;
  bool dealias = true;
};

struct EstimateParams {
  std::vector<int> ids = {21, 24, 25, 35};
  int N = 32;
  BilinearConfig bilinear;
};

struct RunConfig {
  Command command = Command::Simulate;
  AlgebraSpec algebra;
  GridParams grid;
  EvolveConfig evolve;
  SampleConfig sample;
  EstimateParams estimates;
  PicardConfig picard;
  std::uint64_t seed = 1;
  double scale = 1e-2;
  int snapshotEvery = 0;  // 0 disables snapshots
  int seeds = 20;         // identity suite seeds
  std::string outPath;  // primary artifact; empty means defaultOutPath(command)

  void validate() const;  // throws ConfigError
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unknown keys, wrong types and out-of-range values throw ConfigError.
RunConfig configFromJson(const nlohmann::json& j);
RunConfig loadConfig(const std::string& path);
nlohmann::json configToJson(const RunConfig& c);

nlohmann::json reportToJson(const BoundReport& r);

// diagnostics.csv for simulate, <command>.jsonl otherwise
std::string defaultOutPath(Command c);
// <outPath>.manifest.json: the resolved config and the run outcome
std::string manifestPath(const RunConfig& c);
void writeManifest(const RunConfig& c, const nlohmann::json& outcome);

}  // namespace ym
