#include "ym/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

namespace ym {

using nlohmann::json;

namespace {

const std::pair<Command, const char*> kCommands[] = {
    {Command::Simulate, "simulate"},       {Command::CheckIdentities, "check-identities"},
    {Command::CheckSymbols, "check-symbols"}, {Command::CheckEstimates, "check-estimates"},
    {Command::Convergence, "convergence"}, {Command::Picard, "picard"}};

// typed access with key-path error messages
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }
  void allow(std::set<std::string> keys) const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!keys.count(it.key())) throw ConfigError("unknown key '" + key(it.key()) + "'");
  }
  bool has(const std::string& k) const { return j_.contains(k); }
  Section sub(const std::string& k) const { return Section(j_.at(k), key(k)); }
  const json& raw(const std::string& k) const { return j_.at(k); }

  template <class T>
  void get(const std::string& k, T& out) const {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(key(k) + " must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(key(k) + " must be an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (v.get<long long>() < 0) throw ConfigError(key(k) + " must be non-negative");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(key(k) + " must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(key(k) + " must be a string");
    }
    out = v.get<T>();
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }
  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
  const json& j_;
  std::string path_;
};

}  // namespace

std::string commandName(Command c) {
  for (const auto& [k, n] : kCommands)
    if (k == c) return n;
  return "?";
}

Command parseCommand(const std::string& s) {
  for (const auto& [k, n] : kCommands)
    if (s == n) return k;
  throw ConfigError("unknown command '" + s + "'");
}

void RunConfig::validate() const {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(grid.N >= 8 && grid.N % 2 == 0, "grid.N must be even and >= 8");
  need(grid.L > 0, "grid.L must be positive");
  need(evolve.dt > 0, "evolve.dt must be positive");
  need(evolve.tEnd >= 0, "evolve.tEnd must be non-negative");
  need(evolve.monitorEvery >= 1, "evolve.monitorEvery must be >= 1");
  need(scale >= 0, "scale must be non-negative");
  need(snapshotEvery >= 0, "snapshotEvery must be non-negative");
  need(seeds >= 1, "seeds must be >= 1");
  need(picard.iterations >= 1 && picard.steps >= 1 && picard.T > 0, "picard: iterations, steps, T must be positive");
  need(estimates.N >= 8, "estimates.N must be >= 8");
  const auto ids = supportedEstimates();
  for (int id : estimates.ids)
    need(std::find(ids.begin(), ids.end(), id) != ids.end(), "estimates.ids: unsupported id " + std::to_string(id));
  try {
    sample.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sample: ") + e.what());
  }
  const auto& b = estimates.bilinear;
  need(b.r > 1 && b.r <= 2, "estimates.r must lie in (1, 2]");
  need(b.trials >= 1, "estimates.trials must be >= 1");
}

RunConfig configFromJson(const json& j) {
  RunConfig c;
  const Section top(j, "");
  top.allow({"command", "algebra", "grid", "evolve", "sample", "estimates", "picard", "seed", "scale",
             "snapshotEvery", "seeds", "out"});
  if (!top.has("command")) throw ConfigError("missing required key 'command'");
  std::string cmd, alg;
  top.get("command", cmd);
  c.command = parseCommand(cmd);
  if (top.has("algebra")) {
    top.get("algebra", alg);
    try {
      c.algebra = AlgebraSpec::parse(alg);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("algebra: ") + e.what());
    }
  }
  top.get("seed", c.seed);
  top.get("scale", c.scale);
  top.get("snapshotEvery", c.snapshotEvery);
  top.get("seeds", c.seeds);
  top.get("out", c.outPath);
  if (top.has("grid")) {
    const Section g = top.sub("grid");
    g.allow({"N", "L", "dealias"});
    g.get("N", c.grid.N);
    g.get("L", c.grid.L);
    g.get("dealias", c.grid.dealias);
  }
  if (top.has("evolve")) {
    const Section e = top.sub("evolve");
    e.allow({"dt", "tEnd", "stepper", "monitorEvery", "twin"});
    e.get("dt", c.evolve.dt);
    e.get("tEnd", c.evolve.tEnd);
    e.get("monitorEvery", c.evolve.monitorEvery);
    e.get("twin", c.evolve.twin);
    if (e.has("stepper")) {
      std::string st;
      e.get("stepper", st);
      try {
        c.evolve.stepper = parseStepper(st);
      } catch (const std::exception& ex) {
        throw ConfigError(std::string("evolve.stepper: ") + ex.what());
      }
    }
  }
  if (top.has("sample")) {
    const Section s = top.sub("sample");
    s.allow({"count", "rMin", "rMax", "seed", "r"});
    s.get("count", c.sample.count);
    s.get("rMin", c.sample.rMin);
    s.get("rMax", c.sample.rMax);
    s.get("seed", c.sample.seed);
    s.get("r", c.sample.rExponent);
  }
  if (top.has("estimates")) {
    const Section s = top.sub("estimates");
    s.allow({"ids", "N", "r", "s", "l", "b", "eps", "trials", "seed", "commutator", "aligned"});
    if (s.has("ids")) {
      const json& ids = s.raw("ids");
      if (!ids.is_array()) throw ConfigError("estimates.ids must be an array of integers");
      c.estimates.ids.clear();
      for (const auto& v : ids) {
        if (!v.is_number_integer()) throw ConfigError("estimates.ids must be an array of integers");
        c.estimates.ids.push_back(v.get<int>());
      }
    }
    auto& b = c.estimates.bilinear;
    s.get("N", c.estimates.N);
    s.get("r", b.r);
    s.get("s", b.s);
    s.get("l", b.l);
    s.get("b", b.b);
    s.get("eps", b.eps);
    s.get("trials", b.trials);
    s.get("seed", b.seed);
    s.get("commutator", b.commutator);
    s.get("aligned", b.aligned);
  }
  if (top.has("picard")) {
    const Section p = top.sub("picard");
    p.allow({"iterations", "T", "steps", "s", "r"});
    p.get("iterations", c.picard.iterations);
    p.get("T", c.picard.T);
    p.get("steps", c.picard.steps);
    p.get("s", c.picard.s);
    p.get("r", c.picard.r);
  }
  c.validate();
  return c;
}

RunConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return configFromJson(j);
}

json configToJson(const RunConfig& c) {
  const auto& b = c.estimates.bilinear;
  return {{"command", commandName(c.command)},
          {"algebra", c.algebra.name()},
          {"grid", {{"N", c.grid.N}, {"L", c.grid.L}, {"dealias", c.grid.dealias}}},
          {"evolve",
           {{"dt", c.evolve.dt},
            {"tEnd", c.evolve.tEnd},
            {"stepper", stepperName(c.evolve.stepper)},
            {"monitorEvery", c.evolve.monitorEvery},
            {"twin", c.evolve.twin}}},
          {"sample",
           {{"count", c.sample.count},
            {"rMin", c.sample.rMin},
            {"rMax", c.sample.rMax},
            {"seed", c.sample.seed},
            {"r", c.sample.rExponent}}},
          {"estimates",
           {{"ids", c.estimates.ids},
            {"N", c.estimates.N},
            {"r", b.r},
            {"s", b.s},
            {"l", b.l},
            {"b", b.b},
            {"eps", b.eps},
            {"trials", b.trials},
            {"seed", b.seed},
            {"commutator", b.commutator},
            {"aligned", b.aligned}}},
          {"picard",
           {{"iterations", c.picard.iterations},
            {"T", c.picard.T},
            {"steps", c.picard.steps},
            {"s", c.picard.s},
            {"r", c.picard.r}}},
          {"seed", c.seed},
          {"scale", c.scale},
          {"snapshotEvery", c.snapshotEvery},
          {"seeds", c.seeds},
          {"out", c.outPath}};
}

json reportToJson(const BoundReport& r) {
  json point = json::object();
  for (std::size_t i = 0; i < r.argmaxPoint.size(); ++i)
    point[i < r.argmaxLabels.size() ? r.argmaxLabels[i] : "x" + std::to_string(i)] = r.argmaxPoint[i];
  json j = {{"name", r.name},         {"samples", r.samples}, {"skipped", r.skipped},
            {"supRatio", r.supRatio}, {"threshold", r.threshold}, {"argmaxPoint", point},
            {"pass", r.pass}};
  if (!r.details.empty()) j["details"] = r.details;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string defaultOutPath(Command c) { return c == Command::Simulate ? "diagnostics.csv" : commandName(c) + ".jsonl"; }

std::string manifestPath(const RunConfig& c) { return c.outPath + ".manifest.json"; }

void writeManifest(const RunConfig& c, const json& outcome) {
  const std::filesystem::path dir = std::filesystem::path(c.outPath).parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::ofstream out(manifestPath(c));
  if (!out) throw std::runtime_error("cannot write manifest '" + manifestPath(c) + "'");
  out << json{{"config", configToJson(c)}, {"outcome", outcome}}.dump(2) << "\n";
}

}  // namespace ym
