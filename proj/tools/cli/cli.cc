// Copyright 2026 The thermosup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <sstream>

#include <CLI11.hpp>

#include "thermosup/channels.h"
#include "thermosup/errors.h"
#include "thermosup/onebath.h"
#include "thermosup/qmath.h"
#include "thermosup/twobath.h"

#ifndef THERMOSUP_VERSION
#define THERMOSUP_VERSION "unknown"
#endif

namespace thermosup::cli {
namespace {

using Json = nlohmann::ordered_json;

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(const std::string& text, const std::string& what) {
  const std::string t = Trim(text);
  if (t.empty()) throw ParseError(what + ": empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw ParseError(what + ": not a number: '" + text + "'");
  return v;
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ParseDouble(item, "--energies"));
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json TemperatureJson(const Temperature& t) { return ToString(t); }

Json MatrixJson(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

// Non-finite table entries travel through JSON as strings.
Json NumberJson(double v) {
  if (std::isfinite(v)) return v;
  return FormatDouble(v);
}

double NumberFromJson(const Json& j) {
  if (j.is_string()) return ParseDouble(j.get<std::string>(), "table entry");
  return j.get<double>();
}

DensityMatrix MakeProbe(const std::string& name, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (name == "ground" || name == "excited") {
    std::vector<double> p(d, 0.0);
    p[name == "ground" ? 0 : d - 1] = 1.0;
    return DensityMatrix::Diagonal(p);
  }
  if (name == "mixed") return DensityMatrix::MaximallyMixed(d);
  if (name == "plus") {
    const ComplexVector v = ComplexVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(d)));
    return DensityMatrix::FromPure(StateVector(v, Dims{d}));
  }
  throw ParseError("unknown probe '" + name + "'");
}

double Kelvin(const Temperature& t) { return t.kelvin(); }

Json Tolerances() {
  return Json{{"unitary", kUnitaryTolerance},
              {"hermitian", kHermitianTolerance},
              {"psd", kPsdTolerance},
              {"trace", kTraceTolerance}};
}

Json Versions() {
  return Json{{"thermosup", THERMOSUP_VERSION},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"record_format", 1}};
}

Json SpectrumJson(const HamiltonianSpec& h) {
  return Json(std::vector<double>(h.energies().begin(), h.energies().end()));
}

ResultRecord NewRecord(const ExperimentConfig& c) {
  ResultRecord r;
  r.experiment = CommandName(c.command);
  r.tolerances = Tolerances();
  r.versions = Versions();
  r.outputs = Json::object();
  return r;
}

ResultRecord RunGibbs(const ExperimentConfig& c) {
  const HamiltonianSpec h = c.Hamiltonian();
  const GibbsWeights w = ComputeGibbsWeights(h, c.t);
  ResultRecord r = NewRecord(c);
  r.inputs = Json{{"energies", SpectrumJson(h)}, {"t", TemperatureJson(c.t)}};
  r.outputs["weights"] = w.weights;
  r.outputs["log_partition"] = NumberJson(w.log_partition);
  r.outputs["state"] = MatrixJson(GibbsState(h, c.t).matrix());
  r.table.columns = {"level", "energy", "weight"};
  for (std::size_t n = 0; n < h.dim(); ++n) {
    r.table.rows.push_back({static_cast<double>(n), h.energies()[n], w.weights[n]});
  }
  return r;
}

ResultRecord RunTwoBath(const ExperimentConfig& c) {
  const HamiltonianSpec h = c.Hamiltonian();
  TwoBathConfig cfg{.hamiltonian = h,
                    .temperatures = {c.t0, c.t1},
                    .probe = MakeProbe(c.probe, h.dim()),
                    .phase = c.phi,
                    .representation = std::nullopt,
                    .dilations = std::nullopt};
  if (c.unitaries == "max") {
    const UnitaryPair u = MaxVisibilityUnitaries(h, cfg.probe);
    cfg.representation = std::array{u.u0, u.u1};
  } else if (c.unitaries == "zero") {
    const UnitaryPair u = ZeroVisibilityUnitaries(h, cfg.probe);
    cfg.representation = std::array{u.u0, u.u1};
  } else if (c.unitaries == "random") {
    Rng rng(c.seed);
    ComplexMatrix u0 = RandomUnitary(h.dim(), rng);
    ComplexMatrix u1 = RandomUnitary(h.dim(), rng);
    cfg.representation = std::array{std::move(u0), std::move(u1)};
  }
  const VisibilityResult vis = Visibility(cfg);
  const ConditionalState state = ConditionalProbeState(cfg);
  const double vmax = MaxVisibilityClosedForm(h, c.t0, c.t1, cfg.probe);

  ResultRecord r = NewRecord(c);
  r.inputs = Json{{"energies", SpectrumJson(h)}, {"t0", TemperatureJson(c.t0)},
                  {"t1", TemperatureJson(c.t1)}, {"probe", c.probe},
                  {"phi", c.phi},            {"unitaries", c.unitaries},
                  {"seed", c.seed}};
  r.outputs["visibility"] = vis.visibility;
  r.outputs["phase"] = vis.phase;
  r.outputs["probability"] = state.trace();
  r.outputs["max_visibility"] = vmax;
  r.outputs["conditional_state"] = MatrixJson(state.matrix());
  if (state.trace() > kTraceTolerance) {
    r.outputs["distance_to_gibbs_t0"] =
        TraceDistance(state.normalized(), GibbsState(h, c.t0));
  } else {
    r.outputs["distance_to_gibbs_t0"] = nullptr;
  }
  r.table.columns = {"t0", "t1", "phi", "visibility", "phase", "probability", "max_visibility"};
  r.table.rows.push_back({Kelvin(c.t0), Kelvin(c.t1), c.phi, vis.visibility, vis.phase,
                          state.trace(), vmax});
  return r;
}

ResultRecord RunOneBath(const ExperimentConfig& c) {
  const HamiltonianSpec h = c.Hamiltonian();
  const std::size_t d = h.dim();
  Rng rng(c.seed);
  ComplexMatrix basis1 = ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                 static_cast<Eigen::Index>(d));
  if (c.ancilla_basis == "shift") {
    basis1 = CyclicShift(d);
  } else if (c.ancilla_basis == "random") {
    basis1 = RandomUnitary(d, rng);
  }
  PurificationSpec spec = PurificationSpec::Canonical(h, c.t0, c.t1);
  spec.phases = {c.phi0, c.phi1};
  spec.ancilla_bases[1] = basis1;
  OneBathConfig cfg{.hamiltonian = h,
                    .purification = spec,
                    .control_phase = c.phi_c,
                    .probe = MakeProbe(c.probe, d),
                    .local_unitaries = std::nullopt};
  if (c.unitaries == "zero") {
    const UnitaryPair u = ZeroVisibilityLocalUnitaries(h, cfg.probe);
    cfg.local_unitaries = std::array{u.u0, u.u1};
  } else if (c.unitaries == "random") {
    ComplexMatrix u0 = RandomUnitary(d * d, rng);
    ComplexMatrix u1 = RandomUnitary(d * d, rng);
    cfg.local_unitaries = std::array{std::move(u0), std::move(u1)};
  }
  const VisibilityResult vis = VisibilityOneBath(cfg);
  const ConditionalState state = ProbeOutput(cfg);
  const double vmax = MaxVisibilityOneBath(h, c.t0, c.t1);

  ResultRecord r = NewRecord(c);
  r.inputs = Json{{"energies", SpectrumJson(h)},    {"t0", TemperatureJson(c.t0)},
                  {"t1", TemperatureJson(c.t1)},    {"probe", c.probe},
                  {"phi_c", c.phi_c},               {"phi0", c.phi0},
                  {"phi1", c.phi1},                 {"unitaries", c.unitaries},
                  {"ancilla_basis", c.ancilla_basis}, {"seed", c.seed}};
  r.outputs["visibility"] = vis.visibility;
  r.outputs["phase"] = vis.phase;
  r.outputs["effective_phase"] = cfg.EffectivePhase();
  r.outputs["probability"] = state.trace();
  r.outputs["max_visibility"] = vmax;
  r.outputs["overlap_matrix"] = MatrixJson(OverlapMatrixW(cfg));
  r.outputs["conditional_state"] = MatrixJson(state.matrix());
  r.table.columns = {"t0", "t1", "phi_c", "visibility", "phase", "probability", "max_visibility"};
  r.table.rows.push_back({Kelvin(c.t0), Kelvin(c.t1), c.phi_c, vis.visibility, vis.phase,
                          state.trace(), vmax});
  return r;
}

CollisionScenario ScenarioFromName(const std::string& name) {
  if (name == "plain") return CollisionScenario::kPlain;
  if (name == "twobath") return CollisionScenario::kTwoBath;
  if (name == "onebath") return CollisionScenario::kOneBath;
  throw ParseError("unknown scenario '" + name + "'");
}

CollisionConfig MakeCollisionConfig(const ExperimentConfig& c) {
  CollisionConfig cfg;
  cfg.eta = c.eta;
  cfg.collisions = c.m;
  cfg.temperatures = {c.t0, c.t1};
  cfg.probe = MakeProbe(c.probe, 2);
  cfg.threshold = c.threshold;
  cfg.scenario = ScenarioFromName(c.scenario);
  cfg.energy_gap = c.gap;
  cfg.engine = c.engine == "statevector" ? CollisionEngine::kStatevector
                                         : CollisionEngine::kCompact;
  cfg.max_amplitudes = c.max_amplitudes;
  return cfg;
}

Json CollisionInputs(const ExperimentConfig& c) {
  return Json{{"scenario", c.scenario},   {"eta", c.eta},
              {"m", c.m},                 {"t0", TemperatureJson(c.t0)},
              {"t1", TemperatureJson(c.t1)}, {"probe", c.probe},
              {"gap", c.gap},             {"engine", c.engine}};
}

ResultRecord RunCollide(const ExperimentConfig& c) {
  const CollisionConfig cfg = MakeCollisionConfig(c);
  const CollisionTrace trace = RunCollisions(cfg);

  ResultRecord r = NewRecord(c);
  r.inputs = CollisionInputs(c);
  r.inputs["threshold"] = c.threshold;
  Json records = Json::array();
  Json reached = nullptr;
  r.table.columns = {"collision", "trace_distance"};
  for (const CollisionRecord& rec : trace.records) {
    Json j{{"collision", rec.collision}, {"trace_distance", rec.trace_distance}};
    if (rec.visibility) j["visibility"] = *rec.visibility;
    records.push_back(std::move(j));
    if (reached.is_null() && rec.trace_distance < c.threshold) reached = rec.collision;
    r.table.rows.push_back({static_cast<double>(rec.collision), rec.trace_distance});
  }
  r.outputs["records"] = std::move(records);
  r.outputs["collisions_to_threshold"] = reached;
  if (cfg.scenario != CollisionScenario::kPlain) {
    const VisibilityResult vis = CollisionalVisibility(cfg);
    r.outputs["visibility"] = vis.visibility;
    r.outputs["phase"] = vis.phase;
  }
  return r;
}

ResultRecord RunHeatmap(const ExperimentConfig& c) {
  const CollisionConfig cfg = MakeCollisionConfig(c);
  const Heatmap map = VisibilityHeatmap(c.grid, cfg, c.threads);

  ResultRecord r = NewRecord(c);
  r.inputs = CollisionInputs(c);
  r.inputs.erase("t0");
  r.inputs.erase("t1");
  r.inputs["grid"] = Json{{"t_min", c.grid.t_min}, {"t_max", c.grid.t_max},
                          {"points", c.grid.points}};
  r.outputs["values"] = c.grid.Values();
  Json grid = Json::array();
  for (std::size_t i = 0; i < map.points; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < map.points; ++j) {
      row.push_back(map.cells[i * map.points + j].visibility);
    }
    grid.push_back(std::move(row));
  }
  r.outputs["visibility"] = std::move(grid);
  r.table.columns = {"t0", "t1", "visibility"};
  for (const HeatmapCell& cell : map.cells) r.table.rows.push_back({cell.t0, cell.t1, cell.visibility});
  return r;
}

ResultRecord RunMaxVis(const ExperimentConfig& c) {
  const HamiltonianSpec h = c.Hamiltonian();
  const DensityMatrix probe = MakeProbe(c.probe, h.dim());
  const double closed = MaxVisibilityClosedForm(h, c.t0, c.t1, probe);
  const SearchResult search = MaxVisibilitySearch(
      h, c.t0, c.t1, probe,
      SearchOptions{.trials = c.trials, .seed = c.seed, .refine_iterations = c.refine});
  const double onebath = MaxVisibilityOneBath(h, c.t0, c.t1);

  ResultRecord r = NewRecord(c);
  r.inputs = Json{{"energies", SpectrumJson(h)}, {"t0", TemperatureJson(c.t0)},
                  {"t1", TemperatureJson(c.t1)}, {"probe", c.probe},
                  {"trials", c.trials},         {"refine", c.refine},
                  {"seed", c.seed}};
  r.outputs["closed_form"] = closed;
  r.outputs["search"] = search.visibility;
  r.outputs["search_gap"] = closed - search.visibility;
  r.outputs["onebath_max"] = onebath;
  const UnitaryPair arg = MaxVisibilityUnitaries(h, probe);
  r.outputs["argmax_u0"] = MatrixJson(arg.u0);
  r.outputs["argmax_u1"] = MatrixJson(arg.u1);
  r.table.columns = {"t0", "t1", "closed_form", "search", "onebath_max"};
  r.table.rows.push_back({Kelvin(c.t0), Kelvin(c.t1), closed, search.visibility, onebath});
  return r;
}

std::size_t ParseMaxAmplitudes(const char* text) {
  const std::string t = Trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw ParseError("THERMOSUP_MAX_DIM must be a positive integer, got '" + std::string(text) + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), nullptr, 10);
  if (errno == ERANGE || v == 0) {
    throw ParseError("THERMOSUP_MAX_DIM must be a positive integer, got '" + std::string(text) + "'");
  }
  return static_cast<std::size_t>(v);
}

std::ostream& OpenOutput(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

void Finish(std::ofstream& file, const std::string& path) {
  if (!file.is_open()) {
    std::cout.flush();
    return;
  }
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace

std::string CommandName(Command command) {
  switch (command) {
    case Command::kGibbs:
      return "gibbs";
    case Command::kTwoBath:
      return "twobath";
    case Command::kOneBath:
      return "onebath";
    case Command::kCollide:
      return "collide";
    case Command::kHeatmap:
      return "heatmap";
    case Command::kMaxVis:
      return "maxvis";
  }
  return "unknown";
}

HamiltonianSpec ExperimentConfig::Hamiltonian() const {
  if (!energies.empty()) return HamiltonianSpec(energies);
  return HamiltonianSpec::Ladder(dim, gap);
}

Temperature ParseTemperature(const std::string& text) {
  const std::string t = Trim(text);
  if (t == "inf" || t == "infinity") return Temperature::Infinite();
  if (t == "0") return Temperature::Zero();
  return Temperature::FromKelvin(ParseDouble(t, "temperature"));
}

std::vector<std::string> ParseConfigText(const std::string& text) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key.empty() || !std::all_of(key.begin(), key.end(), [](unsigned char ch) {
          return std::isalnum(ch) || ch == '_' || ch == '-';
        })) {
      throw ParseError("config line " + std::to_string(number) + ": bad key '" + key + "'");
    }
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") throw ParseError("config files cannot include other config files");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    } else if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      value = value.substr(1, value.size() - 2);
      value.erase(std::remove(value.begin(), value.end(), ' '), value.end());
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

std::vector<std::string> ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

ExperimentConfig ParseCommandLine(std::vector<std::string> args) {
  if (!args.empty() && args.front() == "run") args.erase(args.begin());

  // Config tokens go right after the subcommand so that later flags win.
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path && !args.empty()) {
    const std::vector<std::string> tokens = ReadConfigFile(*config_path);
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
  }

  ExperimentConfig c;
  struct {
    std::string t = "1", t0 = "1", t1 = "1", format = "csv", energies, config;
  } raw;

  CLI::App app{"Superpositions of temperature: quantum-controlled thermalisation experiments.",
               "thermosup"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", raw.config, "Flat key = value file; flags override it");
    sub->add_option("--out", c.out, "Output path, '-' for standard output");
    sub->add_option("--seed", c.seed, "Seed for random unitaries and searches");
    sub->add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto spectrum = [&](CLI::App* sub) {
    sub->add_option("--dim", c.dim, "Number of equally spaced levels");
    sub->add_option("--gap", c.gap, "Level spacing");
    sub->add_option("--energies", raw.energies, "Comma-separated energies (overrides --dim)");
  };
  auto probe = [&](CLI::App* sub) {
    sub->add_option("--probe", c.probe, "ground, excited, mixed or plus")
        ->check(CLI::IsMember({"ground", "excited", "mixed", "plus"}));
  };
  auto pair = [&](CLI::App* sub) {
    sub->add_option("--t0", raw.t0, "Temperature of branch 0 ('0' and 'inf' allowed)");
    sub->add_option("--t1", raw.t1, "Temperature of branch 1");
  };
  auto collisions = [&](CLI::App* sub) {
    sub->add_option("--eta", c.eta, "GADC interaction strength in [0, 1]");
    sub->add_option("--m", c.m, "Collisions (bath subsystems) per bath");
    sub->add_option("--gap", c.gap, "Qubit level spacing");
    sub->add_option("--engine", c.engine, "compact or statevector")
        ->check(CLI::IsMember({"compact", "statevector"}));
  };

  CLI::App* gibbs = app.add_subcommand("gibbs", "Gibbs weights and state");
  common(gibbs);
  spectrum(gibbs);
  gibbs->add_option("--t", raw.t, "Temperature ('0' and 'inf' allowed)");

  CLI::App* twobath = app.add_subcommand("twobath", "Probe thermalised by one of two baths");
  common(twobath);
  spectrum(twobath);
  pair(twobath);
  probe(twobath);
  twobath->add_option("--phi", c.phi, "Control measurement phase");
  twobath->add_option("--unitaries", c.unitaries, "identity, max, zero or random")
      ->check(CLI::IsMember({"identity", "max", "zero", "random"}));

  CLI::App* onebath = app.add_subcommand("onebath", "One bath in superposed purifications");
  common(onebath);
  spectrum(onebath);
  pair(onebath);
  probe(onebath);
  onebath->add_option("--phi-c", c.phi_c, "Control measurement phase");
  onebath->add_option("--phi0", c.phi0, "Purification phase of branch 0");
  onebath->add_option("--phi1", c.phi1, "Purification phase of branch 1");
  onebath->add_option("--unitaries", c.unitaries, "identity, max, zero or random")
      ->check(CLI::IsMember({"identity", "max", "zero", "random"}));
  onebath->add_option("--ancilla-basis", c.ancilla_basis, "Branch-1 ancilla basis: same, shift or random")
      ->check(CLI::IsMember({"same", "shift", "random"}));

  CLI::App* collide = app.add_subcommand("collide", "Collisional thermalisation curve");
  common(collide);
  collisions(collide);
  pair(collide);
  probe(collide);
  CLI::Option* t_flag = collide->add_option("--t", raw.t, "Temperature of both baths");
  collide->add_option("--threshold", c.threshold, "Trace-distance threshold");
  CLI::Option* collide_scenario = collide->add_option("--scenario", c.scenario, "plain, twobath or onebath")
      ->check(CLI::IsMember({"plain", "twobath", "onebath"}));

  CLI::App* heatmap = app.add_subcommand("heatmap", "Control visibility over a temperature grid");
  common(heatmap);
  collisions(heatmap);
  probe(heatmap);
  CLI::Option* heatmap_scenario = heatmap->add_option("--scenario", c.scenario, "twobath or onebath")
      ->check(CLI::IsMember({"twobath", "onebath"}));
  CLI::Option* heatmap_m = heatmap->get_option("--m");
  heatmap->add_option("--grid", c.grid.points, "Grid points per axis");
  heatmap->add_option("--t-min", c.grid.t_min, "Lowest grid temperature");
  heatmap->add_option("--t-max", c.grid.t_max, "Highest grid temperature");
  heatmap->add_option("--threads", c.threads, "Worker threads, 0 = hardware concurrency");

  CLI::App* maxvis = app.add_subcommand("maxvis", "Extremal two-bath and one-bath visibility");
  common(maxvis);
  spectrum(maxvis);
  pair(maxvis);
  probe(maxvis);
  maxvis->add_option("--trials", c.trials, "Haar-sampled unitary pairs");
  maxvis->add_option("--refine", c.refine, "Local refinement proposals");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    throw HelpRequested(out.str());
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  if (gibbs->parsed()) c.command = Command::kGibbs;
  if (twobath->parsed()) c.command = Command::kTwoBath;
  if (onebath->parsed()) c.command = Command::kOneBath;
  if (collide->parsed()) c.command = Command::kCollide;
  if (heatmap->parsed()) c.command = Command::kHeatmap;
  if (maxvis->parsed()) c.command = Command::kMaxVis;

  c.format = raw.format == "json" ? Format::kJson : Format::kCsv;
  if (!raw.energies.empty()) c.energies = ParseList(raw.energies);
  c.t = ParseTemperature(raw.t);
  c.t0 = ParseTemperature(raw.t0);
  c.t1 = ParseTemperature(raw.t1);
  if (c.command == Command::kCollide) {
    if (t_flag->count() > 0) {
      // --t sets both baths; explicit --t0/--t1 still take precedence.
      if (collide->get_option("--t0")->count() == 0) c.t0 = c.t;
      if (collide->get_option("--t1")->count() == 0) c.t1 = c.t;
    }
    if (collide_scenario->count() == 0) c.scenario = "plain";
  }
  if (c.command == Command::kHeatmap) {
    if (heatmap_scenario->count() == 0) c.scenario = "twobath";
    if (heatmap_m->count() == 0) c.m = 3;
  }
  return c;
}

ResultRecord Execute(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::kGibbs:
      return RunGibbs(config);
    case Command::kTwoBath:
      return RunTwoBath(config);
    case Command::kOneBath:
      return RunOneBath(config);
    case Command::kCollide:
      return RunCollide(config);
    case Command::kHeatmap:
      return RunHeatmap(config);
    case Command::kMaxVis:
      return RunMaxVis(config);
  }
  throw InvalidArgument("unknown command");
}

nlohmann::ordered_json ToJson(const ResultRecord& record) {
  Json rows = Json::array();
  for (const auto& row : record.table.rows) {
    Json r = Json::array();
    for (double v : row) r.push_back(NumberJson(v));
    rows.push_back(std::move(r));
  }
  return Json{{"experiment", record.experiment},
              {"inputs", record.inputs},
              {"outputs", record.outputs},
              {"table", Json{{"columns", record.table.columns}, {"rows", std::move(rows)}}},
              {"tolerances", record.tolerances},
              {"versions", record.versions}};
}

ResultRecord FromJson(const nlohmann::ordered_json& json) {
  ResultRecord r;
  r.experiment = json.at("experiment").get<std::string>();
  r.inputs = json.at("inputs");
  r.outputs = json.at("outputs");
  r.table.columns = json.at("table").at("columns").get<std::vector<std::string>>();
  for (const auto& row : json.at("table").at("rows")) {
    std::vector<double> values;
    for (const auto& v : row) values.push_back(NumberFromJson(v));
    r.table.rows.push_back(std::move(values));
  }
  r.tolerances = json.at("tolerances");
  r.versions = json.at("versions");
  return r;
}

void EmitCsv(const Table& table, std::ostream& out) {
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    out << (k == 0 ? "" : ",") << table.columns[k];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k == 0 ? "" : ",") << FormatDouble(row[k]);
    out << '\n';
  }
}

void EmitJson(const ResultRecord& record, std::ostream& out) {
  out << ToJson(record).dump(2) << '\n';
}

void EmitCsv(const Table& table, const std::string& path) {
  std::ofstream file;
  std::ostream& out = OpenOutput(path, file);
  EmitCsv(table, out);
  Finish(file, path);
}

void EmitJson(const ResultRecord& record, const std::string& path) {
  std::ofstream file;
  std::ostream& out = OpenOutput(path, file);
  EmitJson(record, out);
  Finish(file, path);
}

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    ExperimentConfig config = ParseCommandLine(args);
    if (const char* cap = std::getenv("THERMOSUP_MAX_DIM")) {
      config.max_amplitudes = ParseMaxAmplitudes(cap);
    }
    const ResultRecord record = Execute(config);
    std::ofstream file;
    std::ostream& sink = config.out == "-" ? out : OpenOutput(config.out, file);
    if (config.format == Format::kJson) {
      EmitJson(record, sink);
    } else {
      EmitCsv(record.table, sink);
    }
    if (file.is_open()) {
      file.close();
      if (!file) throw IoError("failed writing '" + config.out + "'");
    }
    return kExitOk;
  } catch (const HelpRequested& help) {
    out << help.what();
    return kExitOk;
  } catch (const ParseError& e) {
    err << "thermosup: error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvalidArgument& e) {
    err << "thermosup: invalid configuration: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ThresholdNotReached& e) {
    err << "thermosup: invalid configuration: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ResourceExhausted& e) {
    err << "thermosup: resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const IoError& e) {
    err << "thermosup: i/o error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "thermosup: resource limit: out of memory\n";
    return kExitResource;
  }
}

}  // namespace thermosup::cli
