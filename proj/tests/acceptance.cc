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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "oracles.h"
#include "thermosup/channels.h"
#include "thermosup/collision.h"
#include "thermosup/onebath.h"
#include "thermosup/thermal.h"
#include "thermosup/twobath.h"

namespace thermosup {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNoBudget = kInf;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Tracker {
 public:
  void Require(bool condition, const std::string& what) {
    if (!condition && outcome_.ok) {
      outcome_.ok = false;
      outcome_.detail = what;
    }
  }
  void Max(double& worst, double value) { worst = std::max(worst, value); }
  Outcome Done(const std::string& summary) {
    if (outcome_.ok) outcome_.detail = summary;
    return outcome_;
  }

 private:
  Outcome outcome_;
};

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double MaxAbs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Temperature K(double t) { return Temperature::FromKelvin(t); }

DensityMatrix Ground(std::size_t d) {
  std::vector<double> p(d, 0.0);
  p[0] = 1.0;
  return DensityMatrix::Diagonal(p);
}

Temperature RandomTemperature(Rng& rng) {
  static const std::array<double, 7> kChoices{0.0, 0.3, 0.7, 1.0, 2.5, 6.0, kInf};
  return K(kChoices[rng() % kChoices.size()]);
}

TwoBathConfig RandomTwoBath(std::size_t d, Rng& rng) {
  TwoBathConfig cfg{.hamiltonian = HamiltonianSpec::Ladder(d, 0.5 + 0.1 * (rng() % 10)),
                    .temperatures = {RandomTemperature(rng), RandomTemperature(rng)},
                    .probe = RandomDensityMatrix(d, rng),
                    .phase = std::uniform_real_distribution<double>(-4.0, 4.0)(rng),
                    .representation = std::nullopt,
                    .dilations = std::nullopt};
  cfg.representation = std::array{RandomUnitary(d, rng), RandomUnitary(d, rng)};
  return cfg;
}

OneBathConfig RandomOneBath(std::size_t d, Rng& rng) {
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  OneBathConfig cfg{
      .hamiltonian = HamiltonianSpec::Ladder(d, 0.5 + 0.1 * (rng() % 10)),
      .purification = {.temperatures = {RandomTemperature(rng), RandomTemperature(rng)},
                       .phases = {angle(rng), angle(rng)},
                       .ancilla_bases = {RandomUnitary(d, rng), RandomUnitary(d, rng)}},
      .control_phase = angle(rng),
      .probe = RandomDensityMatrix(d, rng),
      .local_unitaries = std::nullopt};
  cfg.local_unitaries = std::array{RandomUnitary(d * d, rng), RandomUnitary(d * d, rng)};
  return cfg;
}

oracle::ControlProbe SimulateTwoBath(const TwoBathConfig& cfg) {
  return oracle::TwoBathGlobal(cfg.hamiltonian, cfg.temperatures, cfg.probe.matrix(),
                               {cfg.RepresentationUnitary(0), cfg.RepresentationUnitary(1)});
}

oracle::ControlProbe SimulateOneBath(const OneBathConfig& cfg) {
  return oracle::OneBathGlobal(cfg.hamiltonian, cfg.purification.temperatures,
                               cfg.purification.phases, cfg.purification.ancilla_bases,
                               cfg.probe.matrix(), {cfg.LocalUnitary(0), cfg.LocalUnitary(1)});
}

Outcome FullThermalisation() {
  Tracker t;
  Rng rng(101);
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    const HamiltonianSpec h = HamiltonianSpec::Ladder(d, 1.0);
    for (double temp : {0.0, 0.5, 1.0, 5.0, kInf}) {
      const DensityMatrix gibbs = GibbsState(h, K(temp));
      const KrausSet channel = KrausFromUnitary(SwapThermalizer(d), gibbs);
      for (int k = 0; k < 20; ++k) {
        const double dist = TraceDistance(ApplyKraus(channel, RandomDensityMatrix(d, rng)), gibbs);
        t.Max(worst, dist);
      }
    }
  }
  t.Require(worst < 1e-12, "distance " + Sci(worst));
  return t.Done("max distance to Gibbs " + Sci(worst));
}

Outcome TwoBathOracle() {
  Tracker t;
  Rng rng(202);
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    for (int k = 0; k < (d == 2 ? 50 : 20); ++k) {
      const TwoBathConfig cfg = RandomTwoBath(d, rng);
      t.Max(worst, MaxAbs(ConditionalProbeState(cfg).matrix() -
                          SimulateTwoBath(cfg).Project(cfg.phase)));
    }
  }
  t.Require(worst < 1e-12, "elementwise deviation " + Sci(worst));
  return t.Done("max elementwise deviation " + Sci(worst) + " over 50 qubit + 20 qutrit");
}

Outcome OneBathOracle() {
  Tracker t;
  Rng rng(303);
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    for (int k = 0; k < (d == 2 ? 50 : 20); ++k) {
      const OneBathConfig cfg = RandomOneBath(d, rng);
      t.Max(worst, MaxAbs(ProbeOutput(cfg).matrix() -
                          SimulateOneBath(cfg).Project(cfg.control_phase)));
    }
  }
  t.Require(worst < 1e-12, "elementwise deviation " + Sci(worst));
  return t.Done("max elementwise deviation " + Sci(worst) + " over 50 qubit + 20 qutrit");
}

Outcome NonThermalisation() {
  // Frozen from the oracle evaluation of the conditional state.
  constexpr double kExpected = 0.093672100551;
  Tracker t;
  const HamiltonianSpec h = HamiltonianSpec::Qubit();
  const TwoBathConfig cfg{.hamiltonian = h,
                          .temperatures = {K(1.0), K(1.0)},
                          .probe = Ground(2),
                          .phase = 0.0,
                          .representation = std::nullopt,
                          .dilations = std::nullopt};
  const double dist = TraceDistance(ConditionalProbeState(cfg).normalized(), GibbsState(h, K(1.0)));
  t.Require(dist > 0.05, "distance " + Sci(dist) + " not above 0.05");
  t.Require(std::abs(dist - kExpected) < 1e-10, "distance " + Sci(dist) + " differs from oracle");
  return t.Done("trace distance to Gibbs(1) " + Sci(dist));
}

Outcome VisibilityClosedForms() {
  Tracker t;
  Rng rng(505);
  double worst = 0.0;
  const std::array<double, 4> temps{0.0, 0.5, 1.0, 5.0};
  for (double t0 : temps) {
    for (double t1 : temps) {
      for (int k = 0; k < 20; ++k) {
        TwoBathConfig two = RandomTwoBath(2, rng);
        two.temperatures = {K(t0), K(t1)};
        const double closed = VisibilityForUnitaries(two.hamiltonian, K(t0), K(t1), two.probe,
                                                     two.RepresentationUnitary(0),
                                                     two.RepresentationUnitary(1));
        t.Max(worst, std::abs(closed - 2.0 * std::abs(SimulateTwoBath(two).Coherence())));
        t.Max(worst, std::abs(Visibility(two).visibility - closed));

        OneBathConfig one = RandomOneBath(2, rng);
        one.purification.temperatures = {K(t0), K(t1)};
        t.Max(worst, std::abs(VisibilityOneBath(one).visibility -
                              2.0 * std::abs(SimulateOneBath(one).Coherence())));
      }
    }
  }
  t.Require(worst < 1e-10, "deviation " + Sci(worst));
  return t.Done("max deviation " + Sci(worst) + " over 16 temperature pairs x 20 configs");
}

Outcome ExtremalVisibility() {
  Tracker t;
  Rng rng(606);
  double zero = 0.0;
  for (std::size_t d : {2u, 3u}) {
    for (int k = 0; k < 10; ++k) {
      const HamiltonianSpec h = HamiltonianSpec::Ladder(d, 1.0);
      const DensityMatrix probe = RandomDensityMatrix(d, rng);
      const Temperature t0 = RandomTemperature(rng);
      const Temperature t1 = RandomTemperature(rng);
      const UnitaryPair u = ZeroVisibilityUnitaries(h, probe);
      zero = std::max(zero, VisibilityForUnitaries(h, t0, t1, probe, u.u0, u.u1));
    }
  }
  t.Require(zero < 1e-12, "(a) zero-visibility construction gives " + Sci(zero));

  const HamiltonianSpec qubit = HamiltonianSpec::Qubit();
  double gap_worst = 0.0;
  for (const auto& [t0, t1] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    for (const DensityMatrix& probe : {Ground(2), RandomDensityMatrix(2, rng)}) {
      const double closed = MaxVisibilityClosedForm(qubit, K(t0), K(t1), probe);
      const SearchResult s = MaxVisibilitySearch(
          qubit, K(t0), K(t1), probe, SearchOptions{.trials = 20000, .seed = 7, .refine_iterations = 4000});
      t.Require(s.visibility <= closed + 1e-9, "(b) search exceeds closed form");
      gap_worst = std::max(gap_worst, closed - s.visibility);
    }
  }
  t.Require(gap_worst < 1e-3, "(b) search falls short by " + Sci(gap_worst));

  double fid = 0.0;
  const std::array<double, 6> temps{0.0, 0.2, 0.5, 1.0, 5.0, kInf};
  for (double a : temps) {
    for (double b : temps) {
      const double v = MaxVisibilityOneBath(qubit, K(a), K(b));
      fid = std::max(fid, std::abs(v - Fidelity(GibbsState(qubit, K(a)), GibbsState(qubit, K(b)))));
      t.Require((std::abs(v - 1.0) < 1e-12) == (a == b), "(c) unit visibility off the diagonal");
    }
  }
  t.Require(fid < 1e-12, "(c) fidelity deviation " + Sci(fid));
  return t.Done("zero " + Sci(zero) + ", search gap " + Sci(gap_worst) + ", fidelity " + Sci(fid));
}

Outcome GadcCurve() {
  Tracker t;
  CollisionConfig cfg;
  cfg.eta = 0.8;
  cfg.collisions = 5;
  cfg.temperatures = {K(1.0), K(1.0)};
  cfg.probe = Ground(2);
  cfg.threshold = 1e-3;
  const std::array<double, 5> expected{0.053788284274, 0.010757656855, 0.002151531371,
                                       0.000430306274, 0.0000860612548};
  const CollisionTrace trace = ThermalizationCurve(cfg);
  double worst = 0.0;
  for (std::size_t r = 0; r < expected.size(); ++r) {
    worst = std::max(worst, std::abs(trace.records[r].trace_distance - expected[r]));
  }
  t.Require(worst < 1e-12, "curve deviation " + Sci(worst));
  const std::size_t steps = CollisionsToThreshold(cfg);
  t.Require(steps == 4, "threshold reached after " + std::to_string(steps));
  cfg.eta = 1.0;
  cfg.collisions = 1;
  const double one = ThermalizationCurve(cfg).records.front().trace_distance;
  t.Require(one < 1e-12, "eta = 1 leaves distance " + Sci(one));
  return t.Done("curve deviation " + Sci(worst) + ", threshold at 4, eta = 1 distance " + Sci(one));
}

Outcome HeatmapShapes() {
  Tracker t;
  const GridSpec grid{};
  const auto map = [&](CollisionScenario scenario, std::size_t m) {
    CollisionConfig cfg;
    cfg.eta = 0.8;
    cfg.collisions = m;
    cfg.probe = Ground(2);
    cfg.scenario = scenario;
    return VisibilityHeatmap(grid, cfg);
  };
  const std::size_t n = grid.points;
  for (CollisionScenario scenario : {CollisionScenario::kOneBath, CollisionScenario::kTwoBath}) {
    const Heatmap m3 = map(scenario, 3);
    const Heatmap m5 = map(scenario, 5);
    for (const Heatmap* hm : {&m3, &m5}) {
      double previous = 2.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double v = hm->cells[i * n + j].visibility;
          if (scenario == CollisionScenario::kOneBath) {
            if (i == j) t.Require(std::abs(v - 1.0) < 1e-10, "one-bath diagonal not 1");
            if (i != j) t.Require(v < 1.0 - 1e-10, "one-bath off-diagonal not below 1");
          } else if (i == j) {
            t.Require(v < 1.0, "two-bath diagonal not below 1");
            t.Require(v < previous, "two-bath diagonal not decreasing");
            previous = v;
          }
        }
      }
    }
    for (std::size_t k = 0; k < n * n; ++k) {
      t.Require(m5.cells[k].visibility <= m3.cells[k].visibility + 1e-10,
                "visibility grows from 3 to 5 collisions");
    }
  }
  return t.Done("25x25 grids at 3 and 5 collisions for both scenarios");
}

Outcome ConsistencyBridge() {
  Tracker t;
  const HamiltonianSpec qubit = HamiltonianSpec::Qubit();
  const std::array<double, 4> temps{0.0, 0.5, 1.0, 5.0};
  double worst = 0.0;
  for (double a : temps) {
    for (double b : temps) {
      CollisionConfig cfg;
      cfg.eta = 1.0;
      cfg.collisions = 1;
      cfg.temperatures = {K(a), K(b)};
      cfg.probe = Ground(2);
      const TwoBathConfig two{.hamiltonian = qubit,
                              .temperatures = {K(a), K(b)},
                              .probe = Ground(2),
                              .phase = 0.0,
                              .representation = std::nullopt,
                              .dilations = std::nullopt};
      worst = std::max(worst, std::abs(TwoBathCollisionalVisibility(cfg).visibility -
                                       Visibility(two).visibility));
      const OneBathConfig one{.hamiltonian = qubit,
                              .purification = PurificationSpec::Canonical(qubit, K(a), K(b)),
                              .control_phase = 0.0,
                              .probe = Ground(2),
                              .local_unitaries = std::nullopt};
      worst = std::max(worst, std::abs(OneBathCollisionalVisibility(cfg).visibility -
                                       VisibilityOneBath(one).visibility));
      cfg.scenario = CollisionScenario::kPlain;
      worst = std::max(worst, ThermalizationCurve(cfg).records.front().trace_distance);
    }
  }
  t.Require(worst < 1e-10, "deviation " + Sci(worst));
  return t.Done("max deviation " + Sci(worst) + " on a 4x4 grid");
}

Outcome CliDeterminism() {
  Tracker t;
  const std::vector<std::vector<std::string>> commands{
      {"gibbs", "--t", "0.7", "--dim", "4"},
      {"twobath", "--t0", "1", "--t1", "inf", "--unitaries", "random", "--seed", "3"},
      {"onebath", "--ancilla-basis", "random", "--unitaries", "random", "--seed", "3"},
      {"collide", "--scenario", "onebath", "--m", "4", "--t1", "2"},
      {"heatmap", "--grid", "6", "--m", "3", "--threads", "3"},
      {"maxvis", "--trials", "500", "--refine", "100", "--seed", "11"}};
  for (auto args : commands) {
    for (const char* format : {"csv", "json"}) {
      args.push_back("--format");
      args.push_back(format);
      std::ostringstream a, b, err;
      const int ca = cli::Main(args, a, err);
      const int cb = cli::Main(args, b, err);
      t.Require(ca == 0 && cb == 0, args.front() + " failed: " + err.str());
      t.Require(!a.str().empty() && a.str() == b.str(), args.front() + " output differs");
      args.resize(args.size() - 2);
    }
  }
  return t.Done("6 subcommands x 2 formats byte-identical");
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
  double budget_seconds;
};

}  // namespace
}  // namespace thermosup

int main() {
  using thermosup::Criterion;
  const std::vector<Criterion> criteria{
      {1, "full-thermalisation fixed point", thermosup::FullThermalisation, 1.0},
      {2, "two-bath oracle equivalence", thermosup::TwoBathOracle, 10.0},
      {3, "one-bath oracle equivalence", thermosup::OneBathOracle, 10.0},
      {4, "non-thermalisation at equal temperatures", thermosup::NonThermalisation, thermosup::kNoBudget},
      {5, "visibility closed forms", thermosup::VisibilityClosedForms, thermosup::kNoBudget},
      {6, "extremal visibility", thermosup::ExtremalVisibility, 60.0},
      {7, "collisional thermalisation curve", thermosup::GadcCurve, thermosup::kNoBudget},
      {8, "heat-map shape properties", thermosup::HeatmapShapes, 120.0},
      {9, "collisional consistency bridge", thermosup::ConsistencyBridge, thermosup::kNoBudget},
      {10, "CLI determinism", thermosup::CliDeterminism, thermosup::kNoBudget},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    thermosup::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.ok && seconds > c.budget_seconds) {
      outcome = {false, "runtime " + thermosup::Sci(seconds) + " s over budget"};
    }
    if (!outcome.ok) ++failures;
    std::printf("%s %d %s: %s (%.2f s)\n", outcome.ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                outcome.detail.c_str(), seconds);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
