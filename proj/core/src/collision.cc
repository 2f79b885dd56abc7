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

#include "thermosup/collision.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "thermosup/channels.h"
#include "thermosup/errors.h"

namespace thermosup {
namespace {

struct RunOutput {
  std::vector<CollisionRecord> records;
  // <Psi_1|Psi_0> after the last collision; zero for the plain scenario.
  Complex amplitude{0.0, 0.0};
};

ComplexMatrix Outer(const ComplexVector& ket, const ComplexVector& bra) {
  return ket * bra.adjoint();
}

// Tr_env[g0 (probe_op (x) |ket><bra|) g1^+] on probe (x) env.
ComplexMatrix ContractCollision(const ComplexMatrix& g0, const ComplexMatrix& g1,
                                const ComplexMatrix& probe_op,
                                const ComplexVector& ket,
                                const ComplexVector& bra) {
  const ComplexMatrix joint = g0 * Kron(probe_op, Outer(ket, bra)) * g1.adjoint();
  const std::array<std::size_t, 1> probe{0};
  return PartialTrace(joint, Dims{2, static_cast<std::size_t>(ket.size())}, probe);
}

RunOutput RunCompact(const CollisionConfig& cfg) {
  const HamiltonianSpec h = cfg.hamiltonian();
  const ComplexMatrix g = GadcOnPurified(cfg.eta);
  const ComplexVector theta0 = Purify(h, cfg.temperatures[0]).amplitudes();
  const ComplexVector theta1 = Purify(h, cfg.temperatures[1]).amplitudes();
  const ComplexMatrix target = GibbsState(h, cfg.temperatures[0]).matrix();

  // Per-collision environment: the fresh subsystem(s) each branch sees.
  ComplexMatrix g0 = g, g1 = g;
  ComplexVector env0 = theta0, env1 = theta0;
  Complex idle_overlap = 1.0;  // <env1|env0> for subsystems not yet used
  switch (cfg.scenario) {
    case CollisionScenario::kPlain:
      break;
    case CollisionScenario::kOneBath:
      env1 = theta1;
      idle_overlap = theta1.dot(theta0);
      break;
    case CollisionScenario::kTwoBath: {
      const Dims dims{2, 2, 2, 2, 2};  // probe, B0, A0, B1, A1
      const std::array<std::size_t, 3> on_bath0{0, 1, 2};
      const std::array<std::size_t, 3> on_bath1{0, 3, 4};
      g0 = EmbedOperator(g, dims, on_bath0);
      g1 = EmbedOperator(g, dims, on_bath1);
      env0 = Kron(theta0, theta1);
      env1 = env0;
      break;
    }
  }

  ComplexMatrix branch0 = cfg.probe.matrix();
  ComplexMatrix branch1 = cfg.probe.matrix();
  ComplexMatrix cross = cfg.probe.matrix();
  RunOutput out;
  for (std::size_t r = 1; r <= cfg.collisions; ++r) {
    branch0 = ContractCollision(g0, g0, branch0, env0, env0);
    if (cfg.scenario == CollisionScenario::kPlain) {
      out.records.push_back({r, TraceDistance(branch0, target), std::nullopt});
      continue;
    }
    branch1 = ContractCollision(g1, g1, branch1, env1, env1);
    cross = ContractCollision(g0, g1, cross, env0, env1);
    const Complex amplitude =
        cross.trace() *
        std::pow(idle_overlap, static_cast<double>(cfg.collisions - r));
    const ComplexMatrix probe = 0.5 * (branch0 + branch1);
    out.records.push_back({r, TraceDistance(probe, target), std::abs(amplitude)});
    out.amplitude = amplitude;
  }
  return out;
}

std::size_t SaturatingProduct(const Dims& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) {
    if (n > std::numeric_limits<std::size_t>::max() / d) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= d;
  }
  return n;
}

struct StatevectorLayout {
  Dims dims;
  bool has_control = false;
  std::size_t probe = 0;
  // Pure probe amplitudes on probe (x) reference (or the probe alone).
  ComplexVector probe_state;
  bool has_reference = false;
};

StatevectorLayout MakeLayout(const CollisionConfig& cfg) {
  StatevectorLayout layout;
  const DensityMatrix::Spectrum spectrum = cfg.probe.spectrum();
  layout.has_reference = spectrum.probabilities(1) > 1e-12;
  if (layout.has_reference) {
    layout.probe_state = ComplexVector::Zero(4);
    for (Eigen::Index k = 0; k < 2; ++k) {
      ComplexVector ref = ComplexVector::Zero(2);
      ref(k) = 1.0;
      layout.probe_state +=
          std::sqrt(std::max(spectrum.probabilities(k), 0.0)) *
          Kron(ComplexVector(spectrum.eigenvectors.col(k)), ref);
    }
  } else {
    layout.probe_state = spectrum.eigenvectors.col(0);
  }

  layout.has_control = cfg.scenario != CollisionScenario::kPlain;
  if (layout.has_control) layout.dims.push_back(2);
  const std::size_t baths = cfg.scenario == CollisionScenario::kTwoBath ? 2 : 1;
  for (std::size_t i = 0; i < baths * cfg.collisions; ++i) {
    layout.dims.push_back(2);  // bath qubit
    layout.dims.push_back(2);  // ancilla
  }
  layout.probe = layout.dims.size();
  layout.dims.push_back(2);
  if (layout.has_reference) layout.dims.push_back(2);
  return layout;
}

ComplexVector Repeat(const ComplexVector& factor, std::size_t times) {
  ComplexVector out = ComplexVector::Ones(1);
  for (std::size_t i = 0; i < times; ++i) out = Kron(out, factor);
  return out;
}

RunOutput RunStatevector(const CollisionConfig& cfg) {
  const StatevectorLayout layout = MakeLayout(cfg);
  const std::size_t amplitudes = SaturatingProduct(layout.dims);
  if (amplitudes > cfg.max_amplitudes) {
    throw ResourceExhausted("statevector engine needs " + std::to_string(amplitudes) +
                            " amplitudes, budget is " +
                            std::to_string(cfg.max_amplitudes));
  }

  const HamiltonianSpec h = cfg.hamiltonian();
  const ComplexVector theta0 = Purify(h, cfg.temperatures[0]).amplitudes();
  const ComplexVector theta1 = Purify(h, cfg.temperatures[1]).amplitudes();
  const std::size_t m = cfg.collisions;
  ComplexVector zero = ComplexVector::Zero(2), one = ComplexVector::Zero(2);
  zero(0) = 1.0;
  one(1) = 1.0;

  ComplexVector psi;
  switch (cfg.scenario) {
    case CollisionScenario::kPlain:
      psi = Repeat(theta0, m);
      break;
    case CollisionScenario::kOneBath:
      psi = (Kron(zero, Repeat(theta0, m)) + Kron(one, Repeat(theta1, m))) /
            std::sqrt(2.0);
      break;
    case CollisionScenario::kTwoBath:
      psi = Kron(ComplexVector((zero + one) / std::sqrt(2.0)),
                 Kron(Repeat(theta0, m), Repeat(theta1, m)));
      break;
  }
  psi = Kron(psi, layout.probe_state);

  const ComplexMatrix g = GadcOnPurified(cfg.eta);
  ComplexMatrix controlled;
  if (cfg.scenario == CollisionScenario::kTwoBath) {
    const Dims local{2, 2, 2, 2, 2, 2};  // C, S, B0, A0, B1, A1
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const std::array<std::size_t, 1> c{0};
    const std::array<std::size_t, 3> on_bath0{1, 2, 3};
    const std::array<std::size_t, 3> on_bath1{1, 4, 5};
    controlled = EmbedOperator(p0, local, c) * EmbedOperator(g, local, on_bath0) +
                 EmbedOperator(p1, local, c) * EmbedOperator(g, local, on_bath1);
  }

  const std::size_t first_bath = layout.has_control ? 1 : 0;
  const ComplexMatrix target = GibbsState(h, cfg.temperatures[0]).matrix();
  const std::array<std::size_t, 1> keep_probe{layout.probe};
  const std::array<std::size_t, 1> keep_control{0};

  RunOutput out;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b0 = first_bath + 2 * r;
    if (cfg.scenario == CollisionScenario::kTwoBath) {
      const std::size_t b1 = first_bath + 2 * m + 2 * r;
      const std::array<std::size_t, 6> targets{0, layout.probe, b0, b0 + 1, b1, b1 + 1};
      ApplyOperatorInPlace(psi, layout.dims, controlled, targets);
    } else {
      const std::array<std::size_t, 3> targets{layout.probe, b0, b0 + 1};
      ApplyOperatorInPlace(psi, layout.dims, g, targets);
    }
    const StateVector state(psi, layout.dims);
    const DensityMatrix probe = ReducedDensity(state, keep_probe);
    CollisionRecord record{r + 1, TraceDistance(probe.matrix(), target), std::nullopt};
    if (layout.has_control) {
      const DensityMatrix control = ReducedDensity(state, keep_control);
      out.amplitude = 2.0 * control.matrix()(0, 1);
      record.visibility = std::abs(out.amplitude);
    }
    out.records.push_back(record);
  }
  return out;
}

RunOutput Run(const CollisionConfig& cfg) {
  cfg.Validate();
  return cfg.engine == CollisionEngine::kCompact ? RunCompact(cfg)
                                                 : RunStatevector(cfg);
}

VisibilityResult RunScenario(CollisionConfig cfg, CollisionScenario scenario) {
  cfg.scenario = scenario;
  return VisibilityFromAmplitude(Run(cfg).amplitude);
}

}  // namespace

void CollisionConfig::Validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw InvalidArgument("CollisionConfig: eta must lie in [0, 1]");
  }
  if (collisions < 1) throw InvalidArgument("CollisionConfig: need at least one collision");
  if (!(threshold > 0.0)) throw InvalidArgument("CollisionConfig: threshold must be > 0");
  if (!(std::isfinite(energy_gap) && energy_gap >= 0.0)) {
    throw InvalidArgument("CollisionConfig: energy gap must be finite and >= 0");
  }
  if (probe.dim() != 2) throw InvalidArgument("CollisionConfig: probe must be a qubit");
}

std::size_t StatevectorAmplitudes(const CollisionConfig& cfg) {
  cfg.Validate();
  return SaturatingProduct(MakeLayout(cfg).dims);
}

CollisionTrace RunCollisions(const CollisionConfig& cfg) {
  return CollisionTrace{Run(cfg).records};
}

CollisionTrace ThermalizationCurve(const CollisionConfig& cfg) {
  if (cfg.scenario != CollisionScenario::kPlain) {
    throw InvalidArgument("ThermalizationCurve: scenario must be plain");
  }
  return RunCollisions(cfg);
}

VisibilityResult TwoBathCollisionalVisibility(const CollisionConfig& cfg) {
  return RunScenario(cfg, CollisionScenario::kTwoBath);
}

VisibilityResult OneBathCollisionalVisibility(const CollisionConfig& cfg) {
  return RunScenario(cfg, CollisionScenario::kOneBath);
}

VisibilityResult CollisionalVisibility(const CollisionConfig& cfg) {
  switch (cfg.scenario) {
    case CollisionScenario::kTwoBath:
      return TwoBathCollisionalVisibility(cfg);
    case CollisionScenario::kOneBath:
      return OneBathCollisionalVisibility(cfg);
    case CollisionScenario::kPlain:
      break;
  }
  throw InvalidArgument("CollisionalVisibility: the plain scenario has no control");
}

std::size_t CollisionsToThreshold(const CollisionConfig& cfg) {
  const CollisionTrace trace = RunCollisions(cfg);
  for (const CollisionRecord& record : trace.records) {
    if (record.trace_distance < cfg.threshold) return record.collision;
  }
  throw ThresholdNotReached("trace distance stays above " +
                            std::to_string(cfg.threshold) + " for all " +
                            std::to_string(cfg.collisions) + " collisions");
}

std::vector<double> GridSpec::Values() const {
  if (!(std::isfinite(t_min) && std::isfinite(t_max) && t_min >= 0.0 &&
        t_max >= t_min)) {
    throw InvalidArgument("GridSpec: need finite 0 <= t_min <= t_max");
  }
  std::vector<double> values(points);
  for (std::size_t i = 0; i < points; ++i) {
    values[i] = points == 1 ? t_min
                            : t_min + (t_max - t_min) * static_cast<double>(i) /
                                          static_cast<double>(points - 1);
  }
  return values;
}

Heatmap VisibilityHeatmap(const GridSpec& grid, const CollisionConfig& cfg,
                          std::size_t threads) {
  if (cfg.scenario == CollisionScenario::kPlain) {
    throw InvalidArgument("VisibilityHeatmap: scenario must be two-bath or one-bath");
  }
  cfg.Validate();
  const std::vector<double> values = grid.Values();
  const std::size_t n = values.size();
  Heatmap map;
  map.points = n;
  map.cells.resize(n * n);
  if (n == 0) return map;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n * n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n * n; i = next++) {
      try {
        CollisionConfig cell = cfg;
        const double t0 = values[i / n];
        const double t1 = values[i % n];
        cell.temperatures = {Temperature::FromKelvin(t0), Temperature::FromKelvin(t1)};
        map.cells[i] = {t0, t1, CollisionalVisibility(cell).visibility};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return map;
}

}  // namespace thermosup
