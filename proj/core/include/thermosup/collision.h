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

// Collisional partial thermalisation.
//
// A qubit probe meets a sequence of fresh bath qubits, each purified by its own
// ancilla, through the generalised amplitude damping interaction. Three set-ups
// are supported: a single bath (plain), two baths selected by a control qubit
// (two-bath), and one bath whose purification is entangled with a control
// (one-bath). Local unitaries on the baths are the identity throughout.
//
// Two engines are provided. The compact engine contracts every bath subsystem
// right after its collision, carrying only probe-sized operators: the
// per-branch probe states and the cross operator Tr_env |Psi_0><Psi_1|. The
// statevector engine keeps the full pure state of control, baths, ancillas and
// probe and is limited by `max_amplitudes`.

#ifndef THERMOSUP_COLLISION_H_
#define THERMOSUP_COLLISION_H_

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "thermosup/qmath.h"
#include "thermosup/thermal.h"
#include "thermosup/visibility.h"

namespace thermosup {

enum class CollisionScenario { kPlain, kTwoBath, kOneBath };
enum class CollisionEngine { kCompact, kStatevector };

inline constexpr std::size_t kDefaultMaxAmplitudes = 4194304;

struct CollisionConfig {
  double eta = 0.8;
  // Number of bath subsystems per bath, one collision each.
  std::size_t collisions = 1;
  // T_0, T_1. The plain scenario uses T_0 only.
  std::array<Temperature, 2> temperatures{Temperature::FromKelvin(1.0),
                                          Temperature::FromKelvin(1.0)};
  DensityMatrix probe = DensityMatrix::Diagonal(std::array{1.0, 0.0});
  double threshold = 1e-3;
  CollisionScenario scenario = CollisionScenario::kPlain;
  // Level spacing shared by probe and bath qubits.
  double energy_gap = 1.0;
  CollisionEngine engine = CollisionEngine::kCompact;
  // Statevector engine only.
  std::size_t max_amplitudes = kDefaultMaxAmplitudes;

  void Validate() const;
  HamiltonianSpec hamiltonian() const { return HamiltonianSpec::Qubit(energy_gap); }
};

struct CollisionRecord {
  std::size_t collision;
  // Probe state (control unmeasured) against Gibbs(T_0).
  double trace_distance;
  // Control visibility after this collision; absent for the plain scenario.
  std::optional<double> visibility;
};

struct CollisionTrace {
  std::vector<CollisionRecord> records;
};

// Per-collision records for any scenario.
CollisionTrace RunCollisions(const CollisionConfig& cfg);

// Plain scenario: trace distance of the probe to Gibbs(T_0) after each
// collision. Throws InvalidArgument for other scenarios.
CollisionTrace ThermalizationCurve(const CollisionConfig& cfg);

// Control visibility after all collisions; the scenario tag is ignored.
VisibilityResult TwoBathCollisionalVisibility(const CollisionConfig& cfg);
VisibilityResult OneBathCollisionalVisibility(const CollisionConfig& cfg);
// Dispatches on the scenario tag; the plain scenario has no control.
VisibilityResult CollisionalVisibility(const CollisionConfig& cfg);

// Least collision number whose trace distance is below `threshold`. Throws
// ThresholdNotReached if none of the configured collisions gets there.
std::size_t CollisionsToThreshold(const CollisionConfig& cfg);

struct GridSpec {
  double t_min = 0.1;
  double t_max = 5.0;
  std::size_t points = 25;

  // Evenly spaced, endpoints included.
  std::vector<double> Values() const;
};

struct HeatmapCell {
  double t0;
  double t1;
  double visibility;
};

// Row-major over (t0, t1): cell index = i0 * points + i1.
struct Heatmap {
  std::vector<HeatmapCell> cells;
  std::size_t points = 0;
};

// Every cell is independent; `threads` = 0 uses the hardware concurrency.
Heatmap VisibilityHeatmap(const GridSpec& grid, const CollisionConfig& cfg,
                          std::size_t threads = 0);

// Number of amplitudes the statevector engine would allocate.
std::size_t StatevectorAmplitudes(const CollisionConfig& cfg);

}  // namespace thermosup

#endif  // THERMOSUP_COLLISION_H_
