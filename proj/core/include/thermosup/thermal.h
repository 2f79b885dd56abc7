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

#ifndef THERMOSUP_THERMAL_H_
#define THERMOSUP_THERMAL_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "thermosup/qmath.h"

namespace thermosup {

// Finite spectrum shared by the probe and every bath subsystem.
class HamiltonianSpec {
 public:
  // Energies must be finite and non-decreasing, with at least two levels.
  explicit HamiltonianSpec(std::vector<double> energies);

  // Two levels {0, gap}.
  static HamiltonianSpec Qubit(double gap = 1.0);
  // Equally spaced levels {0, gap, ..., (dim - 1) gap}.
  static HamiltonianSpec Ladder(std::size_t dim, double gap = 1.0);

  std::size_t dim() const { return energies_.size(); }
  std::span<const double> energies() const { return energies_; }
  double ground_energy() const { return energies_.front(); }

 private:
  std::vector<double> energies_;
};

// Inverse temperature with k_B = 1. beta = 0 is T = inf and beta = inf is
// T = 0; both limits are represented exactly.
class Temperature {
 public:
  static Temperature FromKelvin(double t);
  static Temperature FromBeta(double beta);
  static Temperature Zero();
  static Temperature Infinite();

  double beta() const { return beta_; }
  double kelvin() const;
  bool is_zero() const;
  bool is_infinite() const { return beta_ == 0.0; }

  friend bool operator==(const Temperature&, const Temperature&) = default;

 private:
  explicit Temperature(double beta) : beta_(beta) {}
  double beta_;
};

std::string ToString(const Temperature& t);

struct GibbsWeights {
  // c_n = exp(-beta E_n) / Z, decreasing in energy.
  std::vector<double> weights;
  // log Z; -inf/+inf are possible at T = 0 with a non-zero ground energy.
  double log_partition;
};

GibbsWeights ComputeGibbsWeights(const HamiltonianSpec& h, const Temperature& t);

// Diagonal in the energy basis. At T = 0 this is the uniform mixture over the
// (possibly degenerate) ground block.
DensityMatrix GibbsState(const HamiltonianSpec& h, const Temperature& t);

// sum_n sqrt(c_n) |n, n> on bath (x) ancilla, bath most significant.
StateVector Purify(const HamiltonianSpec& h, const Temperature& t);

// Per-branch purification data for a superposition of purifications.
// `ancilla_bases[x]` holds the ancilla basis {|a(b, x)>} as columns; the
// identity gives the canonical |n, n> pairing.
struct PurificationSpec {
  std::array<Temperature, 2> temperatures;
  std::array<double, 2> phases{0.0, 0.0};
  std::array<ComplexMatrix, 2> ancilla_bases;

  // Identity bases, zero phases.
  static PurificationSpec Canonical(const HamiltonianSpec& h, Temperature t0,
                                    Temperature t1);

  // Throws InvalidArgument on a non-unitary basis or a dimension mismatch.
  void Validate(const HamiltonianSpec& h) const;
};

// sum_b exp(-i phi_x) sqrt(c_b^{beta_x}) |b> (x) |a(b, x)>, normalised to one.
StateVector PurifyGeneral(const HamiltonianSpec& h, const PurificationSpec& spec,
                          int branch);

// V^{x x'}_{b b'} = <a(b', x') | a(b, x)>.
ComplexMatrix AncillaOverlapMatrix(const PurificationSpec& spec, int x = 0,
                                   int x_prime = 1);

}  // namespace thermosup

#endif  // THERMOSUP_THERMAL_H_
