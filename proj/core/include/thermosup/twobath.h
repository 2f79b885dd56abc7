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

// Quantum-controlled thermalisation of a probe with one of two baths.
//
// A control qubit prepared in |+> routes the probe to bath B_0 or B_1; the
// control is then post-selected on (|0> + e^{i phi}|1>)/sqrt(2). The probe
// thermalises through the SWAP interaction, optionally preceded by a
// branch-dependent probe rotation u^i (equivalently a different Kraus
// representation of each thermal channel), or with the cross-terms built from
// a dilated bath purification.

#ifndef THERMOSUP_TWOBATH_H_
#define THERMOSUP_TWOBATH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "thermosup/qmath.h"
#include "thermosup/thermal.h"
#include "thermosup/visibility.h"

namespace thermosup {

// Unitaries on an enlarged bath (x) ancilla space. The physical purification
// space (bath most significant) is embedded as the first d*d basis states, so
// both matrices must be square with size >= d*d. A genuine isometry is passed
// by extending it to a unitary.
struct Dilation {
  ComplexMatrix v;
  ComplexMatrix w;
};

struct TwoBathConfig {
  HamiltonianSpec hamiltonian;
  std::array<Temperature, 2> temperatures;
  DensityMatrix probe;
  double phase = 0.0;
  // u^0, u^1 on the probe; identity when absent.
  std::optional<std::array<ComplexMatrix, 2>> representation;
  // Per-branch dilations for the cross-terms; identity when absent.
  std::optional<std::array<Dilation, 2>> dilations;

  void Validate() const;
  ComplexMatrix RepresentationUnitary(int branch) const;
};

struct UnitaryPair {
  ComplexMatrix u0;
  ComplexMatrix u1;
};

// Factor order (B_0, B_1, C, S). Each argument acts on probe (x) bath.
ComplexMatrix ControlledUnitary(const ComplexMatrix& u_b0s,
                                const ComplexMatrix& u_b1s);
ComplexMatrix ControlledUnitary(const TwoBathConfig& cfg);

// SWAP * (u^i (x) I_B): the probe-bath interaction realising branch i's Kraus
// representation.
ComplexMatrix BranchInteraction(const TwoBathConfig& cfg, int branch);

// 1/4 (rho^{b0} + rho^{b1} + e^{i phi} rho^{b0} u^0 rho_S u^{1+} rho^{b1} + h.c.)
ConditionalState ConditionalProbeState(const TwoBathConfig& cfg);

// T'^i = [<psi| v^+][w (I_A (x) U_BS)(|psi> (x) I_S)], one per branch.
std::array<ComplexMatrix, 2> DilatedKrausOperators(const TwoBathConfig& cfg);

// 1/4 (rho^{b0} + rho^{b1} + e^{i phi} T'^0 rho_S T'^{1+} + h.c.)
ConditionalState ConditionalProbeStateDilated(const TwoBathConfig& cfg);

// Visibility |Tr(T^0 rho_S T^{1+})| with phase psi = arg of the trace, so that
// Tr rho_S(phi) = 1/2 + 1/2 V cos(phi + psi). Uses the dilated operators when
// the config carries dilations.
VisibilityResult Visibility(const TwoBathConfig& cfg);

// |Tr(u^{0+} rho^{b0} rho^{b1} u^1 rho_S)|.
double VisibilityForUnitaries(const HamiltonianSpec& h, const Temperature& t0,
                              const Temperature& t1, const DensityMatrix& probe,
                              const ComplexMatrix& u0, const ComplexMatrix& u1);

// sum_s p_s c_s^{b0} c_s^{b1} with both sequences sorted decreasingly. This is
// the von Neumann trace bound on the expression above, so it is the global
// maximum over unitary pairs.
double MaxVisibilityClosedForm(const HamiltonianSpec& h, const Temperature& t0,
                               const Temperature& t1, const DensityMatrix& probe);

// u^0 = u^1 rotating the probe eigenbasis (decreasing p) onto the energy
// eigenbasis (increasing energy). Attains the closed form.
UnitaryPair MaxVisibilityUnitaries(const HamiltonianSpec& h,
                                   const DensityMatrix& probe);

struct SearchOptions {
  std::size_t trials = 20000;
  std::uint64_t seed = 1;
  // Hill-climbing proposals after sampling; 0 disables refinement.
  std::size_t refine_iterations = 4000;
};

struct SearchResult {
  double visibility;
  UnitaryPair best;
};

// Haar sampling of unitary pairs followed by a shrinking-step random walk on
// u -> u exp(i s H). Throws InvalidArgument when trials == 0.
SearchResult MaxVisibilitySearch(const HamiltonianSpec& h, const Temperature& t0,
                                 const Temperature& t1, const DensityMatrix& probe,
                                 const SearchOptions& options);

// u^0 maps the probe eigenbasis onto energy eigenstates; u^1 = P u^0 with P the
// cyclic shift |k> -> |k+1 mod d>.
UnitaryPair ZeroVisibilityUnitaries(const HamiltonianSpec& h,
                                    const DensityMatrix& probe);

// |k> -> |k + 1 mod d>.
ComplexMatrix CyclicShift(std::size_t d);

}  // namespace thermosup

#endif  // THERMOSUP_TWOBATH_H_
