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

// One bath in a superposition of two purifications tagged by a control.
//
// Factor order for the global interaction is (ancilla, bath, control, probe).
// The control-dependent local unitaries u^x act jointly on ancilla (x) bath
// after the SWAP interaction between bath and probe.

#ifndef THERMOSUP_ONEBATH_H_
#define THERMOSUP_ONEBATH_H_

#include <array>
#include <optional>

#include "thermosup/qmath.h"
#include "thermosup/thermal.h"
#include "thermosup/twobath.h"
#include "thermosup/visibility.h"

namespace thermosup {

struct OneBathConfig {
  HamiltonianSpec hamiltonian;
  PurificationSpec purification;
  // phi_C of the post-selected control state (|0> + e^{i phi_C}|1>)/sqrt(2).
  double control_phase = 0.0;
  DensityMatrix probe;
  // u^0, u^1 on ancilla (x) bath; identity when absent.
  std::optional<std::array<ComplexMatrix, 2>> local_unitaries;

  void Validate() const;
  ComplexMatrix LocalUnitary(int branch) const;
  // phi~ = phi_0 - phi_1 - phi_C.
  double EffectivePhase() const;
};

// (1/sqrt 2) sum_x |theta^{beta_x}(x)> (x) |x>_C on bath (x) ancilla (x) control.
StateVector SuperposedPurification(const OneBathConfig& cfg);

// Bath state after post-selecting the control on |phi_C>, ancilla traced out.
ConditionalState ConditionalBathState(const OneBathConfig& cfg);

// W_{b b'} = <a(b', 1)| Tr_B{u^{1+} u^0 (I_A (x) rho_S)} |a(b, 0)>, where rho_S
// sits on the bath factor because the SWAP has moved it there. Reduces to the
// ancilla overlap matrix V^{01} when u^0 = u^1.
ComplexMatrix OverlapMatrixW(const OneBathConfig& cfg);

// sum_x [(u^x_{AB} (x) I_S)(I_A (x) SWAP_{BS})] (x) |x><x|_C on (A, B, C, S).
ComplexMatrix OneBathGlobalUnitary(const OneBathConfig& cfg);

// 1/4 [rho^{b0} + rho^{b1} + (e^{-i phi~} sum sqrt(c_b c_b') W_{bb'} |b><b'| + h.c.)]
ConditionalState ProbeOutput(const OneBathConfig& cfg);

// V = |sum_b sqrt(c_b^{b0} c_b^{b1}) W_bb| with psi chosen so that the control
// outcome probability is 1/2 + 1/2 V cos(phi~ + psi).
VisibilityResult VisibilityOneBath(const OneBathConfig& cfg);

// sum_b sqrt(c_b^{b0} c_b^{b1}), the fidelity of the two Gibbs states.
double MaxVisibilityOneBath(const HamiltonianSpec& h, const Temperature& t0,
                            const Temperature& t1);

// u^0 = I and u^1 = I_A (x) R P R^+, where R diagonalises the probe and P is the
// cyclic shift: the two branches send every probe eigenstate to orthogonal
// images, so the visibility vanishes.
UnitaryPair ZeroVisibilityLocalUnitaries(const HamiltonianSpec& h,
                                         const DensityMatrix& probe);

}  // namespace thermosup

#endif  // THERMOSUP_ONEBATH_H_
