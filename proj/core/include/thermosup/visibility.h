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

#ifndef THERMOSUP_VISIBILITY_H_
#define THERMOSUP_VISIBILITY_H_

#include <cmath>
#include <numbers>

#include "thermosup/qmath.h"

namespace thermosup {

// Interference contrast of the control and the phase offset of its fringe.
struct VisibilityResult {
  double visibility;
  // In (-pi, pi]; reported as 0 when the visibility is below 1e-12.
  double phase;
};

inline constexpr double kUndefinedPhaseThreshold = 1e-12;

// Magnitude and argument of a complex interference amplitude.
inline VisibilityResult VisibilityFromAmplitude(Complex amplitude) {
  const double v = std::abs(amplitude);
  if (v < kUndefinedPhaseThreshold) return {v, 0.0};
  double psi = std::atan2(amplitude.imag(), amplitude.real());
  if (psi <= -std::numbers::pi) psi = std::numbers::pi;
  return {v, psi};
}

}  // namespace thermosup

#endif  // THERMOSUP_VISIBILITY_H_
