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

#include "thermosup/onebath.h"

#include <cmath>

#include "thermosup/channels.h"
#include "thermosup/errors.h"

namespace thermosup {
namespace {

ComplexMatrix Identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return ComplexMatrix::Identity(n, n);
}

std::vector<double> SqrtWeights(const HamiltonianSpec& h, const Temperature& t) {
  std::vector<double> w = ComputeGibbsWeights(h, t).weights;
  for (double& c : w) c = std::sqrt(c);
  return w;
}

// 1/4 [g0 + g1 + (e^{-i phi~} sum sqrt(c_b c_b') M_{bb'} |b><b'| + h.c.)]
ConditionalState AssembleOneBath(const OneBathConfig& cfg, const ComplexMatrix& m) {
  const HamiltonianSpec& h = cfg.hamiltonian;
  const auto& temps = cfg.purification.temperatures;
  const auto r0 = SqrtWeights(h, temps[0]);
  const auto r1 = SqrtWeights(h, temps[1]);
  const auto d = static_cast<Eigen::Index>(h.dim());
  ComplexMatrix cross(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    for (Eigen::Index bp = 0; bp < d; ++bp) {
      cross(b, bp) = r0[static_cast<std::size_t>(b)] *
                     r1[static_cast<std::size_t>(bp)] * m(b, bp);
    }
  }
  cross *= std::polar(1.0, -cfg.EffectivePhase());
  ComplexMatrix out = 0.25 * (GibbsState(h, temps[0]).matrix() +
                              GibbsState(h, temps[1]).matrix() + cross +
                              cross.adjoint());
  return ConditionalState(std::move(out), Dims{h.dim()});
}

}  // namespace

void OneBathConfig::Validate() const {
  const std::size_t d = hamiltonian.dim();
  purification.Validate(hamiltonian);
  if (probe.dim() != d) {
    throw InvalidArgument("OneBathConfig: probe dimension must equal the bath dimension");
  }
  if (!std::isfinite(control_phase)) {
    throw InvalidArgument("OneBathConfig: control phase must be finite");
  }
  if (local_unitaries) {
    for (const auto& u : *local_unitaries) {
      if (u.rows() != static_cast<Eigen::Index>(d * d) || !IsUnitary(u)) {
        throw InvalidArgument(
            "OneBathConfig: local unitaries must be d^2 x d^2 unitaries on ancilla (x) bath");
      }
    }
  }
}

ComplexMatrix OneBathConfig::LocalUnitary(int branch) const {
  if (branch != 0 && branch != 1) throw InvalidArgument("branch must be 0 or 1");
  if (local_unitaries) return (*local_unitaries)[static_cast<std::size_t>(branch)];
  return Identity(hamiltonian.dim() * hamiltonian.dim());
}

double OneBathConfig::EffectivePhase() const {
  return purification.phases[0] - purification.phases[1] - control_phase;
}

StateVector SuperposedPurification(const OneBathConfig& cfg) {
  cfg.Validate();
  const std::size_t d = cfg.hamiltonian.dim();
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d * 2));
  for (int x = 0; x < 2; ++x) {
    const StateVector branch = PurifyGeneral(cfg.hamiltonian, cfg.purification, x);
    ComplexVector control = ComplexVector::Zero(2);
    control(x) = 1.0;
    v += Kron(branch.amplitudes(), control) / std::sqrt(2.0);
  }
  return StateVector(std::move(v), Dims{d, d, 2});
}

ConditionalState ConditionalBathState(const OneBathConfig& cfg) {
  cfg.Validate();
  return AssembleOneBath(cfg, AncillaOverlapMatrix(cfg.purification, 0, 1));
}

ComplexMatrix OverlapMatrixW(const OneBathConfig& cfg) {
  cfg.Validate();
  const std::size_t d = cfg.hamiltonian.dim();
  const ComplexMatrix relative = cfg.LocalUnitary(1).adjoint() * cfg.LocalUnitary(0);
  const ComplexMatrix lifted = relative * Kron(Identity(d), cfg.probe.matrix());
  const std::array<std::size_t, 1> ancilla{0};
  const ComplexMatrix on_ancilla = PartialTrace(lifted, Dims{d, d}, ancilla);
  const ComplexMatrix& a0 = cfg.purification.ancilla_bases[0];
  const ComplexMatrix& a1 = cfg.purification.ancilla_bases[1];
  return (a1.adjoint() * on_ancilla * a0).transpose();
}

ComplexMatrix OneBathGlobalUnitary(const OneBathConfig& cfg) {
  cfg.Validate();
  const std::size_t d = cfg.hamiltonian.dim();
  const Dims dims{d, d, 2, d};
  const std::array<std::size_t, 2> probe_bath{3, 1};
  const std::array<std::size_t, 2> ancilla_bath{0, 1};
  const std::array<std::size_t, 1> control{2};
  const ComplexMatrix interaction = EmbedOperator(SwapThermalizer(d), dims, probe_bath);
  const auto n = static_cast<Eigen::Index>(DimsProduct(dims));
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int x = 0; x < 2; ++x) {
    ComplexMatrix projector = ComplexMatrix::Zero(2, 2);
    projector(x, x) = 1.0;
    out += EmbedOperator(cfg.LocalUnitary(x), dims, ancilla_bath) * interaction *
           EmbedOperator(projector, dims, control);
  }
  return out;
}

ConditionalState ProbeOutput(const OneBathConfig& cfg) {
  return AssembleOneBath(cfg, OverlapMatrixW(cfg));
}

VisibilityResult VisibilityOneBath(const OneBathConfig& cfg) {
  const ComplexMatrix w = OverlapMatrixW(cfg);
  const auto r0 = SqrtWeights(cfg.hamiltonian, cfg.purification.temperatures[0]);
  const auto r1 = SqrtWeights(cfg.hamiltonian, cfg.purification.temperatures[1]);
  Complex amplitude = 0.0;
  for (std::size_t b = 0; b < r0.size(); ++b) {
    const auto bi = static_cast<Eigen::Index>(b);
    amplitude += r0[b] * r1[b] * w(bi, bi);
  }
  // P = 1/2 + 1/2 |A| cos(phi~ - arg A), hence psi = -arg A.
  return VisibilityFromAmplitude(std::conj(amplitude));
}

double MaxVisibilityOneBath(const HamiltonianSpec& h, const Temperature& t0,
                            const Temperature& t1) {
  const auto r0 = SqrtWeights(h, t0);
  const auto r1 = SqrtWeights(h, t1);
  double v = 0.0;
  for (std::size_t b = 0; b < r0.size(); ++b) v += r0[b] * r1[b];
  return v;
}

UnitaryPair ZeroVisibilityLocalUnitaries(const HamiltonianSpec& h,
                                         const DensityMatrix& probe) {
  if (probe.dim() != h.dim()) {
    throw InvalidArgument("ZeroVisibilityLocalUnitaries: probe dimension mismatch");
  }
  const std::size_t d = h.dim();
  const ComplexMatrix r = probe.spectrum().eigenvectors;
  const ComplexMatrix rotated_shift = r * CyclicShift(d) * r.adjoint();
  return {Identity(d * d), Kron(Identity(d), rotated_shift)};
}

}  // namespace thermosup
