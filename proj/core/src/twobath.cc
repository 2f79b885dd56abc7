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

#include "thermosup/twobath.h"

#include <algorithm>
#include <functional>
#include <vector>

#include "thermosup/channels.h"
#include "thermosup/errors.h"

namespace thermosup {
namespace {

void CheckBranch(int branch) {
  if (branch != 0 && branch != 1) throw InvalidArgument("branch must be 0 or 1");
}

ComplexMatrix Identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return ComplexMatrix::Identity(n, n);
}

ComplexMatrix CrossTerm(const ComplexMatrix& t0, const ComplexMatrix& t1,
                        const ComplexMatrix& probe) {
  return t0 * probe * t1.adjoint();
}

// 1/4 (rho^{b0} + rho^{b1} + e^{i phi} X + h.c.) for the cross-term X.
ConditionalState Assemble(const TwoBathConfig& cfg, const ComplexMatrix& cross) {
  const ComplexMatrix g0 = GibbsState(cfg.hamiltonian, cfg.temperatures[0]).matrix();
  const ComplexMatrix g1 = GibbsState(cfg.hamiltonian, cfg.temperatures[1]).matrix();
  const ComplexMatrix phased = std::polar(1.0, cfg.phase) * cross;
  ComplexMatrix out = 0.25 * (g0 + g1 + phased + phased.adjoint());
  return ConditionalState(std::move(out), Dims{cfg.hamiltonian.dim()});
}

std::array<ComplexMatrix, 2> ReducedKrausOperators(const TwoBathConfig& cfg) {
  std::array<ComplexMatrix, 2> out;
  for (int i = 0; i < 2; ++i) {
    const auto x = static_cast<std::size_t>(i);
    out[x] = GibbsState(cfg.hamiltonian, cfg.temperatures[x]).matrix() *
             cfg.RepresentationUnitary(i);
  }
  return out;
}

double Eq31(const ComplexMatrix& bath_product, const ComplexMatrix& probe,
            const ComplexMatrix& u0, const ComplexMatrix& u1) {
  return std::abs((u0.adjoint() * bath_product * u1 * probe).trace());
}

}  // namespace

void TwoBathConfig::Validate() const {
  const std::size_t d = hamiltonian.dim();
  if (probe.dim() != d) {
    throw InvalidArgument("TwoBathConfig: probe dimension must equal the bath dimension");
  }
  if (!std::isfinite(phase)) throw InvalidArgument("TwoBathConfig: phase must be finite");
  if (representation) {
    for (const auto& u : *representation) {
      if (u.rows() != static_cast<Eigen::Index>(d) || !IsUnitary(u)) {
        throw InvalidArgument("TwoBathConfig: representation unitaries must be d x d unitaries");
      }
    }
  }
  if (dilations) {
    for (const auto& dil : *dilations) {
      const Eigen::Index size = dil.v.rows();
      if (size < static_cast<Eigen::Index>(d * d) || dil.w.rows() != size ||
          dil.v.cols() != size || dil.w.cols() != size) {
        throw InvalidArgument(
            "TwoBathConfig: dilation unitaries must share a size >= d*d");
      }
      if (!IsUnitary(dil.v) || !IsUnitary(dil.w)) {
        throw InvalidArgument("TwoBathConfig: dilation v and w must be unitary");
      }
    }
  }
}

ComplexMatrix TwoBathConfig::RepresentationUnitary(int branch) const {
  CheckBranch(branch);
  if (representation) return (*representation)[static_cast<std::size_t>(branch)];
  return Identity(hamiltonian.dim());
}

ComplexMatrix ControlledUnitary(const ComplexMatrix& u_b0s,
                                const ComplexMatrix& u_b1s) {
  if (u_b0s.rows() != u_b1s.rows() || u_b0s.rows() != u_b0s.cols() ||
      u_b1s.rows() != u_b1s.cols()) {
    throw InvalidArgument("ControlledUnitary: branch unitaries must share one square shape");
  }
  const auto d = static_cast<std::size_t>(
      std::llround(std::sqrt(static_cast<double>(u_b0s.rows()))));
  if (static_cast<Eigen::Index>(d * d) != u_b0s.rows()) {
    throw InvalidArgument("ControlledUnitary: expected a d^2 x d^2 probe-bath unitary");
  }
  const Dims dims{d, d, 2, d};
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const std::array<std::size_t, 2> on_b0{3, 0};
  const std::array<std::size_t, 2> on_b1{3, 1};
  const std::array<std::size_t, 1> on_c{2};
  return EmbedOperator(u_b0s, dims, on_b0) * EmbedOperator(p0, dims, on_c) +
         EmbedOperator(u_b1s, dims, on_b1) * EmbedOperator(p1, dims, on_c);
}

ComplexMatrix BranchInteraction(const TwoBathConfig& cfg, int branch) {
  const std::size_t d = cfg.hamiltonian.dim();
  return SwapThermalizer(d) * Kron(cfg.RepresentationUnitary(branch), Identity(d));
}

ComplexMatrix ControlledUnitary(const TwoBathConfig& cfg) {
  cfg.Validate();
  return ControlledUnitary(BranchInteraction(cfg, 0), BranchInteraction(cfg, 1));
}

ConditionalState ConditionalProbeState(const TwoBathConfig& cfg) {
  cfg.Validate();
  const auto t = ReducedKrausOperators(cfg);
  return Assemble(cfg, CrossTerm(t[0], t[1], cfg.probe.matrix()));
}

std::array<ComplexMatrix, 2> DilatedKrausOperators(const TwoBathConfig& cfg) {
  cfg.Validate();
  const std::size_t d = cfg.hamiltonian.dim();
  const auto dd = static_cast<Eigen::Index>(d * d);
  const auto di = static_cast<Eigen::Index>(d);
  const ComplexMatrix swap = SwapThermalizer(d);
  const Dims bas{d, d, d};  // bath, ancilla, probe
  const std::array<std::size_t, 2> probe_bath{2, 0};

  std::array<ComplexMatrix, 2> out;
  for (std::size_t x = 0; x < 2; ++x) {
    const StateVector psi = Purify(cfg.hamiltonian, cfg.temperatures[x]);
    ComplexMatrix v = Identity(d * d);
    ComplexMatrix w = Identity(d * d);
    if (cfg.dilations) {
      v = (*cfg.dilations)[x].v;
      w = (*cfg.dilations)[x].w;
    }
    const Eigen::Index size = v.rows();
    ComplexVector embedded = ComplexVector::Zero(size);
    embedded.head(dd) = psi.amplitudes();
    const ComplexVector reference = v * embedded;  // |psi'> = v |psi>

    const ComplexMatrix interaction =
        swap * Kron(cfg.RepresentationUnitary(static_cast<int>(x)), Identity(d));
    ComplexMatrix t = ComplexMatrix::Zero(di, di);
    for (Eigen::Index s = 0; s < di; ++s) {
      ComplexVector probe_in = ComplexVector::Zero(di);
      probe_in(s) = 1.0;
      ComplexVector joint = Kron(psi.amplitudes(), probe_in);
      ApplyOperatorInPlace(joint, bas, interaction, probe_bath);
      // Columns of `block` are indexed by the outgoing probe state.
      ComplexMatrix block = ComplexMatrix::Zero(size, di);
      for (Eigen::Index ba = 0; ba < dd; ++ba) {
        for (Eigen::Index sp = 0; sp < di; ++sp) block(ba, sp) = joint(ba * di + sp);
      }
      t.col(s) = ((reference.adjoint() * (w * block))).transpose();
    }
    out[x] = std::move(t);
  }
  return out;
}

ConditionalState ConditionalProbeStateDilated(const TwoBathConfig& cfg) {
  const auto t = DilatedKrausOperators(cfg);
  return Assemble(cfg, CrossTerm(t[0], t[1], cfg.probe.matrix()));
}

VisibilityResult Visibility(const TwoBathConfig& cfg) {
  cfg.Validate();
  const auto t = cfg.dilations ? DilatedKrausOperators(cfg) : ReducedKrausOperators(cfg);
  return VisibilityFromAmplitude(CrossTerm(t[0], t[1], cfg.probe.matrix()).trace());
}

double VisibilityForUnitaries(const HamiltonianSpec& h, const Temperature& t0,
                              const Temperature& t1, const DensityMatrix& probe,
                              const ComplexMatrix& u0, const ComplexMatrix& u1) {
  const ComplexMatrix product = GibbsState(h, t0).matrix() * GibbsState(h, t1).matrix();
  return Eq31(product, probe.matrix(), u0, u1);
}

double MaxVisibilityClosedForm(const HamiltonianSpec& h, const Temperature& t0,
                               const Temperature& t1, const DensityMatrix& probe) {
  if (probe.dim() != h.dim()) {
    throw InvalidArgument("MaxVisibilityClosedForm: probe dimension mismatch");
  }
  const auto c0 = ComputeGibbsWeights(h, t0).weights;
  const auto c1 = ComputeGibbsWeights(h, t1).weights;
  std::vector<double> q(h.dim());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = c0[k] * c1[k];
  std::sort(q.begin(), q.end(), std::greater<>());
  const RealVector p = probe.spectrum().probabilities;  // decreasing
  double v = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    v += std::max(p(static_cast<Eigen::Index>(k)), 0.0) * q[k];
  }
  return v;
}

UnitaryPair MaxVisibilityUnitaries(const HamiltonianSpec& h,
                                   const DensityMatrix& probe) {
  if (probe.dim() != h.dim()) {
    throw InvalidArgument("MaxVisibilityUnitaries: probe dimension mismatch");
  }
  const ComplexMatrix u = probe.spectrum().eigenvectors.adjoint();
  return {u, u};
}

ComplexMatrix CyclicShift(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) p((k + 1) % n, k) = 1.0;
  return p;
}

UnitaryPair ZeroVisibilityUnitaries(const HamiltonianSpec& h,
                                    const DensityMatrix& probe) {
  if (probe.dim() != h.dim()) {
    throw InvalidArgument("ZeroVisibilityUnitaries: probe dimension mismatch");
  }
  const ComplexMatrix u0 = probe.spectrum().eigenvectors.adjoint();
  return {u0, CyclicShift(h.dim()) * u0};
}

SearchResult MaxVisibilitySearch(const HamiltonianSpec& h, const Temperature& t0,
                                 const Temperature& t1, const DensityMatrix& probe,
                                 const SearchOptions& options) {
  if (options.trials == 0) throw InvalidArgument("MaxVisibilitySearch: trials must be >= 1");
  if (probe.dim() != h.dim()) {
    throw InvalidArgument("MaxVisibilitySearch: probe dimension mismatch");
  }
  const std::size_t d = h.dim();
  const ComplexMatrix product = GibbsState(h, t0).matrix() * GibbsState(h, t1).matrix();
  const ComplexMatrix& rho = probe.matrix();
  Rng rng(options.seed);

  SearchResult best{-1.0, {Identity(d), Identity(d)}};
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    ComplexMatrix u0 = RandomUnitary(d, rng);
    ComplexMatrix u1 = RandomUnitary(d, rng);
    const double v = Eq31(product, rho, u0, u1);
    if (v > best.visibility) best = {v, {std::move(u0), std::move(u1)}};
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_hermitian = [&] {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        g(i, j) = Complex(re, im);
      }
    }
    return ComplexMatrix(0.5 * (g + g.adjoint()));
  };

  double step = 0.25;
  int failures = 0;
  for (std::size_t it = 0; it < options.refine_iterations && step > 1e-7; ++it) {
    ComplexMatrix u0 = best.best.u0 * ExpiHermitian(random_hermitian(), step);
    ComplexMatrix u1 = best.best.u1 * ExpiHermitian(random_hermitian(), step);
    const double v = Eq31(product, rho, u0, u1);
    if (v > best.visibility) {
      best = {v, {std::move(u0), std::move(u1)}};
      failures = 0;
    } else if (++failures >= 12) {
      step *= 0.5;
      failures = 0;
    }
  }
  return best;
}

}  // namespace thermosup
