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

#include "thermosup/thermal.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "thermosup/errors.h"

namespace thermosup {

HamiltonianSpec::HamiltonianSpec(std::vector<double> energies)
    : energies_(std::move(energies)) {
  if (energies_.size() < 2) {
    throw InvalidArgument("HamiltonianSpec: need at least two energy levels");
  }
  for (std::size_t n = 0; n < energies_.size(); ++n) {
    if (!std::isfinite(energies_[n])) {
      throw InvalidArgument("HamiltonianSpec: energies must be finite");
    }
    if (n > 0 && energies_[n] < energies_[n - 1]) {
      throw InvalidArgument("HamiltonianSpec: energies must be non-decreasing");
    }
  }
}

HamiltonianSpec HamiltonianSpec::Qubit(double gap) {
  return HamiltonianSpec({0.0, gap});
}

HamiltonianSpec HamiltonianSpec::Ladder(std::size_t dim, double gap) {
  std::vector<double> e(dim);
  for (std::size_t n = 0; n < dim; ++n) e[n] = gap * static_cast<double>(n);
  return HamiltonianSpec(std::move(e));
}

Temperature Temperature::FromKelvin(double t) {
  if (std::isnan(t) || t < 0.0) {
    throw InvalidArgument("Temperature: T must be >= 0");
  }
  if (t == 0.0) return Zero();
  if (std::isinf(t)) return Infinite();
  return Temperature(1.0 / t);
}

Temperature Temperature::FromBeta(double beta) {
  if (std::isnan(beta) || beta < 0.0) {
    throw InvalidArgument("Temperature: beta must be >= 0");
  }
  return Temperature(beta);
}

Temperature Temperature::Zero() {
  return Temperature(std::numeric_limits<double>::infinity());
}

Temperature Temperature::Infinite() { return Temperature(0.0); }

double Temperature::kelvin() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  if (is_zero()) return 0.0;
  return 1.0 / beta_;
}

bool Temperature::is_zero() const { return std::isinf(beta_); }

std::string ToString(const Temperature& t) {
  if (t.is_infinite()) return "inf";
  if (t.is_zero()) return "0";
  std::ostringstream os;
  os.precision(17);
  os << t.kelvin();
  return os.str();
}

GibbsWeights ComputeGibbsWeights(const HamiltonianSpec& h, const Temperature& t) {
  const auto energies = h.energies();
  const double e0 = h.ground_energy();
  GibbsWeights out{std::vector<double>(h.dim(), 0.0), 0.0};

  if (t.is_zero()) {
    std::size_t ground = 0;
    while (ground < energies.size() && energies[ground] == e0) ++ground;
    for (std::size_t n = 0; n < ground; ++n) {
      out.weights[n] = 1.0 / static_cast<double>(ground);
    }
    const double log_g = std::log(static_cast<double>(ground));
    if (e0 == 0.0) {
      out.log_partition = log_g;
    } else {
      out.log_partition = e0 > 0.0 ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
    }
    return out;
  }

  // Shift by the ground energy so the largest exponent is zero.
  const double beta = t.beta();
  double shifted_z = 0.0;
  for (std::size_t n = 0; n < energies.size(); ++n) {
    out.weights[n] = std::exp(-beta * (energies[n] - e0));
    shifted_z += out.weights[n];
  }
  for (double& w : out.weights) w /= shifted_z;
  out.log_partition = -beta * e0 + std::log(shifted_z);
  return out;
}

DensityMatrix GibbsState(const HamiltonianSpec& h, const Temperature& t) {
  const GibbsWeights gw = ComputeGibbsWeights(h, t);
  return DensityMatrix::Diagonal(gw.weights);
}

StateVector Purify(const HamiltonianSpec& h, const Temperature& t) {
  const GibbsWeights gw = ComputeGibbsWeights(h, t);
  const std::size_t d = h.dim();
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t n = 0; n < d; ++n) {
    v(static_cast<Eigen::Index>(n * d + n)) = std::sqrt(gw.weights[n]);
  }
  return StateVector(std::move(v), Dims{d, d});
}

PurificationSpec PurificationSpec::Canonical(const HamiltonianSpec& h,
                                             Temperature t0, Temperature t1) {
  const auto d = static_cast<Eigen::Index>(h.dim());
  return PurificationSpec{{t0, t1},
                          {0.0, 0.0},
                          {ComplexMatrix::Identity(d, d),
                           ComplexMatrix::Identity(d, d)}};
}

void PurificationSpec::Validate(const HamiltonianSpec& h) const {
  for (int x = 0; x < 2; ++x) {
    const ComplexMatrix& basis = ancilla_bases[static_cast<std::size_t>(x)];
    if (basis.rows() != static_cast<Eigen::Index>(h.dim())) {
      throw InvalidArgument("PurificationSpec: ancilla basis dimension mismatch");
    }
    if (!IsUnitary(basis)) {
      throw InvalidArgument("PurificationSpec: ancilla basis is not unitary");
    }
    if (!std::isfinite(phases[static_cast<std::size_t>(x)])) {
      throw InvalidArgument("PurificationSpec: phase must be finite");
    }
  }
}

StateVector PurifyGeneral(const HamiltonianSpec& h, const PurificationSpec& spec,
                          int branch) {
  if (branch != 0 && branch != 1) {
    throw InvalidArgument("PurifyGeneral: branch must be 0 or 1");
  }
  spec.Validate(h);
  const auto x = static_cast<std::size_t>(branch);
  const GibbsWeights gw = ComputeGibbsWeights(h, spec.temperatures[x]);
  const std::size_t d = h.dim();
  const Complex phase = std::polar(1.0, -spec.phases[x]);
  const ComplexMatrix& basis = spec.ancilla_bases[x];
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t b = 0; b < d; ++b) {
    const auto bi = static_cast<Eigen::Index>(b);
    v.segment(bi * static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) =
        phase * std::sqrt(gw.weights[b]) * basis.col(bi);
  }
  return StateVector(std::move(v), Dims{d, d});
}

ComplexMatrix AncillaOverlapMatrix(const PurificationSpec& spec, int x,
                                   int x_prime) {
  if ((x != 0 && x != 1) || (x_prime != 0 && x_prime != 1)) {
    throw InvalidArgument("AncillaOverlapMatrix: branch must be 0 or 1");
  }
  const ComplexMatrix& a = spec.ancilla_bases[static_cast<std::size_t>(x)];
  const ComplexMatrix& a_prime =
      spec.ancilla_bases[static_cast<std::size_t>(x_prime)];
  // (A'^dagger A)_{b' b} = <a(b', x')|a(b, x)>; transpose to index [b][b'].
  return (a_prime.adjoint() * a).transpose();
}

}  // namespace thermosup
