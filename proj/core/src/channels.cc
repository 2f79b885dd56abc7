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

#include "thermosup/channels.h"

#include <cmath>
#include <map>
#include <string>

#include "thermosup/errors.h"

namespace thermosup {

KrausSet::KrausSet(std::vector<ComplexMatrix> operators,
                   std::vector<KrausLabel> labels, std::size_t index_dim)
    : operators_(std::move(operators)),
      labels_(std::move(labels)),
      index_dim_(index_dim) {
  if (operators_.empty()) throw InvalidArgument("KrausSet: no operators");
  if (labels_.size() != operators_.size()) {
    throw InvalidArgument("KrausSet: one label per operator required");
  }
  const Eigen::Index d = operators_.front().rows();
  for (const auto& k : operators_) {
    if (k.rows() != d || k.cols() != d) {
      throw InvalidArgument("KrausSet: operators must share one square shape");
    }
  }
  for (const auto& label : labels_) {
    if (label.out_index >= index_dim_) {
      throw InvalidArgument("KrausSet: label out of the index range");
    }
  }
  if (completeness_defect() > kCompletenessTolerance) {
    throw InvalidArgument("KrausSet: operators violate completeness");
  }
}

namespace {
std::vector<KrausLabel> SequentialLabels(std::size_t n) {
  std::vector<KrausLabel> labels;
  for (std::size_t j = 0; j < n; ++j) labels.push_back({j, 0});
  return labels;
}
}  // namespace

KrausSet::KrausSet(std::vector<ComplexMatrix> operators)
    : KrausSet(operators, SequentialLabels(operators.size()), operators.size()) {}

double KrausSet::completeness_defect() const {
  const Eigen::Index d = operators_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : operators_) sum += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

ComplexMatrix SwapThermalizer(std::size_t d) {
  if (d == 0) throw InvalidArgument("SwapThermalizer: dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix u = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (Eigen::Index b = 0; b < n; ++b) u(b * n + s, s * n + b) = 1.0;
  }
  return u;
}

KrausSet KrausFromUnitary(const ComplexMatrix& u, const DensityMatrix& bath_state) {
  const auto db = static_cast<Eigen::Index>(bath_state.dim());
  if (u.rows() != u.cols() || u.rows() % db != 0) {
    throw InvalidArgument("KrausFromUnitary: unitary does not act on probe (x) bath");
  }
  if (!IsUnitary(u)) throw InvalidArgument("KrausFromUnitary: U is not unitary");
  const Eigen::Index ds = u.rows() / db;

  // Diagonal bath states keep the computational basis so that degenerate
  // weights do not pick up an arbitrary eigenbasis rotation.
  RealVector weights(db);
  ComplexMatrix basis;
  const ComplexMatrix& rho = bath_state.matrix();
  const ComplexMatrix off_diagonal =
      rho - ComplexMatrix(rho.diagonal().asDiagonal());
  if (off_diagonal.cwiseAbs().maxCoeff() < 1e-14) {
    weights = rho.diagonal().real();
    basis = ComplexMatrix::Identity(db, db);
  } else {
    const DensityMatrix::Spectrum spectrum = bath_state.spectrum();
    weights = spectrum.probabilities;
    basis = spectrum.eigenvectors;
  }

  const ComplexMatrix id_s = ComplexMatrix::Identity(ds, ds);
  std::vector<ComplexMatrix> ops;
  std::vector<KrausLabel> labels;
  for (Eigen::Index l = 0; l < db; ++l) {
    const double c = std::max(weights(l), 0.0);
    if (c == 0.0) continue;
    const ComplexMatrix ket_l = Kron(id_s, ComplexMatrix(basis.col(l)));
    const ComplexMatrix applied = u * ket_l;
    for (Eigen::Index k = 0; k < db; ++k) {
      const ComplexMatrix bra_k = Kron(id_s, ComplexMatrix(basis.col(k).adjoint()));
      ComplexMatrix op = std::sqrt(c) * (bra_k * applied);
      if (op.norm() < kKrausPruneNorm) continue;
      ops.push_back(std::move(op));
      labels.push_back({static_cast<std::size_t>(k), static_cast<std::size_t>(l)});
    }
  }
  return KrausSet(std::move(ops), std::move(labels), static_cast<std::size_t>(db));
}

DensityMatrix ApplyKraus(const KrausSet& kraus, const DensityMatrix& rho) {
  if (kraus.dim() != rho.dim()) throw InvalidArgument("ApplyKraus: dimension mismatch");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus.operators()) out += k * rho.matrix() * k.adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(std::move(out), rho.dims(), Validation::kSkip);
}

KrausSet TransformRepresentation(const KrausSet& kraus, const ComplexMatrix& u) {
  const auto n = static_cast<Eigen::Index>(kraus.index_dim());
  if (u.rows() != n || u.cols() != n) {
    throw InvalidArgument("TransformRepresentation: u must act on the Kraus index");
  }
  if (!IsUnitary(u)) throw InvalidArgument("TransformRepresentation: u is not unitary");

  // Pruned operators are implicit zeros, so group what remains by input label.
  std::map<std::size_t, std::map<std::size_t, const ComplexMatrix*>> by_input;
  for (std::size_t j = 0; j < kraus.size(); ++j) {
    const KrausLabel& label = kraus.labels()[j];
    by_input[label.in_index][label.out_index] = &kraus.operators()[j];
  }
  const auto d = static_cast<Eigen::Index>(kraus.dim());
  std::vector<ComplexMatrix> ops;
  std::vector<KrausLabel> labels;
  for (const auto& [l, column] : by_input) {
    for (Eigen::Index k = 0; k < n; ++k) {
      ComplexMatrix op = ComplexMatrix::Zero(d, d);
      for (const auto& [s, m] : column) op += u(k, static_cast<Eigen::Index>(s)) * *m;
      if (op.norm() < kKrausPruneNorm) continue;
      ops.push_back(std::move(op));
      labels.push_back({static_cast<std::size_t>(k), l});
    }
  }
  return KrausSet(std::move(ops), std::move(labels), kraus.index_dim());
}

ComplexMatrix GadcUnitary(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw InvalidArgument("GadcUnitary: eta must lie in [0, 1], got " +
                          std::to_string(eta));
  }
  const double keep = std::sqrt(1.0 - eta);
  const double swap = std::sqrt(eta);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = keep;
  u(1, 2) = swap;
  u(2, 1) = -swap;
  u(2, 2) = keep;
  u(3, 3) = 1.0;
  return u;
}

ComplexMatrix GadcOnPurified(double eta) {
  return Kron(GadcUnitary(eta), ComplexMatrix::Identity(2, 2));
}

}  // namespace thermosup
