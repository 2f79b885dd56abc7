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

#include "thermosup/qmath.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "thermosup/errors.h"

namespace thermosup {
namespace {

// Composite index = outer_offsets[r] + inner_offsets[i], where `i` enumerates
// the digits of `group` (in the listed order, first most significant) and `r`
// enumerates the remaining factors in their original order.
struct FactorSplit {
  std::vector<std::size_t> inner_offsets;
  std::vector<std::size_t> outer_offsets;
};

FactorSplit SplitFactors(const Dims& dims, std::span<const std::size_t> group) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> strides(n, 1);
  for (std::size_t i = n; i-- > 1;) strides[i - 1] = strides[i] * dims[i];

  std::vector<bool> in_group(n, false);
  for (std::size_t f : group) {
    if (f >= n) {
      throw InvalidArgument("factor index " + std::to_string(f) +
                            " out of range for " + std::to_string(n) +
                            " factors");
    }
    if (in_group[f]) {
      throw InvalidArgument("factor index " + std::to_string(f) +
                            " listed twice");
    }
    in_group[f] = true;
  }

  auto offsets = [&](const std::vector<std::size_t>& factors) {
    std::vector<std::size_t> out{0};
    for (std::size_t f : factors) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[f]);
      for (std::size_t base : out) {
        for (std::size_t digit = 0; digit < dims[f]; ++digit) {
          next.push_back(base + digit * strides[f]);
        }
      }
      out = std::move(next);
    }
    return out;
  };

  std::vector<std::size_t> rest;
  for (std::size_t f = 0; f < n; ++f) {
    if (!in_group[f]) rest.push_back(f);
  }
  return FactorSplit{offsets({group.begin(), group.end()}), offsets(rest)};
}

void CheckDims(const Dims& dims, Eigen::Index size, const char* what) {
  if (dims.empty()) {
    throw InvalidArgument(std::string(what) + ": empty factor dimension list");
  }
  for (std::size_t d : dims) {
    if (d == 0) throw InvalidArgument(std::string(what) + ": zero factor dimension");
  }
  if (DimsProduct(dims) != static_cast<std::size_t>(size)) {
    std::ostringstream os;
    os << what << ": factor dims multiply to " << DimsProduct(dims)
       << " but the state has dimension " << size;
    throw InvalidArgument(os.str());
  }
}

double MaxAbs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void ValidatePositiveOperator(const ComplexMatrix& m, const Dims& dims,
                              const char* what) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument(std::string(what) + ": matrix is not square");
  }
  CheckDims(dims, m.rows(), what);
  if (!m.allFinite()) {
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
  if (!IsHermitian(m, kHermitianTolerance)) {
    throw InvalidArgument(std::string(what) + ": matrix is not Hermitian");
  }
  // PSD within tolerance <=> (m + tol * I) admits a Cholesky factorisation.
  const ComplexMatrix hermitian = 0.5 * (m + m.adjoint());
  const ComplexMatrix shifted =
      hermitian + kPsdTolerance * ComplexMatrix::Identity(m.rows(), m.cols());
  Eigen::LLT<ComplexMatrix> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument(std::string(what) +
                          ": matrix has an eigenvalue below -1e-10");
  }
}

}  // namespace

std::size_t DimsProduct(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(ComplexVector amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  CheckDims(dims_, amplitudes_.size(), "StateVector");
  if (!amplitudes_.allFinite()) {
    throw InvalidArgument("StateVector: non-finite amplitude");
  }
  if (amplitudes_.norm() == 0.0) {
    throw InvalidArgument("StateVector: zero vector");
  }
}

StateVector StateVector::Basis(Dims dims, std::size_t index) {
  const std::size_t dim = DimsProduct(dims);
  if (index >= dim) throw InvalidArgument("StateVector::Basis: index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v), std::move(dims));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  return StateVector(amplitudes_ / norm(), dims_);
}

ComplexMatrix StateVector::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

// -------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims,
                             Validation validation)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (validation == Validation::kSkip) return;
  ValidatePositiveOperator(matrix_, dims_, "DensityMatrix");
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "DensityMatrix: trace " << trace << " differs from 1";
    throw InvalidArgument(os.str());
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : DensityMatrix(matrix, Dims{static_cast<std::size_t>(matrix.rows())}) {}

DensityMatrix DensityMatrix::FromPure(const StateVector& state) {
  if (!state.is_normalized()) {
    throw InvalidArgument("DensityMatrix::FromPure: state is not normalised");
  }
  return DensityMatrix(state.projector(), state.dims(), Validation::kSkip);
}

DensityMatrix DensityMatrix::Diagonal(std::span<const double> probabilities) {
  ComplexMatrix m =
      ComplexMatrix::Zero(static_cast<Eigen::Index>(probabilities.size()),
                          static_cast<Eigen::Index>(probabilities.size()));
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        probabilities[i];
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::MaximallyMixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim),
                       Dims{dim}, Validation::kSkip);
}

DensityMatrix::Spectrum DensityMatrix::spectrum() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (matrix_ + matrix_.adjoint()));
  const Eigen::Index n = matrix_.rows();
  Spectrum out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.probabilities(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

// ----------------------------------------------------------- ConditionalState

ConditionalState::ConditionalState(ComplexMatrix matrix, Dims dims,
                                   Validation validation)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (validation == Validation::kSkip) return;
  ValidatePositiveOperator(matrix_, dims_, "ConditionalState");
  const double tr = trace();
  if (tr > 1.0 + kTraceTolerance || tr < -kTraceTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "ConditionalState: trace " << tr << " outside [0, 1]";
    throw InvalidArgument(os.str());
  }
}

DensityMatrix ConditionalState::normalized() const {
  const double tr = trace();
  if (tr <= kTraceTolerance) {
    throw InvalidArgument(
        "ConditionalState: cannot normalise an outcome of zero probability");
  }
  return DensityMatrix(matrix_ / tr, dims_, Validation::kSkip);
}

// ------------------------------------------------------------------ Algebra

ComplexMatrix Kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix KronAll(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = Kron(out, f);
  return out;
}

ComplexVector Kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix Matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("Matmul: inner dimension mismatch");
  return a * b;
}

bool IsUnitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const ComplexMatrix defect =
      m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return MaxAbs(defect) <= tol;
}

bool IsHermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, MaxAbs(m));
  return MaxAbs(m - m.adjoint()) <= tol * scale;
}

RealVector EigvalsHermitian(const ComplexMatrix& m) {
  if (!IsHermitian(m, 1e-10)) {
    throw InvalidArgument("EigvalsHermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

ComplexMatrix PartialTrace(const ComplexMatrix& op, const Dims& dims,
                           std::span<const std::size_t> keep) {
  if (op.rows() != op.cols()) throw InvalidArgument("PartialTrace: matrix is not square");
  CheckDims(dims, op.rows(), "PartialTrace");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const FactorSplit split = SplitFactors(dims, kept);
  const auto k = static_cast<Eigen::Index>(split.inner_offsets.size());
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (std::size_t base : split.outer_offsets) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto col = static_cast<Eigen::Index>(base + split.inner_offsets[j]);
      for (Eigen::Index i = 0; i < k; ++i) {
        out(i, j) += op(static_cast<Eigen::Index>(base + split.inner_offsets[i]), col);
      }
    }
  }
  return out;
}

namespace {
Dims KeptDims(const Dims& dims, std::span<const std::size_t> keep) {
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  Dims out;
  for (std::size_t f : kept) out.push_back(dims.at(f));
  if (out.empty()) out.push_back(1);
  return out;
}
}  // namespace

DensityMatrix PartialTrace(const DensityMatrix& rho,
                           std::span<const std::size_t> keep) {
  ComplexMatrix reduced = PartialTrace(rho.matrix(), rho.dims(), keep);
  return DensityMatrix(std::move(reduced), KeptDims(rho.dims(), keep),
                       Validation::kSkip);
}

ConditionalState PartialTrace(const ConditionalState& rho,
                              std::span<const std::size_t> keep) {
  ComplexMatrix reduced = PartialTrace(rho.matrix(), rho.dims(), keep);
  return ConditionalState(std::move(reduced), KeptDims(rho.dims(), keep),
                          Validation::kSkip);
}

DensityMatrix ReducedDensity(const StateVector& state,
                             std::span<const std::size_t> keep) {
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const FactorSplit split = SplitFactors(state.dims(), kept);
  const auto k = static_cast<Eigen::Index>(split.inner_offsets.size());
  const auto t = static_cast<Eigen::Index>(split.outer_offsets.size());
  ComplexMatrix psi(k, t);
  const ComplexVector& amps = state.amplitudes();
  for (Eigen::Index c = 0; c < t; ++c) {
    for (Eigen::Index r = 0; r < k; ++r) {
      psi(r, c) = amps(static_cast<Eigen::Index>(split.outer_offsets[c] +
                                                 split.inner_offsets[r]));
    }
  }
  ComplexMatrix rho = psi * psi.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), KeptDims(state.dims(), keep),
                       Validation::kSkip);
}

ComplexMatrix EmbedOperator(const ComplexMatrix& op, const Dims& dims,
                            std::span<const std::size_t> targets) {
  const FactorSplit split = SplitFactors(dims, targets);
  const auto g = static_cast<Eigen::Index>(split.inner_offsets.size());
  if (op.rows() != g || op.cols() != g) {
    throw InvalidArgument("EmbedOperator: operator does not match target dims");
  }
  const auto n = static_cast<Eigen::Index>(DimsProduct(dims));
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t base : split.outer_offsets) {
    for (Eigen::Index j = 0; j < g; ++j) {
      for (Eigen::Index i = 0; i < g; ++i) {
        out(static_cast<Eigen::Index>(base + split.inner_offsets[i]),
            static_cast<Eigen::Index>(base + split.inner_offsets[j])) = op(i, j);
      }
    }
  }
  return out;
}

void ApplyOperatorInPlace(ComplexVector& amplitudes, const Dims& dims,
                          const ComplexMatrix& op,
                          std::span<const std::size_t> targets) {
  CheckDims(dims, amplitudes.size(), "ApplyOperator");
  const FactorSplit split = SplitFactors(dims, targets);
  const auto g = static_cast<Eigen::Index>(split.inner_offsets.size());
  if (op.rows() != g || op.cols() != g) {
    throw InvalidArgument("ApplyOperator: operator does not match target dims");
  }
  ComplexVector in(g), out(g);
  for (std::size_t base : split.outer_offsets) {
    for (Eigen::Index i = 0; i < g; ++i) {
      in(i) = amplitudes(static_cast<Eigen::Index>(base + split.inner_offsets[i]));
    }
    out.noalias() = op * in;
    for (Eigen::Index i = 0; i < g; ++i) {
      amplitudes(static_cast<Eigen::Index>(base + split.inner_offsets[i])) = out(i);
    }
  }
}

StateVector ApplyOperator(const StateVector& state, const ComplexMatrix& op,
                          std::span<const std::size_t> targets) {
  ComplexVector amps = state.amplitudes();
  ApplyOperatorInPlace(amps, state.dims(), op, targets);
  return StateVector(std::move(amps), state.dims());
}

double TraceDistance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("TraceDistance: dimension mismatch");
  }
  const RealVector eig = EigvalsHermitian(a - b);
  return 0.5 * eig.cwiseAbs().sum();
}

double TraceDistance(const DensityMatrix& a, const DensityMatrix& b) {
  return TraceDistance(a.matrix(), b.matrix());
}

ComplexMatrix SqrtPsd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  const RealVector roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.cast<Complex>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

double Fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("Fidelity: dimension mismatch");
  const ComplexMatrix root = SqrtPsd(a.matrix());
  const ComplexMatrix inner = root * b.matrix() * root;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double f = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(f, 1.0);
}

ComplexMatrix ExpiHermitian(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
  ComplexVector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::polar(1.0, t * solver.eigenvalues()(i));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

namespace {
ComplexMatrix Ginibre(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}
}  // namespace

ComplexMatrix RandomUnitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw InvalidArgument("RandomUnitary: dimension must be >= 1");
  const ComplexMatrix z = Ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    q.col(j) *= mag > 0.0 ? diag / mag : Complex(1.0);
  }
  return q;
}

ComplexMatrix RandomUnitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return RandomUnitary(dim, rng);
}

DensityMatrix RandomDensityMatrix(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = Ginibre(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), Dims{dim}, Validation::kSkip);
}

StateVector RandomPureState(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return StateVector(std::move(v), Dims{dim});
}

}  // namespace thermosup
