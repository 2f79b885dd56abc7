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

// Dense complex linear algebra shared by every simulation module.
//
// Composite systems follow a single ordering convention: factors listed
// left-to-right are most- to least-significant in the composite index, so
// for dims {2, 3} the basis state |i, j> sits at index 3 * i + j.

#ifndef THERMOSUP_QMATH_H_
#define THERMOSUP_QMATH_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace thermosup {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;
using Rng = std::mt19937_64;

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-12;

std::size_t DimsProduct(const Dims& dims);

enum class Validation { kFull, kSkip };

class StateVector {
 public:
  // Throws InvalidArgument if the factor dims do not multiply to the vector
  // length, an amplitude is not finite, or the vector is zero.
  StateVector(ComplexVector amplitudes, Dims dims);

  static StateVector Basis(Dims dims, std::size_t index);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kTraceTolerance) const;
  StateVector normalized() const;

  ComplexMatrix projector() const;

 private:
  ComplexVector amplitudes_;
  Dims dims_;
};

// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, Dims dims,
                Validation validation = Validation::kFull);
  // Single-factor convenience.
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix FromPure(const StateVector& state);
  static DensityMatrix Diagonal(std::span<const double> probabilities);
  static DensityMatrix MaximallyMixed(std::size_t dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  // Eigenvalues in decreasing order with the matching orthonormal eigenvectors
  // as columns.
  struct Spectrum {
    RealVector probabilities;
    ComplexMatrix eigenvectors;
  };
  Spectrum spectrum() const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

// Post-selected, unnormalised state: Hermitian, PSD, 0 < trace <= 1.
class ConditionalState {
 public:
  ConditionalState(ComplexMatrix matrix, Dims dims,
                   Validation validation = Validation::kFull);

  const ComplexMatrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  double trace() const { return matrix_.trace().real(); }
  DensityMatrix normalized() const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

ComplexMatrix Kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix KronAll(std::span<const ComplexMatrix> factors);
ComplexVector Kron(const ComplexVector& a, const ComplexVector& b);

inline ComplexMatrix Dagger(const ComplexMatrix& m) { return m.adjoint(); }
ComplexMatrix Matmul(const ComplexMatrix& a, const ComplexMatrix& b);

bool IsUnitary(const ComplexMatrix& m, double tol = kUnitaryTolerance);
bool IsHermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

// Ascending eigenvalues of a Hermitian matrix.
RealVector EigvalsHermitian(const ComplexMatrix& m);

// Partial trace of an arbitrary (not necessarily Hermitian) operator on the
// composite space described by `dims`. The result lives on the kept factors in
// their original order. `keep` may be empty, giving the 1x1 full trace.
ComplexMatrix PartialTrace(const ComplexMatrix& op, const Dims& dims,
                           std::span<const std::size_t> keep);
DensityMatrix PartialTrace(const DensityMatrix& rho,
                           std::span<const std::size_t> keep);
ConditionalState PartialTrace(const ConditionalState& rho,
                              std::span<const std::size_t> keep);

// Reduced state of a pure state without forming the full projector.
DensityMatrix ReducedDensity(const StateVector& state,
                             std::span<const std::size_t> keep);

// Lifts `op`, acting on the listed factors in the listed order, to the full
// composite space.
ComplexMatrix EmbedOperator(const ComplexMatrix& op, const Dims& dims,
                            std::span<const std::size_t> targets);

// In-place application of `op` on the listed factors of a composite vector.
void ApplyOperatorInPlace(ComplexVector& amplitudes, const Dims& dims,
                          const ComplexMatrix& op,
                          std::span<const std::size_t> targets);
StateVector ApplyOperator(const StateVector& state, const ComplexMatrix& op,
                          std::span<const std::size_t> targets);

// 1/2 Tr|a - b| for Hermitian inputs.
double TraceDistance(const ComplexMatrix& a, const ComplexMatrix& b);
double TraceDistance(const DensityMatrix& a, const DensityMatrix& b);

// Tr sqrt(sqrt(a) b sqrt(a)).
double Fidelity(const DensityMatrix& a, const DensityMatrix& b);

ComplexMatrix SqrtPsd(const ComplexMatrix& m);

// exp(i * t * h) for Hermitian h.
ComplexMatrix ExpiHermitian(const ComplexMatrix& h, double t = 1.0);

// Haar-random unitary: QR of a complex Ginibre matrix with the phases of R's
// diagonal moved into Q.
ComplexMatrix RandomUnitary(std::size_t dim, Rng& rng);
ComplexMatrix RandomUnitary(std::size_t dim, std::uint64_t seed);

// Random full-rank density matrix G G^dagger / Tr(G G^dagger).
DensityMatrix RandomDensityMatrix(std::size_t dim, Rng& rng);
StateVector RandomPureState(std::size_t dim, Rng& rng);

}  // namespace thermosup

#endif  // THERMOSUP_QMATH_H_
