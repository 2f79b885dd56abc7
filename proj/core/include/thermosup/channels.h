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

#ifndef THERMOSUP_CHANNELS_H_
#define THERMOSUP_CHANNELS_H_

#include <cstddef>
#include <vector>

#include "thermosup/qmath.h"

namespace thermosup {

// Two-body interaction unitaries in this module act on probe (x) bath, probe
// most significant.

inline constexpr double kCompletenessTolerance = 1e-10;
inline constexpr double kKrausPruneNorm = 1e-14;

// Kraus label (k, l): k is the output bath index, l the input bath eigenstate.
struct KrausLabel {
  std::size_t out_index;
  std::size_t in_index;
  friend bool operator==(const KrausLabel&, const KrausLabel&) = default;
};

// Operator-sum representation with the bath weights folded in, i.e. stored
// operators are sqrt(c_l) M_kl.
class KrausSet {
 public:
  // Throws InvalidArgument unless sum_j K_j^dagger K_j = I within 1e-10.
  KrausSet(std::vector<ComplexMatrix> operators, std::vector<KrausLabel> labels,
           std::size_t index_dim);
  // Labels (j, 0), index dimension = number of operators.
  explicit KrausSet(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const std::vector<KrausLabel>& labels() const { return labels_; }
  std::size_t size() const { return operators_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(operators_.front().rows()); }
  // Range of the output index k; the representation freedom acts on it.
  std::size_t index_dim() const { return index_dim_; }

  double completeness_defect() const;

 private:
  std::vector<ComplexMatrix> operators_;
  std::vector<KrausLabel> labels_;
  std::size_t index_dim_;
};

// sum_{k,l} |k><l|_S (x) |l><k|_B: exchanges probe and bath states.
ComplexMatrix SwapThermalizer(std::size_t d);

// sqrt(c_l) <k|U|l> in the eigenbasis of `bath_state`, zero operators pruned.
KrausSet KrausFromUnitary(const ComplexMatrix& u, const DensityMatrix& bath_state);

DensityMatrix ApplyKraus(const KrausSet& kraus, const DensityMatrix& rho);

// K'_{kl} = sum_s u_{ks} K_{sl}. Leaves the channel unchanged.
KrausSet TransformRepresentation(const KrausSet& kraus, const ComplexMatrix& u);

// Generalised amplitude damping interaction on probe (x) bath qubit in the
// basis {|00>, |01>, |10>, |11>}. 0 <= eta <= 1.
ComplexMatrix GadcUnitary(double eta);

// GadcUnitary(eta) (x) I on probe (x) bath qubit (x) purifying ancilla.
ComplexMatrix GadcOnPurified(double eta);

}  // namespace thermosup

#endif  // THERMOSUP_CHANNELS_H_
