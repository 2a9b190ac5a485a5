// Copyright 2026 The photokernel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHOTOKERNEL_FOCK_H_
#define PHOTOKERNEL_FOCK_H_

#include <compare>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "photokernel/mesh.h"

namespace photokernel {

/// Occupation-number state |s_1, ..., s_m> with at least one photon.
class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations);
  FockState(std::initializer_list<int> occupations) : FockState(std::vector<int>(occupations)) {}

  std::span<const int> occupations() const { return occ_; }
  int operator[](std::size_t mode) const { return occ_[mode]; }
  int modes() const { return static_cast<int>(occ_.size()); }
  int photons() const { return photons_; }

  /// prod_i s_i!
  double norm_factor() const;
  bool collision_free() const;

  /// Occupied modes with multiplicity, ascending: (0,2,1) -> {1,1,2}.
  std::vector<int> mode_list() const;

  std::string to_string() const;

  friend auto operator<=>(const FockState&, const FockState&) = default;
  friend bool operator==(const FockState&, const FockState&) = default;

 private:
  std::vector<int> occ_;
  int photons_ = 0;
};

/// Degree of indistinguishability r in [0, 1]; 1 is fully indistinguishable.
class Indistinguishability {
 public:
  constexpr Indistinguishability() = default;
  explicit Indistinguishability(double r);

  static Indistinguishability quantum() { return Indistinguishability(1.0); }
  static Indistinguishability coherent() { return Indistinguishability(0.0); }

  double r() const { return r_; }

 private:
  double r_ = 1.0;
};

enum class StatisticsKind { kQuantum, kCoherent, kMixed, kEmpirical };

/// All n-photon, m-mode configurations in descending lexicographic order
/// ((n,0,...,0) first). With collision_free_only the list holds the C(m, n)
/// states with at most one photon per mode, empty when n > m.
std::vector<FockState> enumerate_configurations(int modes, int photons, bool collision_free_only = false);

/// Matrix permanent via Ryser's formula with Gray-code subset order,
/// O(2^q q). Throws std::invalid_argument for a non-square or empty matrix.
std::complex<double> permanent(const Eigen::MatrixXcd& a);
double permanent(const Eigen::MatrixXd& a);

/// n x n matrix with column a of U repeated s_a times and row b repeated t_b
/// times (columns follow the input, rows the output).
Eigen::MatrixXcd submatrix(const MeshUnitary& u, const FockState& input, const FockState& output);

/// P(t | s) under the given indistinguishability.
///
/// r = 1: |Per U_{s,t}|^2 / (prod s! prod t!)
/// r = 0: Per(|U_{s,t}|^2) / prod t!  (equal to the quantum normalization for collision-free s)
/// otherwise r P_1 + (1 - r) P_0. The mixture is exact for two photons; for
/// more photons it ignores partially distinguishable cross terms.
double transition_probability(const MeshUnitary& u, const FockState& input, const FockState& output,
                              Indistinguishability model = Indistinguishability::quantum());

/// Probability table over output configurations.
class OutputDistribution {
 public:
  struct Entry {
    FockState state;
    double probability;
  };

  OutputDistribution() = default;
  OutputDistribution(std::vector<Entry> entries, StatisticsKind kind, double r = 1.0);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  StatisticsKind kind() const { return kind_; }
  double r() const { return r_; }

  /// Zero for states not in the table.
  double probability(const FockState& state) const;
  double total() const;
  double collision_free_mass() const;

  /// Restriction to collision-free outcomes, renormalized. Throws
  /// std::domain_error when the collision-free mass is zero.
  OutputDistribution postselect_collision_free() const;

 private:
  std::vector<Entry> entries_;
  StatisticsKind kind_ = StatisticsKind::kQuantum;
  double r_ = 1.0;
};

/// P(. | s) over all C(n+m-1, n) outputs.
OutputDistribution full_distribution(const MeshUnitary& u, const FockState& input,
                                     Indistinguishability model = Indistinguishability::quantum());

/// Rounds probabilities in [-1e-12, 0) to 0 and (1, 1 + 1e-12] to 1; throws
/// std::domain_error outside that band.
double clip_probability(double p);

}  // namespace photokernel

#endif  // PHOTOKERNEL_FOCK_H_
