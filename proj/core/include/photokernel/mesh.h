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

#ifndef PHOTOKERNEL_MESH_H_
#define PHOTOKERNEL_MESH_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace photokernel {

/// Rectangular Mach-Zehnder mesh: `modes` waveguides, `columns` layers.
///
/// Column c (0-based) holds MZIs on mode pairs (0,1), (2,3), ... when c is
/// even and (1,2), (3,4), ... when c is odd. Every MZI carries two phases, so
/// the encoded data dimension is twice the MZI count.
class MeshConfig {
 public:
  /// Square mesh (columns == modes).
  explicit MeshConfig(int modes) : MeshConfig(modes, modes) {}
  MeshConfig(int modes, int columns);

  int modes() const { return modes_; }
  int columns() const { return columns_; }

  int mzis_in_column(int column) const;
  int mzi_count() const;
  int data_dimension() const { return 2 * mzi_count(); }

  friend bool operator==(const MeshConfig&, const MeshConfig&) = default;

 private:
  int modes_;
  int columns_;
};

/// Phase settings of a mesh in radians, each in [0, 2pi). Entries come in
/// (internal, external) pairs, one pair per MZI in column-major order.
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> phases);

  std::span<const double> values() const { return phases_; }
  std::size_t size() const { return phases_.size(); }
  double operator[](std::size_t i) const { return phases_[i]; }

 private:
  std::vector<double> phases_;
};

/// Square complex matrix produced by a mesh. Construction does not check
/// unitarity; use max_unitarity_error() when that matters.
class MeshUnitary {
 public:
  MeshUnitary() = default;
  explicit MeshUnitary(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  int modes() const { return static_cast<int>(matrix_.rows()); }
  std::complex<double> operator()(int row, int col) const { return matrix_(row, col); }

  MeshUnitary adjoint() const { return MeshUnitary(matrix_.adjoint()); }

  /// max |U^dagger U - I| over all entries.
  double max_unitarity_error() const;

 private:
  Eigen::MatrixXcd matrix_;
};

/// theta_j = 2 pi x_j reduced into [0, 2pi). Throws std::invalid_argument on
/// a dimension mismatch or a component outside [0, 1].
PhaseVector encode_phases(const MeshConfig& cfg, std::span<const double> x);

/// 2x2 transfer matrix of one MZI with internal phase theta and external
/// phase phi:
///
///   T = i e^{i theta/2} [[e^{i phi} sin(theta/2),  cos(theta/2)],
///                        [e^{i phi} cos(theta/2), -sin(theta/2)]]
Eigen::Matrix2cd mzi_transfer(double theta, double phi);

/// U = T_k ... T_2 T_1 where T_c is the block-diagonal matrix of column c.
MeshUnitary build_unitary(const MeshConfig& cfg, const PhaseVector& phases);

/// Convenience: build_unitary(cfg, encode_phases(cfg, x)).
MeshUnitary encode_unitary(const MeshConfig& cfg, std::span<const double> x);

/// U(x_i)^dagger U(x_j).
MeshUnitary product_unitary(const MeshConfig& cfg, std::span<const double> x_i,
                            std::span<const double> x_j);
MeshUnitary product_unitary(const MeshUnitary& u_i, const MeshUnitary& u_j);

}  // namespace photokernel

#endif  // PHOTOKERNEL_MESH_H_
