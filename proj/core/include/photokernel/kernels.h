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

#ifndef PHOTOKERNEL_KERNELS_H_
#define PHOTOKERNEL_KERNELS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "photokernel/fock.h"
#include "photokernel/mesh.h"
#include "photokernel/shots.h"

namespace photokernel {

/// N x d data matrix, one point per row. Row-major so a row is a contiguous
/// span usable by encode_phases().
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::span<const double> row_span(const PointMatrix& points, Eigen::Index i) {
  return {points.data() + i * points.cols(), static_cast<std::size_t>(points.cols())};
}

enum class KernelKind {
  kQuantum,     // indistinguishable photons
  kCoherent,    // distinguishable photons
  kMixed,       // partial distinguishability, see KernelSpec::indistinguishability
  kUnbunching,  // quantum statistics renormalized over collision-free outputs
  kGaussian,
  kPolynomial,
  kLinear,
  kNtk,
};

std::string_view to_string(KernelKind kind);
/// Inverse of to_string(); throws std::invalid_argument for unknown names.
KernelKind kernel_kind_from_string(std::string_view name);
bool is_photonic(KernelKind kind);

/// Kernel kind plus hyperparameters. Only the fields relevant to `kind` are
/// read.
struct KernelSpec {
  KernelKind kind = KernelKind::kQuantum;
  double gamma = 1.0;                 // gaussian width, polynomial scale
  double offset = 0.0;                // polynomial r
  int degree = 2;                     // polynomial d
  double indistinguishability = 1.0;  // kMixed only
  int depth = 2;                      // ntk hidden layers
  int width_hint = 30;                // ntk; documentation only, the kernel is the infinite-width limit

  static KernelSpec quantum() { return {KernelKind::kQuantum}; }
  static KernelSpec coherent() { return {KernelKind::kCoherent}; }
  static KernelSpec unbunching() { return {KernelKind::kUnbunching}; }
  static KernelSpec mixed(double r);
  static KernelSpec gaussian(double gamma);
  static KernelSpec polynomial(double gamma, double offset, int degree);
  static KernelSpec linear() { return {KernelKind::kLinear}; }
  static KernelSpec ntk(int depth = 2);

  /// Indistinguishability used for photon statistics (quantum 1, coherent 0).
  Indistinguishability statistics() const;
  /// Throws std::invalid_argument on out-of-range hyperparameters.
  void validate() const;
};

/// Mesh plus injected Fock state.
struct PhotonicSetup {
  MeshConfig mesh;
  FockState psi;
};

/// How Gram entries are obtained: exactly, or from `shots` simulated
/// detection events per pair followed by collision-free post-selection.
struct Engine {
  bool sampled = false;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static Engine exact() { return {}; }
  static Engine sampling(std::uint64_t shots, std::uint64_t seed) { return {true, shots, seed}; }
};

struct GramMatrix {
  Eigen::MatrixXd values;
  KernelKind kind = KernelKind::kQuantum;
  Engine provenance;

  Eigen::Index size() const { return values.rows(); }
};

/// P(psi | psi) under U(x_i)^dagger U(x_j). For quantum statistics this is
/// |<psi| U(x_i)^dagger U(x_j) |psi>|^2. psi must be collision-free.
double photonic_kernel_entry(const PhotonicSetup& setup, std::span<const double> x_i, std::span<const double> x_j,
                             Indistinguishability model);
double photonic_kernel_entry(const MeshUnitary& u_i, const MeshUnitary& u_j, const FockState& psi,
                             Indistinguishability model);

/// P(psi) / sum of P(t) over collision-free t. Throws std::domain_error when
/// the collision-free mass is zero.
double unbunching_kernel_entry(const OutputDistribution& distribution, const FockState& psi);

/// exp(-gamma |x_i - x_j|^2).
double gaussian_kernel(std::span<const double> x_i, std::span<const double> x_j, double gamma);
/// (gamma x_i . x_j + offset)^degree.
double polynomial_kernel(std::span<const double> x_i, std::span<const double> x_j, double gamma, double offset,
                         int degree);
double linear_kernel(std::span<const double> x_i, std::span<const double> x_j);

/// Infinite-width neural tangent kernel of a fully connected ReLU network
/// with `depth` hidden layers, NTK parameterization, unit weight variance and
/// no biases. Throws std::invalid_argument on a zero-norm input.
double ntk_kernel(std::span<const double> x_i, std::span<const double> x_j, int depth = 2);

/// Any single kernel value. Photonic kinds need `setup`. Exact statistics.
double kernel_value(const KernelSpec& spec, std::span<const double> x_i, std::span<const double> x_j,
                    const PhotonicSetup* setup = nullptr);

/// N x N Gram matrix. Only the upper triangle is evaluated and mirrored;
/// photonic diagonals are set to 1 without evaluation. The sampled engine
/// applies to photonic kinds only: each pair (i, j) draws `shots` events with
/// a seed derived from (engine.seed, i, j) and estimates the entry as the
/// post-selected coincidence ratio.
GramMatrix gram_matrix(const PointMatrix& points, const KernelSpec& spec, const Engine& engine = Engine::exact(),
                       const PhotonicSetup* setup = nullptr);

/// Sampled photonic Gram together with the per-pair coincidence records
/// (upper triangle, row-major) and the fidelity of each record's
/// frequencies against the exact post-selected distribution.
struct SampledGram {
  GramMatrix gram;
  std::vector<CoincidenceRecord> records;
  std::vector<double> fidelities;
};

SampledGram sample_gram_matrix(const PointMatrix& points, const KernelSpec& spec, std::uint64_t shots,
                               std::uint64_t seed, const PhotonicSetup& setup);

/// Rectangular K(a_p, b_q), exact statistics.
Eigen::MatrixXd cross_gram(const PointMatrix& a, const PointMatrix& b, const KernelSpec& spec,
                           const PhotonicSetup* setup = nullptr);

/// Smallest eigenvalue of the symmetric part of k.
double min_eigenvalue(const Eigen::MatrixXd& k);
double max_asymmetry(const Eigen::MatrixXd& k);

}  // namespace photokernel

#endif  // PHOTOKERNEL_KERNELS_H_
