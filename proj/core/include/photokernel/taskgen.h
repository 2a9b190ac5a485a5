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

#ifndef PHOTOKERNEL_TASKGEN_H_
#define PHOTOKERNEL_TASKGEN_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "photokernel/kernels.h"

namespace photokernel {

inline constexpr double kDefaultRegularization = 0.02;

/// Points in [0,1]^d with optional +-1 labels.
struct Dataset {
  PointMatrix points;
  std::vector<int> labels;  // empty when unlabeled
  std::uint64_t seed = 0;

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dimension() const { return points.cols(); }
  bool labeled() const { return !labels.empty(); }

  /// Throws std::invalid_argument when N < 2, an entry leaves [0, 1] or a
  /// label is not +-1.
  void validate() const;
  Dataset subset(std::span<const std::size_t> indices) const;
};

enum class LabelRule {
  kProjectedEigenvector,  // sign(sqrt(K_Q) v)
  kEigenvector,           // sign(v)
};

struct GeometricDifferenceResult {
  double g = 0.0;
  Eigen::VectorXd eigenvector;  // unit norm, first non-negligible component positive
  Eigen::VectorXd scores;       // sqrt(K_Q) v, the un-thresholded labels
  std::vector<int> labels;      // sign of scores (or of v), zero mapped to +1
  double lambda = kDefaultRegularization;
  Eigen::MatrixXd sqrt_kq;      // spectral square root of K_Q
};

/// y^T (K + lambda I)^{-1} y. Throws std::domain_error when K + lambda I is
/// numerically singular.
double model_complexity(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda);
double model_complexity(const Eigen::MatrixXd& k, std::span<const int> labels, double lambda);

/// g = sqrt(||sqrt(K_Q) (K_C + lambda I)^{-1} sqrt(K_Q)||) with the top
/// eigenvector and the labels it induces. Eigenvalues of K_Q in [-1e-8, 0)
/// are clipped to zero before the square root; below -1e-8 is an error.
GeometricDifferenceResult geometric_difference(const Eigen::MatrixXd& k_q, const Eigen::MatrixXd& k_c,
                                               double lambda = kDefaultRegularization,
                                               LabelRule rule = LabelRule::kProjectedEigenvector);

/// Symmetric PSD square root by spectral decomposition.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& k, double negative_tolerance = 1e-8);

struct TaskOptions {
  double lambda = kDefaultRegularization;
  LabelRule rule = LabelRule::kProjectedEigenvector;
  int max_redraws = 10;
};

struct GeneratedTask {
  Dataset dataset;
  GeometricDifferenceResult separation;
  GramMatrix k_quantum;
  GramMatrix k_coherent;
  int redraws = 0;
};

/// Draws N uniform points in [0,1)^d, labels them by the geometric
/// difference between the exact quantum and coherent kernels. Single-class
/// draws are redrawn with a seed derived from the original; more than
/// `max_redraws` of them is an error.
GeneratedTask generate_task(const PhotonicSetup& setup, int n, std::uint64_t seed, const TaskOptions& options = {});

/// Uniform points in [0,1)^d from the portable generator.
PointMatrix uniform_points(int n, int d, std::uint64_t seed);

}  // namespace photokernel

#endif  // PHOTOKERNEL_TASKGEN_H_
