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

#ifndef PHOTOKERNEL_SVM_H_
#define PHOTOKERNEL_SVM_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "photokernel/taskgen.h"

namespace photokernel {

inline constexpr double kDefaultBoxConstraint = 10.0;

/// Soft-margin kernel SVM in dual form. Decision function:
///   f(x) = sum_i alpha_i y_i K(x, x_i) + bias,   label = sign(f), sign(0) = +1.
struct SvmModel {
  Eigen::VectorXd alphas;
  double bias = 0.0;
  std::vector<int> train_labels;
  std::vector<std::size_t> train_indices;  // into the originating dataset; may be empty
  double c = kDefaultBoxConstraint;        // +inf for a hard margin

  // Solver diagnostics.
  double dual_objective = 0.0;  // sum alpha - 1/2 alpha^T Q alpha
  double kkt_residual = 0.0;
  std::uint64_t iterations = 0;

  std::size_t support_vector_count(double threshold = 0.0) const;
};

struct SvmOptions {
  double c = kDefaultBoxConstraint;
  double tolerance = 1e-10;  // maximal-violating-pair gap at which SMO stops
  std::uint64_t max_iterations = 10'000'000;
};

/// SMO with second-order working-set selection on a precomputed Gram
/// matrix. Indefinite matrices are accepted. Throws std::invalid_argument
/// when y holds a single class, std::runtime_error on non-convergence.
SvmModel train(const Eigen::MatrixXd& k_train, std::span<const int> labels, const SvmOptions& options = {});

/// k_cross(a, i) = K(x_test_a, x_train_i).
Eigen::VectorXd decision_function(const SvmModel& model, const Eigen::MatrixXd& k_cross);
std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& k_cross);

/// Largest violation of the soft-margin KKT conditions given alphas and bias.
double kkt_residual(const Eigen::MatrixXd& k_train, std::span<const int> labels, const Eigen::VectorXd& alphas,
                    double bias, double c);

double accuracy(std::span<const int> predicted, std::span<const int> actual);

struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded shuffle of 0..n-1; the first ceil(ratio * n) indices train.
TrainTestSplit split_indices(std::size_t n, double ratio, std::uint64_t seed);

struct DatasetSplit {
  Dataset train;
  Dataset test;
  TrainTestSplit indices;
};

DatasetSplit train_test_split(const Dataset& dataset, double ratio, std::uint64_t seed);

/// Rows and columns of k picked by index lists.
Eigen::MatrixXd select(const Eigen::MatrixXd& k, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

/// Mean held-out accuracy over `folds` seeded folds. Folds whose training
/// part holds a single class are skipped; returns 0 if all are skipped.
double cross_validate(const Eigen::MatrixXd& k, std::span<const int> labels, const SvmOptions& options, int folds,
                      std::uint64_t seed);

}  // namespace photokernel

#endif  // PHOTOKERNEL_SVM_H_
