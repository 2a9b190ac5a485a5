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

#include "photokernel/taskgen.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "photokernel/random.h"

namespace photokernel {

namespace {

constexpr double kNegativeEigenTolerance = 1e-8;
constexpr double kSingularRcond = 1e-13;

void require_square(const Eigen::MatrixXd& k, const char* who) {
  if (k.rows() != k.cols() || k.rows() == 0) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

void require_symmetric(const Eigen::MatrixXd& k, const char* who) {
  require_square(k, who);
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
  }
}

Eigen::PartialPivLU<Eigen::MatrixXd> regularized_lu(const Eigen::MatrixXd& k, double lambda, const char* who) {
  Eigen::MatrixXd reg = k;
  reg.diagonal().array() += lambda;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(reg);
  if (!(lu.rcond() > kSingularRcond)) {
    throw std::domain_error(std::string(who) + ": K + lambda I is singular (lambda = " + std::to_string(lambda) +
                            "); use a larger lambda");
  }
  return lu;
}

}  // namespace

void Dataset::validate() const {
  if (points.rows() < 2) throw std::invalid_argument("Dataset: needs N >= 2 points");
  if ((points.array() < 0.0).any() || (points.array() > 1.0).any()) {
    throw std::invalid_argument("Dataset: entries must lie in [0, 1]");
  }
  if (!labels.empty()) {
    if (static_cast<Eigen::Index>(labels.size()) != points.rows()) {
      throw std::invalid_argument("Dataset: label count does not match point count");
    }
    for (int y : labels) {
      if (y != 1 && y != -1) throw std::invalid_argument("Dataset: labels must be +1 or -1");
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.seed = seed;
  out.points.resize(static_cast<Eigen::Index>(indices.size()), points.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    out.points.row(static_cast<Eigen::Index>(r)) = points.row(static_cast<Eigen::Index>(indices[r]));
    if (!labels.empty()) out.labels.push_back(labels[indices[r]]);
  }
  return out;
}

double model_complexity(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda) {
  require_square(k, "model_complexity");
  if (y.size() != k.rows()) throw std::invalid_argument("model_complexity: label length does not match K");
  const auto lu = regularized_lu(k, lambda, "model_complexity");
  return y.dot(lu.solve(y));
}

double model_complexity(const Eigen::MatrixXd& k, std::span<const int> labels, double lambda) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y(static_cast<Eigen::Index>(i)) = labels[i];
  return model_complexity(k, y, lambda);
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& k, double negative_tolerance) {
  require_symmetric(k, "psd_sqrt");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (k + k.transpose()));
  if (es.info() != Eigen::Success) throw std::runtime_error("psd_sqrt: eigen-decomposition failed");
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -negative_tolerance) {
    throw std::domain_error("psd_sqrt: matrix has eigenvalue " + std::to_string(ev.minCoeff()) +
                            " below the negative tolerance");
  }
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

GeometricDifferenceResult geometric_difference(const Eigen::MatrixXd& k_q, const Eigen::MatrixXd& k_c, double lambda,
                                               LabelRule rule) {
  require_symmetric(k_q, "geometric_difference");
  require_symmetric(k_c, "geometric_difference");
  if (k_q.rows() != k_c.rows()) throw std::invalid_argument("geometric_difference: Gram sizes differ");
  if (lambda < 0.0) throw std::invalid_argument("geometric_difference: lambda must be >= 0");

  GeometricDifferenceResult res;
  res.lambda = lambda;
  res.sqrt_kq = psd_sqrt(k_q, kNegativeEigenTolerance);
  const auto lu = regularized_lu(k_c, lambda, "geometric_difference");
  Eigen::MatrixXd m = res.sqrt_kq * lu.solve(res.sqrt_kq);
  m = 0.5 * (m + m.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("geometric_difference: eigen-decomposition failed");
  const Eigen::Index top = m.rows() - 1;  // eigenvalues ascend
  const double top_value = es.eigenvalues()(top);
  if (!(top_value > 0.0)) throw std::domain_error("geometric_difference: spectral norm is not positive");
  res.g = std::sqrt(top_value);

  Eigen::VectorXd v = es.eigenvectors().col(top).normalized();
  const double cutoff = 1e-12 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  res.eigenvector = v;
  res.scores = res.sqrt_kq * v;

  const Eigen::VectorXd& basis = rule == LabelRule::kProjectedEigenvector ? res.scores : res.eigenvector;
  res.labels.resize(static_cast<std::size_t>(basis.size()));
  for (Eigen::Index i = 0; i < basis.size(); ++i) res.labels[static_cast<std::size_t>(i)] = basis(i) < 0.0 ? -1 : 1;
  return res;
}

PointMatrix uniform_points(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("uniform_points: n and d must be positive");
  Rng rng(seed);
  PointMatrix p(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) p(i, j) = rng.uniform01();
  }
  return p;
}

GeneratedTask generate_task(const PhotonicSetup& setup, int n, std::uint64_t seed, const TaskOptions& options) {
  if (n < 4) throw std::invalid_argument("generate_task: N must be >= 4");
  const int d = setup.mesh.data_dimension();
  for (int attempt = 0; attempt <= options.max_redraws; ++attempt) {
    const std::uint64_t draw_seed = attempt == 0 ? seed : derive_seed(seed, {static_cast<std::uint64_t>(attempt)});
    GeneratedTask task;
    task.dataset.points = uniform_points(n, d, draw_seed);
    task.dataset.seed = draw_seed;
    task.k_quantum = gram_matrix(task.dataset.points, KernelSpec::quantum(), Engine::exact(), &setup);
    task.k_coherent = gram_matrix(task.dataset.points, KernelSpec::coherent(), Engine::exact(), &setup);
    task.separation = geometric_difference(task.k_quantum.values, task.k_coherent.values, options.lambda, options.rule);
    const auto& y = task.separation.labels;
    const bool single_class = std::all_of(y.begin(), y.end(), [&](int v) { return v == y.front(); });
    if (single_class) continue;
    task.dataset.labels = y;
    task.redraws = attempt;
    return task;
  }
  throw std::runtime_error("generate_task: " + std::to_string(options.max_redraws + 1) +
                           " consecutive draws produced a single-class labeling");
}

}  // namespace photokernel
