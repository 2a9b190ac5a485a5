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

#include "photokernel/svm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "photokernel/random.h"

namespace photokernel {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_labels(std::span<const int> labels, Eigen::Index n, const char* who) {
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw std::invalid_argument(std::string(who) + ": label count does not match the Gram matrix");
  }
  bool pos = false, neg = false;
  for (int y : labels) {
    if (y == 1) pos = true;
    else if (y == -1) neg = true;
    else throw std::invalid_argument(std::string(who) + ": labels must be +1 or -1");
  }
  if (!pos || !neg) throw std::invalid_argument(std::string(who) + ": training labels contain a single class");
}

// Pairwise coordinate descent on min 1/2 a^T Q a - e^T a, y^T a = 0,
// 0 <= a <= C, with Q_ij = y_i y_j K_ij. Working-set selection and the
// clipped two-variable update follow Fan, Chen & Lin (2005).
class SmoSolver {
 public:
  SmoSolver(const Eigen::MatrixXd& k, std::span<const int> y, double c)
      : k_(k), y_(y.begin(), y.end()), n_(k.rows()), c_(std::isinf(c) ? std::numeric_limits<double>::max() : c) {
    alpha_ = Eigen::VectorXd::Zero(n_);
    grad_ = Eigen::VectorXd::Constant(n_, -1.0);
  }

  bool upper(Eigen::Index t) const { return alpha_(t) >= c_; }
  bool lower(Eigen::Index t) const { return alpha_(t) <= 0.0; }
  double q(Eigen::Index i, Eigen::Index j) const { return y_[i] * y_[j] * k_(i, j); }

  // Returns the violating-pair gap; fills i, j when a step is possible.
  double select(Eigen::Index& out_i, Eigen::Index& out_j) const {
    double gmax = -kInf;
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < n_; ++t) {
      if (y_[t] == 1) {
        if (!upper(t) && -grad_(t) >= gmax) { gmax = -grad_(t); i = t; }
      } else {
        if (!lower(t) && grad_(t) >= gmax) { gmax = grad_(t); i = t; }
      }
    }
    double gmax2 = -kInf;
    double best = kInf;
    Eigen::Index j = -1;
    for (Eigen::Index t = 0; t < n_; ++t) {
      double grad_diff = 0.0;
      double quad = 0.0;
      if (y_[t] == 1) {
        if (lower(t)) continue;
        gmax2 = std::max(gmax2, grad_(t));
        grad_diff = gmax + grad_(t);
        if (i >= 0) quad = k_(i, i) + k_(t, t) - 2.0 * y_[i] * q(i, t);
      } else {
        if (upper(t)) continue;
        gmax2 = std::max(gmax2, -grad_(t));
        grad_diff = gmax - grad_(t);
        if (i >= 0) quad = k_(i, i) + k_(t, t) + 2.0 * y_[i] * q(i, t);
      }
      if (i >= 0 && grad_diff > 0.0) {
        const double obj = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (obj <= best) { best = obj; j = t; }
      }
    }
    out_i = i;
    out_j = j;
    return gmax + gmax2;
  }

  void step(Eigen::Index i, Eigen::Index j) {
    const double old_i = alpha_(i);
    const double old_j = alpha_(j);
    const double c = c_;
    if (y_[i] != y_[j]) {
      double quad = k_(i, i) + k_(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_(i) - grad_(j)) / quad;
      const double diff = alpha_(i) - alpha_(j);
      alpha_(i) += delta;
      alpha_(j) += delta;
      if (diff > 0.0) {
        if (alpha_(j) < 0.0) { alpha_(j) = 0.0; alpha_(i) = diff; }
      } else {
        if (alpha_(i) < 0.0) { alpha_(i) = 0.0; alpha_(j) = -diff; }
      }
      if (diff > 0.0) {
        if (alpha_(i) > c) { alpha_(i) = c; alpha_(j) = c - diff; }
      } else {
        if (alpha_(j) > c) { alpha_(j) = c; alpha_(i) = c + diff; }
      }
    } else {
      double quad = k_(i, i) + k_(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_(i) - grad_(j)) / quad;
      const double sum = alpha_(i) + alpha_(j);
      alpha_(i) -= delta;
      alpha_(j) += delta;
      if (sum > c) {
        if (alpha_(i) > c) { alpha_(i) = c; alpha_(j) = sum - c; }
      } else {
        if (alpha_(j) < 0.0) { alpha_(j) = 0.0; alpha_(i) = sum; }
      }
      if (sum > c) {
        if (alpha_(j) > c) { alpha_(j) = c; alpha_(i) = sum - c; }
      } else {
        if (alpha_(i) < 0.0) { alpha_(i) = 0.0; alpha_(j) = sum; }
      }
    }
    const double di = alpha_(i) - old_i;
    const double dj = alpha_(j) - old_j;
    for (Eigen::Index t = 0; t < n_; ++t) grad_(t) += q(t, i) * di + q(t, j) * dj;
  }

  double bias() const {
    double ub = kInf, lb = -kInf, sum_free = 0.0;
    int free_count = 0;
    for (Eigen::Index t = 0; t < n_; ++t) {
      const double yg = y_[t] * grad_(t);
      if (upper(t)) {
        if (y_[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else if (lower(t)) {
        if (y_[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else {
        ++free_count;
        sum_free += yg;
      }
    }
    double rho = 0.0;
    if (free_count > 0) {
      rho = sum_free / free_count;
    } else if (std::isfinite(ub) && std::isfinite(lb)) {
      rho = 0.5 * (ub + lb);
    } else {
      rho = std::isfinite(ub) ? ub : lb;
    }
    return -rho;
  }

  double objective() const { return -0.5 * alpha_.dot(grad_ - Eigen::VectorXd::Ones(n_)); }

  const Eigen::VectorXd& alpha() const { return alpha_; }

 private:
  const Eigen::MatrixXd& k_;
  std::vector<int> y_;
  Eigen::Index n_;
  double c_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd grad_;
};

}  // namespace

std::size_t SvmModel::support_vector_count(double threshold) const {
  return static_cast<std::size_t>((alphas.array() > threshold).count());
}

SvmModel train(const Eigen::MatrixXd& k_train, std::span<const int> labels, const SvmOptions& options) {
  if (k_train.rows() != k_train.cols()) throw std::invalid_argument("svm train: Gram matrix must be square");
  check_labels(labels, k_train.rows(), "svm train");
  if (!(options.c > 0.0)) throw std::invalid_argument("svm train: C must be > 0");

  SmoSolver solver(k_train, labels, options.c);
  std::uint64_t iter = 0;
  double gap = 0.0;
  for (;; ++iter) {
    Eigen::Index i = -1, j = -1;
    gap = solver.select(i, j);
    if (gap < options.tolerance || j < 0) break;
    if (iter >= options.max_iterations) {
      throw std::runtime_error("svm train: no convergence after " + std::to_string(iter) +
                               " iterations, violating-pair gap " + std::to_string(gap));
    }
    solver.step(i, j);
  }

  SvmModel model;
  model.alphas = solver.alpha();
  model.bias = solver.bias();
  model.train_labels.assign(labels.begin(), labels.end());
  model.c = options.c;
  model.dual_objective = solver.objective();
  model.iterations = iter;
  model.kkt_residual = kkt_residual(k_train, labels, model.alphas, model.bias, options.c);
  return model;
}

double kkt_residual(const Eigen::MatrixXd& k_train, std::span<const int> labels, const Eigen::VectorXd& alphas,
                    double bias, double c) {
  const Eigen::Index n = k_train.rows();
  Eigen::VectorXd ay(n);
  for (Eigen::Index i = 0; i < n; ++i) ay(i) = alphas(i) * labels[static_cast<std::size_t>(i)];
  const Eigen::VectorXd f = k_train * ay;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double margin = labels[static_cast<std::size_t>(i)] * (f(i) + bias);
    double v = 0.0;
    if (alphas(i) <= 0.0) {
      v = std::max(0.0, 1.0 - margin);
    } else if (alphas(i) >= c) {
      v = std::max(0.0, margin - 1.0);
    } else {
      v = std::abs(margin - 1.0);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

Eigen::VectorXd decision_function(const SvmModel& model, const Eigen::MatrixXd& k_cross) {
  if (k_cross.cols() != model.alphas.size()) {
    throw std::invalid_argument("svm predict: cross Gram has " + std::to_string(k_cross.cols()) +
                                " columns, model has " + std::to_string(model.alphas.size()) + " training points");
  }
  Eigen::VectorXd ay(model.alphas.size());
  for (Eigen::Index i = 0; i < ay.size(); ++i) ay(i) = model.alphas(i) * model.train_labels[static_cast<std::size_t>(i)];
  return (k_cross * ay).array() + model.bias;
}

std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& k_cross) {
  const Eigen::VectorXd f = decision_function(model, k_cross);
  std::vector<int> out(static_cast<std::size_t>(f.size()));
  for (Eigen::Index a = 0; a < f.size(); ++a) out[static_cast<std::size_t>(a)] = f(a) < 0.0 ? -1 : 1;
  return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> actual) {
  if (predicted.size() != actual.size()) throw std::invalid_argument("accuracy: length mismatch");
  if (predicted.empty()) throw std::invalid_argument("accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == actual[i];
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

TrainTestSplit split_indices(std::size_t n, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("train_test_split: ratio must lie in (0, 1)");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  // The epsilon keeps products like 0.7 * 10 from rounding up an extra point.
  const auto n_train = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n) - 1e-9));
  if (n_train == 0 || n_train >= n) {
    throw std::invalid_argument("train_test_split: ratio " + std::to_string(ratio) + " leaves an empty split for N = " +
                                std::to_string(n));
  }
  TrainTestSplit s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return s;
}

DatasetSplit train_test_split(const Dataset& dataset, double ratio, std::uint64_t seed) {
  DatasetSplit out;
  out.indices = split_indices(static_cast<std::size_t>(dataset.size()), ratio, seed);
  out.train = dataset.subset(out.indices.train);
  out.test = dataset.subset(out.indices.test);
  return out;
}

Eigen::MatrixXd select(const Eigen::MatrixXd& k, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          k(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
    }
  }
  return out;
}

double cross_validate(const Eigen::MatrixXd& k, std::span<const int> labels, const SvmOptions& options, int folds,
                      std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(k.rows());
  if (folds < 2 || static_cast<std::size_t>(folds) > n) throw std::invalid_argument("cross_validate: bad fold count");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  double total = 0.0;
  int used = 0;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> fit, held;
    for (std::size_t p = 0; p < n; ++p) {
      (static_cast<int>(p % static_cast<std::size_t>(folds)) == f ? held : fit).push_back(order[p]);
    }
    std::vector<int> y_train, y_held;
    for (std::size_t t : fit) y_train.push_back(labels[t]);
    for (std::size_t t : held) y_held.push_back(labels[t]);
    if (std::all_of(y_train.begin(), y_train.end(), [&](int y) { return y == y_train.front(); })) continue;
    const SvmModel m = train(select(k, fit, fit), y_train, options);
    total += accuracy(predict(m, select(k, held, fit)), y_held);
    ++used;
  }
  return used == 0 ? 0.0 : total / used;
}

}  // namespace photokernel
