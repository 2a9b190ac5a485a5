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

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.h"
#include "photokernel/kernels.h"

using namespace photokernel;
using photokernel::testing::qp_svm_oracle;

namespace {

struct Problem {
  Eigen::MatrixXd k_train;
  Eigen::MatrixXd k_test;
  std::vector<int> y;
};

// Gaussian kernel on random 3-D points with random labels; the small ridge
// keeps the oracle's coordinate descent well conditioned.
Problem random_problem(std::uint64_t seed, int n_train, int n_test) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointMatrix p(n_train + n_test, 3);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) p(i, j) = u(rng);
  }
  Problem out;
  const Eigen::MatrixXd full = gram_matrix(p, KernelSpec::gaussian(2.0)).values;
  out.k_train = full.topLeftCorner(n_train, n_train) + 0.05 * Eigen::MatrixXd::Identity(n_train, n_train);
  out.k_test = full.bottomLeftCorner(n_test, n_train);
  for (int i = 0; i < n_train; ++i) out.y.push_back(p(i, 0) + 0.3 * u(rng) > 0.6 ? 1 : -1);
  out.y[0] = 1;
  out.y[1] = -1;
  return out;
}

}  // namespace

TEST(svm, two_point_example) {
  const Eigen::MatrixXd k = Eigen::MatrixXd::Identity(2, 2);
  const std::vector<int> y{1, -1};
  SvmOptions opt;
  opt.c = 1e6;
  const SvmModel m = train(k, y, opt);
  EXPECT_NEAR(m.alphas(0), 1.0, 1e-10);
  EXPECT_NEAR(m.alphas(1), 1.0, 1e-10);
  EXPECT_NEAR(m.bias, 0.0, 1e-10);
  EXPECT_NEAR(m.dual_objective, 1.0, 1e-10);
  opt.c = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(train(k, y, opt).alphas(0), 1.0, 1e-10);
}

TEST(svm, separable_one_dimensional) {
  PointMatrix p(6, 1);
  p << 0.05, 0.1, 0.2, 0.7, 0.8, 0.95;
  const std::vector<int> y{-1, -1, -1, 1, 1, 1};
  PointMatrix shifted = p.array() - 0.45;
  const Eigen::MatrixXd k = gram_matrix(shifted, KernelSpec::polynomial(1.0, 1.0, 1)).values;
  SvmOptions opt;
  opt.c = std::numeric_limits<double>::infinity();
  const SvmModel m = train(k, y, opt);
  EXPECT_EQ(accuracy(predict(m, k), y), 1.0);
  EXPECT_LT(m.kkt_residual, 1e-8);
  // A point identical to a support vector gets its training label.
  for (Eigen::Index i = 0; i < 6; ++i) {
    if (m.alphas(i) > 0) EXPECT_EQ(predict(m, k.row(i))[0], y[static_cast<std::size_t>(i)]);
  }
}

TEST(svm, bias_only_model) {
  SvmModel m;
  m.alphas = Eigen::VectorXd::Zero(3);
  m.train_labels = {1, -1, 1};
  m.bias = 0.3;
  for (int v : predict(m, Eigen::MatrixXd::Random(4, 3))) EXPECT_EQ(v, 1);
  m.bias = 0.0;
  EXPECT_EQ(predict(m, Eigen::MatrixXd::Zero(1, 3))[0], 1);
  EXPECT_THROW(predict(m, Eigen::MatrixXd::Zero(1, 2)), std::invalid_argument);
}

TEST(svm, train_accuracy_at_least_half) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Problem pr = random_problem(s, 25, 1);
    const SvmModel m = train(pr.k_train, pr.y);
    EXPECT_GE(accuracy(predict(m, pr.k_train), pr.y), 0.5);
  }
}

TEST(svm, matches_qp_oracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 10 + static_cast<int>(s % 21);
    const Problem pr = random_problem(1000 + s, n, 40);
    const double c = s % 2 ? 1.0 : 10.0;
    SvmOptions opt;
    opt.c = c;
    const SvmModel m = train(pr.k_train, pr.y, opt);
    EXPECT_LT(m.kkt_residual, 1e-6);
    const auto ref = qp_svm_oracle(pr.k_train, pr.y, c);
    EXPECT_LT((m.alphas - ref.alphas).cwiseAbs().maxCoeff(), 1e-6) << "problem " << s;
    EXPECT_NEAR(m.bias, ref.bias, 1e-6);
    SvmModel oracle = m;
    oracle.alphas = ref.alphas;
    oracle.bias = ref.bias;
    EXPECT_EQ(predict(m, pr.k_test), predict(oracle, pr.k_test));
  }
}

TEST(svm, dual_objective_not_worse_than_feasible_points) {
  const Problem pr = random_problem(7, 20, 1);
  const SvmModel m = train(pr.k_train, pr.y);
  // alpha = 0 is feasible with objective 0.
  EXPECT_GT(m.dual_objective, 0.0);
  for (Eigen::Index i = 0; i < m.alphas.size(); ++i) {
    EXPECT_GE(m.alphas(i), 0.0);
    EXPECT_LE(m.alphas(i), m.c);
  }
  double balance = 0.0;
  for (Eigen::Index i = 0; i < m.alphas.size(); ++i) balance += m.alphas(i) * pr.y[static_cast<std::size_t>(i)];
  EXPECT_NEAR(balance, 0.0, 1e-9);
}

TEST(svm, errors) {
  const Eigen::MatrixXd k = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_THROW(train(k, std::vector<int>{1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(train(k, std::vector<int>{1, -1}), std::invalid_argument);
  EXPECT_THROW(train(k, std::vector<int>{1, 0, -1}), std::invalid_argument);
  SvmOptions opt;
  opt.c = 0.0;
  EXPECT_THROW(train(k, std::vector<int>{1, -1, 1}, opt), std::invalid_argument);
}

TEST(svm, accuracy_examples) {
  EXPECT_EQ(accuracy(std::vector<int>{1, -1, 1}, std::vector<int>{1, -1, 1}), 1.0);
  EXPECT_EQ(accuracy(std::vector<int>{1, -1}, std::vector<int>{-1, 1}), 0.0);
  EXPECT_EQ(accuracy(std::vector<int>{1, 1, -1, -1}, std::vector<int>{1, -1, -1, 1}), 0.5);
}

TEST(svm, split) {
  const TrainTestSplit s = split_indices(40, 2.0 / 3.0, 5);
  EXPECT_EQ(s.train.size(), 27u);
  EXPECT_EQ(s.test.size(), 13u);
  const TrainTestSplit again = split_indices(40, 2.0 / 3.0, 5);
  EXPECT_EQ(s.train, again.train);
  EXPECT_EQ(s.test, again.test);
  std::vector<bool> seen(40, false);
  for (auto i : s.train) seen[i] = true;
  for (auto i : s.test) seen[i] = true;
  EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 40);
  EXPECT_EQ(split_indices(10, 0.7, 1).train.size(), 7u);
  EXPECT_THROW(split_indices(3, 0.9, 1), std::invalid_argument);
  EXPECT_THROW(split_indices(10, 1.0, 1), std::invalid_argument);
}

TEST(svm, cross_validation_is_deterministic) {
  const Problem pr = random_problem(3, 30, 1);
  const double a = cross_validate(pr.k_train, pr.y, {}, 3, 11);
  EXPECT_EQ(a, cross_validate(pr.k_train, pr.y, {}, 3, 11));
  EXPECT_GE(a, 0.0);
  EXPECT_LE(a, 1.0);
}
