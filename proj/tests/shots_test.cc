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

#include "photokernel/shots.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.h"
#include "photokernel/kernels.h"

using namespace photokernel;
using photokernel::testing::haar_unitary;

namespace {

const FockState kPsi{0, 0, 1, 1, 0, 0};

OutputDistribution random_distribution(std::uint64_t seed) {
  return full_distribution(MeshUnitary(haar_unitary(6, seed)), kPsi);
}

OutputDistribution uniform15() {
  std::vector<OutputDistribution::Entry> e;
  for (const FockState& s : enumerate_configurations(6, 2, true)) e.push_back({s, 1.0 / 15});
  return OutputDistribution(std::move(e), StatisticsKind::kQuantum);
}

OutputDistribution point_mass(const FockState& at) {
  std::vector<OutputDistribution::Entry> e;
  for (const FockState& s : enumerate_configurations(6, 2, true)) e.push_back({s, s == at ? 1.0 : 0.0});
  return OutputDistribution(std::move(e), StatisticsKind::kQuantum);
}

CoincidenceRecord record_of(std::uint64_t on_psi, std::uint64_t on_other) {
  CoincidenceRecord r;
  r.counts = {{kPsi, on_psi}, {FockState{1, 1, 0, 0, 0, 0}, on_other}};
  r.total_shots = on_psi + on_other;
  return r;
}

}  // namespace

TEST(shots, point_mass_on_psi) {
  const CoincidenceRecord r = sample_counts(full_distribution(MeshUnitary(Eigen::MatrixXcd::Identity(6, 6)), kPsi), 1234, 5);
  EXPECT_EQ(r.count(kPsi), 1234u);
  EXPECT_EQ(r.postselected(), 1234u);
  EXPECT_EQ(r.counts.size(), 15u);
  EXPECT_EQ(estimate_kernel_entry(r, kPsi), 1.0);
}

TEST(shots, hom_counts_are_all_discarded) {
  Eigen::MatrixXcd bs(2, 2);
  bs << 1, 1, 1, -1;
  const FockState in{1, 1};
  const CoincidenceRecord r = sample_counts(full_distribution(MeshUnitary(bs / std::sqrt(2.0)), in), 10'000, 1);
  EXPECT_EQ(r.total_shots, 10'000u);
  EXPECT_EQ(r.postselected(), 0u);
  EXPECT_THROW(estimate_kernel_entry(r, in), std::domain_error);
  EXPECT_THROW(r.frequencies(), std::domain_error);
}

TEST(shots, frequencies_within_three_sigma) {
  constexpr std::uint64_t kShots = 1'000'000;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const OutputDistribution d = random_distribution(seed);
    const CoincidenceRecord r = sample_counts(d, kShots, 100 + seed);
    for (const auto& c : r.counts) {
      const double p = d.probability(c.pattern);
      const double sigma = std::sqrt(p * (1 - p) / kShots);
      EXPECT_LE(std::abs(static_cast<double>(c.count) / kShots - p), 3 * sigma + 1e-12) << c.pattern.to_string();
    }
  }
}

TEST(shots, postselection_fraction_within_three_sigma) {
  constexpr std::uint64_t kShots = 200'000;
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const OutputDistribution d = random_distribution(seed);
    const CoincidenceRecord r = sample_counts(d, kShots, seed);
    const double mass = d.collision_free_mass();
    const double sigma = std::sqrt(mass * (1 - mass) / kShots);
    EXPECT_LE(r.postselected(), r.total_shots);
    EXPECT_LE(std::abs(static_cast<double>(r.postselected()) / kShots - mass), 3 * sigma);
  }
}

TEST(shots, seed_determinism) {
  const OutputDistribution d = random_distribution(4);
  const CoincidenceRecord a = sample_counts(d, 5000, 77);
  const CoincidenceRecord b = sample_counts(d, 5000, 77);
  const CoincidenceRecord c = sample_counts(d, 5000, 78);
  bool differs = false;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    EXPECT_EQ(a.counts[i].count, b.counts[i].count);
    differs |= a.counts[i].count != c.counts[i].count;
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(sample_counts(d, 0, 1), std::invalid_argument);
}

TEST(shots, estimator_examples) {
  EXPECT_EQ(estimate_kernel_entry(record_of(50, 0), kPsi), 1.0);
  EXPECT_EQ(estimate_kernel_entry(record_of(50, 50), kPsi), 0.5);
}

TEST(shots, estimator_converges_to_unbunching_entry) {
  const std::uint64_t budgets[] = {1'000, 10'000, 100'000};
  double mean_error[3] = {0, 0, 0};
  for (std::uint64_t inst = 0; inst < 20; ++inst) {
    const OutputDistribution d = random_distribution(200 + inst);
    const double exact = unbunching_kernel_entry(d, kPsi);
    for (int b = 0; b < 3; ++b) {
      const CoincidenceRecord r = sample_counts(d, budgets[b], 1000 * inst + b);
      mean_error[b] += std::abs(estimate_kernel_entry(r, kPsi) - exact) / 20;
    }
  }
  EXPECT_GT(mean_error[0], mean_error[1]);
  EXPECT_GT(mean_error[1], mean_error[2]);
  EXPECT_LT(mean_error[2], 0.01);
}

TEST(shots, fidelity_examples) {
  EXPECT_NEAR(distribution_fidelity(uniform15(), uniform15()), 1.0, 1e-12);
  EXPECT_NEAR(distribution_fidelity(point_mass(kPsi), point_mass(FockState{1, 1, 0, 0, 0, 0})), 0.0, 1e-12);
  EXPECT_NEAR(distribution_fidelity(uniform15(), point_mass(kPsi)), std::sqrt(1.0 / 15), 1e-12);
  EXPECT_NEAR(std::sqrt(1.0 / 15), 0.2582, 1e-4);
}

TEST(shots, fidelity_bounds) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const OutputDistribution p = random_distribution(s).postselect_collision_free();
    const OutputDistribution q = random_distribution(s + 50).postselect_collision_free();
    const double f = distribution_fidelity(p, q);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
    EXPECT_NEAR(distribution_fidelity(p, p), 1.0, 1e-12);
    EXPECT_NEAR(f, distribution_fidelity(q, p), 1e-14);
  }
}

TEST(shots, fidelity_rejects_unnormalized) {
  std::vector<OutputDistribution::Entry> e{{kPsi, 0.5}};
  const OutputDistribution half(e, StatisticsKind::kEmpirical);
  EXPECT_THROW(distribution_fidelity(half, uniform15()), std::invalid_argument);
}

TEST(shots, shot_budget) {
  EXPECT_EQ(shot_budget_from_time(kDefaultCoincidenceRateHz, kDefaultIntegrationSeconds), 50'000u);
  EXPECT_EQ(shot_budget_from_time(1.0, 1.0), 1u);
  EXPECT_EQ(shot_budget_from_time(0.5, 1.0), 0u);
  EXPECT_THROW(sample_counts(uniform15(), shot_budget_from_time(0.5, 1.0), 1), std::invalid_argument);
  EXPECT_THROW(shot_budget_from_time(-1.0, 1.0), std::invalid_argument);
}
