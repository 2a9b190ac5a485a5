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

#include "photokernel/fock.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.h"
#include "photokernel/mesh.h"

using namespace photokernel;
using photokernel::testing::haar_unitary;
using photokernel::testing::naive_permanent;
using photokernel::testing::random_complex;
using photokernel::testing::two_photon_probability;

namespace {

MeshUnitary beam_splitter() {
  Eigen::MatrixXcd bs(2, 2);
  bs << 1, 1, 1, -1;
  return MeshUnitary(bs / std::sqrt(2.0));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(fock, state_basics) {
  FockState s{0, 2, 1};
  EXPECT_EQ(s.modes(), 3);
  EXPECT_EQ(s.photons(), 3);
  EXPECT_EQ(s.norm_factor(), 2.0);
  EXPECT_FALSE(s.collision_free());
  EXPECT_EQ(s.mode_list(), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(s.to_string(), "(0,2,1)");
  EXPECT_THROW(FockState({0, -1}), std::invalid_argument);
  EXPECT_THROW(FockState({0, 0}), std::invalid_argument);
  EXPECT_THROW(Indistinguishability(1.5), std::invalid_argument);
}

TEST(fock, enumeration_counts) {
  EXPECT_EQ(enumerate_configurations(6, 2).size(), 21u);
  EXPECT_EQ(enumerate_configurations(6, 2, true).size(), 15u);
  const auto single = enumerate_configurations(1, 3);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], FockState({3}));
  EXPECT_TRUE(enumerate_configurations(2, 3, true).empty());
}

TEST(fock, enumeration_matches_binomials) {
  for (int m = 1; m <= 7; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const auto all = enumerate_configurations(m, n);
      EXPECT_EQ(static_cast<double>(all.size()), binomial(n + m - 1, n)) << m << "," << n;
      EXPECT_EQ(static_cast<double>(enumerate_configurations(m, n, true).size()), n <= m ? binomial(m, n) : 0.0);
      for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i].photons(), n);
        if (i) EXPECT_GT(all[i - 1], all[i]) << "descending lexicographic order";
      }
    }
  }
  EXPECT_EQ(enumerate_configurations(6, 2).front(), FockState({2, 0, 0, 0, 0, 0}));
  EXPECT_EQ(enumerate_configurations(6, 2).back(), FockState({0, 0, 0, 0, 0, 2}));
}

TEST(fock, permanent_small_cases) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  EXPECT_EQ(permanent(a), 10.0);
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 4);
  EXPECT_NEAR(permanent(ones), 24.0, 1e-12);
  EXPECT_NEAR(std::abs(permanent(beam_splitter().matrix())), 0.0, 1e-15);
  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = {0.5, -2.0};
  EXPECT_EQ(permanent(one), one(0, 0));
  EXPECT_THROW(permanent(Eigen::MatrixXcd(2, 3)), std::invalid_argument);
}

TEST(fock, permanent_matches_naive_expansion) {
  for (int q = 1; q <= 7; ++q) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Eigen::MatrixXcd a = random_complex(q, q, 1000 * q + s);
      const std::complex<double> ref = naive_permanent(a);
      EXPECT_LE(std::abs(permanent(a) - ref), 1e-12 * std::max(1.0, std::abs(ref))) << "q=" << q;
    }
  }
}

TEST(fock, permanent_invariances) {
  const Eigen::MatrixXcd a = random_complex(5, 5, 77);
  const std::complex<double> p = permanent(a);
  EXPECT_LE(std::abs(permanent(Eigen::MatrixXcd(a.transpose())) - p), 1e-12 * std::abs(p));
  Eigen::MatrixXcd swapped = a;
  swapped.row(0).swap(swapped.row(3));
  swapped.col(1).swap(swapped.col(4));
  EXPECT_LE(std::abs(permanent(swapped) - p), 1e-12 * std::abs(p));
  Eigen::MatrixXcd scaled = a;
  scaled.row(2) *= std::complex<double>(0.0, 2.0);
  EXPECT_LE(std::abs(permanent(scaled) - std::complex<double>(0.0, 2.0) * p), 1e-12 * std::abs(p));
}

TEST(fock, submatrix_convention) {
  MeshUnitary id(Eigen::MatrixXcd::Identity(6, 6));
  FockState s{1, 1, 0, 0, 0, 0};
  EXPECT_TRUE(submatrix(id, s, s).isApprox(Eigen::MatrixXcd::Identity(2, 2)));

  MeshUnitary u(haar_unitary(2, 5));
  const Eigen::MatrixXcd sub = submatrix(u, FockState{2, 0}, FockState{1, 1});
  EXPECT_EQ(sub(0, 0), u(0, 0));
  EXPECT_EQ(sub(0, 1), u(0, 0));
  EXPECT_EQ(sub(1, 0), u(1, 0));
  EXPECT_EQ(sub(1, 1), u(1, 0));

  MeshUnitary w(haar_unitary(6, 9));
  FockState in{0, 1, 0, 0, 1, 0};
  FockState out{0, 0, 2, 0, 0, 0};
  const Eigen::MatrixXcd sw = submatrix(w, in, out);
  const int cols[] = {1, 4};
  const int rows[] = {2, 2};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) EXPECT_EQ(sw(r, c), w(rows[r], cols[c]));
  }
  EXPECT_THROW(submatrix(w, in, FockState{0, 0, 3, 0, 0, 0}), std::invalid_argument);
}

TEST(fock, hong_ou_mandel) {
  const MeshUnitary bs = beam_splitter();
  const FockState in{1, 1};
  EXPECT_NEAR(transition_probability(bs, in, FockState{1, 1}), 0.0, 1e-12);
  EXPECT_NEAR(transition_probability(bs, in, FockState{2, 0}), 0.5, 1e-12);
  EXPECT_NEAR(transition_probability(bs, in, FockState{0, 2}), 0.5, 1e-12);
  const auto classical = Indistinguishability::coherent();
  EXPECT_NEAR(transition_probability(bs, in, FockState{1, 1}, classical), 0.5, 1e-12);
  EXPECT_NEAR(transition_probability(bs, in, FockState{2, 0}, classical), 0.25, 1e-12);
  EXPECT_NEAR(transition_probability(bs, in, FockState{0, 2}, classical), 0.25, 1e-12);

  const OutputDistribution d = full_distribution(bs, in);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d.probability(FockState{2, 0}), 0.5, 1e-12);
  EXPECT_NEAR(d.probability(FockState{0, 2}), 0.5, 1e-12);
  EXPECT_NEAR(d.probability(FockState{1, 1}), 0.0, 1e-12);
  EXPECT_NEAR(d.collision_free_mass(), 0.0, 1e-12);
  EXPECT_THROW(d.postselect_collision_free(), std::domain_error);
}

TEST(fock, hom_visibility_is_linear_in_r) {
  const MeshUnitary bs = beam_splitter();
  for (double r : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(transition_probability(bs, FockState{1, 1}, FockState{1, 1}, Indistinguishability(r)),
                0.5 * (1.0 - r), 1e-14);
  }
}

TEST(fock, identity_evolution) {
  MeshUnitary id(Eigen::MatrixXcd::Identity(6, 6));
  for (const FockState& s : enumerate_configurations(6, 2)) {
    for (const FockState& t : enumerate_configurations(6, 2)) {
      EXPECT_EQ(transition_probability(id, s, t), s == t ? 1.0 : 0.0);
    }
  }
  const OutputDistribution d = full_distribution(id, FockState{0, 0, 1, 1, 0, 0});
  EXPECT_EQ(d.probability(FockState{0, 0, 1, 1, 0, 0}), 1.0);
  EXPECT_EQ(d.total(), 1.0);
}

TEST(fock, two_photon_distribution_matches_symmetrization) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MeshUnitary u(haar_unitary(6, seed));
    for (const FockState& in : {FockState{0, 0, 1, 1, 0, 0}, FockState{1, 0, 0, 0, 0, 1}, FockState{0, 2, 0, 0, 0, 0}}) {
      for (double r : {1.0, 0.0}) {
        const OutputDistribution d = full_distribution(u, in, Indistinguishability(r));
        EXPECT_NEAR(d.total(), 1.0, 1e-10);
        for (const auto& e : d.entries()) {
          EXPECT_NEAR(e.probability, two_photon_probability(u.matrix(), in, e.state, r == 1.0), 1e-10);
        }
      }
    }
  }
}

TEST(fock, mixed_statistics_are_convex_combinations) {
  MeshUnitary u(haar_unitary(6, 42));
  FockState in{0, 0, 1, 1, 0, 0};
  const OutputDistribution q = full_distribution(u, in, Indistinguishability::quantum());
  const OutputDistribution c = full_distribution(u, in, Indistinguishability::coherent());
  for (double r : {0.25, 0.5, 0.8}) {
    const OutputDistribution mix = full_distribution(u, in, Indistinguishability(r));
    EXPECT_EQ(mix.kind(), StatisticsKind::kMixed);
    EXPECT_NEAR(mix.total(), 1.0, 1e-12);
    for (std::size_t i = 0; i < mix.size(); ++i) {
      const double expected = r * q.entries()[i].probability + (1 - r) * c.entries()[i].probability;
      EXPECT_NEAR(mix.entries()[i].probability, expected, 1e-12);
    }
  }
}

TEST(fock, distributions_normalize_for_more_photons) {
  MeshUnitary u(haar_unitary(5, 8));
  for (const FockState& in : {FockState{1, 1, 1, 0, 0}, FockState{2, 0, 1, 0, 1}}) {
    for (double r : {0.0, 0.3, 1.0}) {
      const OutputDistribution d = full_distribution(u, in, Indistinguishability(r));
      EXPECT_NEAR(d.total(), 1.0, 1e-10);
      for (const auto& e : d.entries()) {
        EXPECT_GE(e.probability, 0.0);
        EXPECT_LE(e.probability, 1.0);
      }
    }
  }
}

TEST(fock, postselection) {
  MeshUnitary u(haar_unitary(6, 3));
  const OutputDistribution d = full_distribution(u, FockState{0, 0, 1, 1, 0, 0});
  const OutputDistribution ps = d.postselect_collision_free();
  EXPECT_EQ(ps.size(), 15u);
  EXPECT_NEAR(ps.total(), 1.0, 1e-12);
  for (const auto& e : ps.entries()) EXPECT_NEAR(e.probability, d.probability(e.state) / d.collision_free_mass(), 1e-15);
}

TEST(fock, clip_probability) {
  EXPECT_EQ(clip_probability(-1e-13), 0.0);
  EXPECT_EQ(clip_probability(1.0 + 1e-13), 1.0);
  EXPECT_EQ(clip_probability(0.3), 0.3);
  EXPECT_THROW(clip_probability(-1e-9), std::domain_error);
  EXPECT_THROW(clip_probability(1.1), std::domain_error);
}
