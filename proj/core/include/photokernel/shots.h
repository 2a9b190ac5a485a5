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

#ifndef PHOTOKERNEL_SHOTS_H_
#define PHOTOKERNEL_SHOTS_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "photokernel/fock.h"

namespace photokernel {

/// Post-selected coincidence counts for one unitary. Bunched events are
/// drawn and then dropped, so sum(counts) <= total_shots.
struct CoincidenceRecord {
  struct Count {
    FockState pattern;
    std::uint64_t count;
  };

  std::vector<Count> counts;  // every collision-free pattern, in enumeration order
  std::uint64_t total_shots = 0;
  std::pair<int, int> unitary_id{-1, -1};
  std::uint64_t seed = 0;

  std::uint64_t postselected() const;
  std::uint64_t count(const FockState& pattern) const;
  /// counts / postselected(), as a distribution over the collision-free patterns.
  OutputDistribution frequencies() const;
};

/// Draws `shots` outcomes from the full distribution (multinomial, by
/// sequential conditional binomials) and keeps the collision-free ones.
/// Deterministic in `seed`. Throws std::invalid_argument when shots == 0.
CoincidenceRecord sample_counts(const OutputDistribution& distribution, std::uint64_t shots, std::uint64_t seed);

/// counts[psi] / sum of post-selected counts. Throws std::domain_error when
/// nothing survived post-selection.
double estimate_kernel_entry(const CoincidenceRecord& record, const FockState& psi);

/// sum_i sqrt(p_i q_i) over the union of outcomes. Both inputs must sum to
/// 1 within 1e-6.
double distribution_fidelity(const OutputDistribution& theory, const OutputDistribution& measured);

/// floor(rate_hz * seconds). Throws std::invalid_argument on non-positive input.
std::uint64_t shot_budget_from_time(double rate_hz, double seconds);

inline constexpr double kDefaultCoincidenceRateHz = 10'000.0;
inline constexpr double kDefaultIntegrationSeconds = 5.0;

}  // namespace photokernel

#endif  // PHOTOKERNEL_SHOTS_H_
