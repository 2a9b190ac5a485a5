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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "photokernel/random.h"

namespace photokernel {

std::uint64_t CoincidenceRecord::postselected() const {
  std::uint64_t s = 0;
  for (const Count& c : counts) s += c.count;
  return s;
}

std::uint64_t CoincidenceRecord::count(const FockState& pattern) const {
  for (const Count& c : counts) {
    if (c.pattern == pattern) return c.count;
  }
  return 0;
}

OutputDistribution CoincidenceRecord::frequencies() const {
  const std::uint64_t kept = postselected();
  if (kept == 0) throw std::domain_error("CoincidenceRecord: no post-selected counts");
  std::vector<OutputDistribution::Entry> entries;
  entries.reserve(counts.size());
  for (const Count& c : counts) {
    entries.push_back({c.pattern, static_cast<double>(c.count) / static_cast<double>(kept)});
  }
  return OutputDistribution(std::move(entries), StatisticsKind::kEmpirical);
}

CoincidenceRecord sample_counts(const OutputDistribution& distribution, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_counts: shots must be > 0");
  Rng rng(seed);
  CoincidenceRecord record;
  record.total_shots = shots;
  record.seed = seed;

  const auto entries = distribution.entries();
  std::size_t last_positive = entries.size();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].probability > 0.0) last_positive = i;
  }
  if (last_positive == entries.size()) throw std::invalid_argument("sample_counts: distribution has no mass");

  std::uint64_t remaining = shots;
  double remaining_mass = distribution.total();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    std::uint64_t drawn = 0;
    if (remaining > 0 && e.probability > 0.0) {
      const double p = remaining_mass > 0.0 ? std::min(1.0, e.probability / remaining_mass) : 1.0;
      if (i == last_positive || p >= 1.0) {
        drawn = remaining;
      } else {
        std::binomial_distribution<std::uint64_t> binom(remaining, p);
        drawn = binom(rng.engine());
      }
    }
    remaining -= drawn;
    remaining_mass -= e.probability;
    if (e.state.collision_free()) record.counts.push_back({e.state, drawn});
  }
  return record;
}

double estimate_kernel_entry(const CoincidenceRecord& record, const FockState& psi) {
  const std::uint64_t kept = record.postselected();
  if (kept == 0) {
    throw std::domain_error("estimate_kernel_entry: zero post-selected counts out of " +
                            std::to_string(record.total_shots) + " shots; increase the shot budget");
  }
  return static_cast<double>(record.count(psi)) / static_cast<double>(kept);
}

double distribution_fidelity(const OutputDistribution& theory, const OutputDistribution& measured) {
  constexpr double kNormTolerance = 1e-6;
  if (std::abs(theory.total() - 1.0) > kNormTolerance || std::abs(measured.total() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("distribution_fidelity: inputs must be normalized");
  }
  // Outcomes missing from either side contribute zero.
  double f = 0.0;
  for (const auto& e : theory.entries()) {
    const double q = measured.probability(e.state);
    if (e.probability > 0.0 && q > 0.0) f += std::sqrt(e.probability * q);
  }
  return f;
}

std::uint64_t shot_budget_from_time(double rate_hz, double seconds) {
  if (!(rate_hz > 0.0) || !(seconds > 0.0)) {
    throw std::invalid_argument("shot_budget_from_time: rate and duration must be positive");
  }
  return static_cast<std::uint64_t>(std::floor(rate_hz * seconds));
}

}  // namespace photokernel
