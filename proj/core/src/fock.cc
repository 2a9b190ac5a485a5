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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace photokernel {

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
  if (occ_.empty()) throw std::invalid_argument("FockState: needs at least one mode");
  for (int s : occ_) {
    if (s < 0) throw std::invalid_argument("FockState: negative occupation");
    photons_ += s;
  }
  if (photons_ < 1) throw std::invalid_argument("FockState: needs at least one photon");
}

double FockState::norm_factor() const {
  double f = 1.0;
  for (int s : occ_) f *= std::tgamma(s + 1.0);
  return f;
}

bool FockState::collision_free() const {
  return std::all_of(occ_.begin(), occ_.end(), [](int s) { return s <= 1; });
}

std::vector<int> FockState::mode_list() const {
  std::vector<int> modes;
  modes.reserve(static_cast<std::size_t>(photons_));
  for (int a = 0; a < static_cast<int>(occ_.size()); ++a) {
    for (int k = 0; k < occ_[a]; ++k) modes.push_back(a);
  }
  return modes;
}

std::string FockState::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < occ_.size(); ++i) os << (i ? "," : "") << occ_[i];
  os << ')';
  return os.str();
}

Indistinguishability::Indistinguishability(double r) : r_(r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("Indistinguishability: r must lie in [0, 1]");
}

namespace {

void enumerate_rec(int mode, int remaining, bool collision_free_only, std::vector<int>& current,
                   std::vector<FockState>& out) {
  const int m = static_cast<int>(current.size());
  if (mode == m - 1) {
    if (collision_free_only && remaining > 1) return;
    current[mode] = remaining;
    out.emplace_back(current);
    current[mode] = 0;
    return;
  }
  const int top = collision_free_only ? std::min(remaining, 1) : remaining;
  for (int k = top; k >= 0; --k) {
    current[mode] = k;
    enumerate_rec(mode + 1, remaining - k, collision_free_only, current, out);
  }
  current[mode] = 0;
}

template <typename Scalar>
Scalar ryser(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (n == 0) throw std::invalid_argument("permanent: matrix must be non-empty");
  if (n > 62) throw std::invalid_argument("permanent: matrix too large");
  if (n == 1) return a(0, 0);

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  Scalar total(0);
  std::uint64_t gray = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if (gray & (std::uint64_t{1} << j)) {
      row_sums += a.col(j);
    } else {
      row_sums -= a.col(j);
    }
    Scalar prod = row_sums.prod();
    if (std::popcount(gray) % 2 == 1) prod = -prod;
    total += prod;
  }
  return n % 2 == 1 ? -total : total;
}

}  // namespace

std::vector<FockState> enumerate_configurations(int modes, int photons, bool collision_free_only) {
  if (modes < 1) throw std::invalid_argument("enumerate_configurations: modes must be >= 1");
  if (photons < 1) throw std::invalid_argument("enumerate_configurations: photons must be >= 1");
  std::vector<FockState> out;
  if (collision_free_only && photons > modes) return out;
  std::vector<int> current(static_cast<std::size_t>(modes), 0);
  enumerate_rec(0, photons, collision_free_only, current, out);
  return out;
}

std::complex<double> permanent(const Eigen::MatrixXcd& a) { return ryser(a); }

double permanent(const Eigen::MatrixXd& a) { return ryser(a); }

Eigen::MatrixXcd submatrix(const MeshUnitary& u, const FockState& input, const FockState& output) {
  if (input.photons() != output.photons()) {
    throw std::invalid_argument("submatrix: photon number mismatch " + input.to_string() + " vs " +
                                output.to_string());
  }
  if (input.modes() != u.modes() || output.modes() != u.modes()) {
    throw std::invalid_argument("submatrix: state mode count does not match the unitary");
  }
  const std::vector<int> cols = input.mode_list();
  const std::vector<int> rows = output.mode_list();
  const int n = input.photons();
  Eigen::MatrixXcd sub(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) sub(r, c) = u(rows[r], cols[c]);
  }
  return sub;
}

double clip_probability(double p) {
  constexpr double kBand = 1e-12;
  if (p >= 0.0 && p <= 1.0) return p;
  if (p < 0.0 && p >= -kBand) return 0.0;
  if (p > 1.0 && p <= 1.0 + kBand) return 1.0;
  throw std::domain_error("probability " + std::to_string(p) + " outside [0, 1] beyond rounding");
}

double transition_probability(const MeshUnitary& u, const FockState& input, const FockState& output,
                              Indistinguishability model) {
  const Eigen::MatrixXcd sub = submatrix(u, input, output);
  const double norm = input.norm_factor() * output.norm_factor();
  const double r = model.r();
  auto quantum = [&] { return std::norm(permanent(sub)) / norm; };
  // Distinguishable photons in the same input mode are still distinct
  // particles, so only the output multiplicities are divided out.
  auto coherent = [&] {
    const Eigen::MatrixXd moduli = sub.cwiseAbs2();
    return permanent(moduli) / output.norm_factor();
  };
  if (r == 1.0) return clip_probability(quantum());
  if (r == 0.0) return clip_probability(coherent());
  return clip_probability(r * quantum() + (1.0 - r) * coherent());
}

OutputDistribution::OutputDistribution(std::vector<Entry> entries, StatisticsKind kind, double r)
    : entries_(std::move(entries)), kind_(kind), r_(r) {}

double OutputDistribution::probability(const FockState& state) const {
  for (const Entry& e : entries_) {
    if (e.state == state) return e.probability;
  }
  return 0.0;
}

double OutputDistribution::total() const {
  double s = 0.0;
  for (const Entry& e : entries_) s += e.probability;
  return s;
}

double OutputDistribution::collision_free_mass() const {
  double s = 0.0;
  for (const Entry& e : entries_) {
    if (e.state.collision_free()) s += e.probability;
  }
  return s;
}

OutputDistribution OutputDistribution::postselect_collision_free() const {
  const double mass = collision_free_mass();
  if (!(mass > 0.0)) throw std::domain_error("postselect_collision_free: no collision-free probability mass");
  std::vector<Entry> kept;
  for (const Entry& e : entries_) {
    if (e.state.collision_free()) kept.push_back({e.state, e.probability / mass});
  }
  return OutputDistribution(std::move(kept), kind_, r_);
}

OutputDistribution full_distribution(const MeshUnitary& u, const FockState& input, Indistinguishability model) {
  if (input.modes() != u.modes()) throw std::invalid_argument("full_distribution: input mode count mismatch");
  std::vector<OutputDistribution::Entry> entries;
  for (FockState& t : enumerate_configurations(u.modes(), input.photons())) {
    const double p = transition_probability(u, input, t, model);
    entries.push_back({std::move(t), p});
  }
  StatisticsKind kind = StatisticsKind::kMixed;
  if (model.r() == 1.0) kind = StatisticsKind::kQuantum;
  if (model.r() == 0.0) kind = StatisticsKind::kCoherent;
  return OutputDistribution(std::move(entries), kind, model.r());
}

}  // namespace photokernel
