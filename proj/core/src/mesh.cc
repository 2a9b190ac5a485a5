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

#include "photokernel/mesh.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace photokernel {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

MeshConfig::MeshConfig(int modes, int columns) : modes_(modes), columns_(columns) {
  if (modes < 2) throw std::invalid_argument("MeshConfig: modes must be >= 2, got " + std::to_string(modes));
  if (columns < 1) throw std::invalid_argument("MeshConfig: columns must be >= 1, got " + std::to_string(columns));
}

int MeshConfig::mzis_in_column(int column) const {
  return column % 2 == 0 ? modes_ / 2 : (modes_ - 1) / 2;
}

int MeshConfig::mzi_count() const {
  int total = 0;
  for (int c = 0; c < columns_; ++c) total += mzis_in_column(c);
  return total;
}

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
  for (double p : phases_) {
    if (!(p >= 0.0 && p < kTwoPi)) {
      throw std::invalid_argument("PhaseVector: phase " + std::to_string(p) + " outside [0, 2pi)");
    }
  }
}

MeshUnitary::MeshUnitary(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("MeshUnitary: matrix must be square");
}

double MeshUnitary::max_unitarity_error() const {
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
  return (gram - id).cwiseAbs().maxCoeff();
}

PhaseVector encode_phases(const MeshConfig& cfg, std::span<const double> x) {
  const auto d = static_cast<std::size_t>(cfg.data_dimension());
  if (x.size() != d) {
    throw std::invalid_argument("encode_phases: expected data dimension " + std::to_string(d) + ", got " +
                                std::to_string(x.size()));
  }
  std::vector<double> phases(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!(x[j] >= 0.0 && x[j] <= 1.0)) {
      throw std::invalid_argument("encode_phases: component " + std::to_string(j) + " = " + std::to_string(x[j]) +
                                  " outside [0, 1]");
    }
    double theta = kTwoPi * x[j];
    if (theta >= kTwoPi) theta -= kTwoPi;
    phases[j] = theta;
  }
  return PhaseVector(std::move(phases));
}

Eigen::Matrix2cd mzi_transfer(double theta, double phi) {
  using namespace std::complex_literals;
  const std::complex<double> global = 1i * std::exp(1i * (theta / 2.0));
  const std::complex<double> ext = std::exp(1i * phi);
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  Eigen::Matrix2cd t;
  t << ext * s, c,
       ext * c, -s;
  return global * t;
}

MeshUnitary build_unitary(const MeshConfig& cfg, const PhaseVector& phases) {
  if (phases.size() != static_cast<std::size_t>(cfg.data_dimension())) {
    throw std::invalid_argument("build_unitary: expected " + std::to_string(cfg.data_dimension()) + " phases, got " +
                                std::to_string(phases.size()));
  }
  const int m = cfg.modes();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  std::size_t next = 0;
  for (int c = 0; c < cfg.columns(); ++c) {
    // Left-multiplying by a block-diagonal column only mixes rows (a, a+1).
    for (int a = c % 2; a + 1 < m; a += 2) {
      const Eigen::Matrix2cd t = mzi_transfer(phases[next], phases[next + 1]);
      next += 2;
      const Eigen::MatrixXcd rows = u.middleRows(a, 2);
      u.middleRows(a, 2) = t * rows;
    }
  }
  return MeshUnitary(std::move(u));
}

MeshUnitary encode_unitary(const MeshConfig& cfg, std::span<const double> x) {
  return build_unitary(cfg, encode_phases(cfg, x));
}

MeshUnitary product_unitary(const MeshConfig& cfg, std::span<const double> x_i, std::span<const double> x_j) {
  return product_unitary(encode_unitary(cfg, x_i), encode_unitary(cfg, x_j));
}

MeshUnitary product_unitary(const MeshUnitary& u_i, const MeshUnitary& u_j) {
  if (u_i.modes() != u_j.modes()) throw std::invalid_argument("product_unitary: mode count mismatch");
  return MeshUnitary(u_i.matrix().adjoint() * u_j.matrix());
}

}  // namespace photokernel
