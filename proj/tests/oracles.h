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

// Independent reference computations used only by the tests. None of these
// go through the library's permanent, SMO or NTK code paths.

#ifndef PHOTOKERNEL_TESTS_ORACLES_H_
#define PHOTOKERNEL_TESTS_ORACLES_H_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "photokernel/fock.h"
#include "photokernel/kernels.h"

namespace photokernel::testing {

/// Sum over all q! permutations.
std::complex<double> naive_permanent(const Eigen::MatrixXcd& a);

/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
Eigen::MatrixXcd haar_unitary(int m, std::uint64_t seed);
Eigen::MatrixXcd random_complex(int rows, int cols, std::uint64_t seed);

/// Two-photon transition probability by explicit symmetrization of the two
/// photon-to-output assignments:
///   |U_{a p} U_{b q} + U_{a q} U_{b p}|^2 / (prod s! prod t!)
/// (quantum), or the sum of |U_ap U_bq|^2 over distinct photon-to-output
/// assignments (coherent).
double two_photon_probability(const Eigen::MatrixXcd& u, const FockState& s, const FockState& t, bool quantum);

/// U|psi> for a two-photon state, expanded in the normalized Fock basis of
/// enumerate_configurations(m, 2) by applying creation operators.
Eigen::VectorXcd evolve_two_photon_state(const Eigen::MatrixXcd& u, const FockState& psi);

/// Box-and-equality constrained SVM dual solved by bisection on the bias
/// with projected Gauss-Seidel inner solves. Requires a positive definite K.
struct QpSolution {
  Eigen::VectorXd alphas;
  double bias;
};
QpSolution qp_svm_oracle(const Eigen::MatrixXd& k, std::span<const int> y, double c);

/// Empirical NTK of one random finite-width ReLU network (NTK
/// parameterization, unit weight variance, no biases, two hidden layers)
/// for every pair of rows of `points`.
Eigen::MatrixXd empirical_ntk(const PointMatrix& points, int width, std::uint64_t seed);

}  // namespace photokernel::testing

#endif  // PHOTOKERNEL_TESTS_ORACLES_H_
