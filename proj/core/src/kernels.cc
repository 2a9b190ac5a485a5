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

#include "photokernel/kernels.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "photokernel/random.h"

namespace photokernel {

namespace {

constexpr std::array<std::pair<KernelKind, std::string_view>, 8> kKindNames{{
    {KernelKind::kQuantum, "quantum"},
    {KernelKind::kCoherent, "coherent"},
    {KernelKind::kMixed, "mixed"},
    {KernelKind::kUnbunching, "unbunching"},
    {KernelKind::kGaussian, "gaussian"},
    {KernelKind::kPolynomial, "polynomial"},
    {KernelKind::kLinear, "linear"},
    {KernelKind::kNtk, "ntk"},
}};

void check_same_size(std::span<const double> a, std::span<const double> b, const char* who) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

const PhotonicSetup& require_setup(const PhotonicSetup* setup, const char* who) {
  if (setup == nullptr) throw std::invalid_argument(std::string(who) + ": photonic kernels need a PhotonicSetup");
  if (setup->psi.modes() != setup->mesh.modes()) {
    throw std::invalid_argument(std::string(who) + ": psi has " + std::to_string(setup->psi.modes()) +
                                " modes, mesh has " + std::to_string(setup->mesh.modes()));
  }
  if (!setup->psi.collision_free()) {
    throw std::invalid_argument(std::string(who) + ": psi " + setup->psi.to_string() +
                                " has multiply occupied modes; only collision-free inputs are supported");
  }
  return *setup;
}

std::vector<MeshUnitary> encode_all(const PointMatrix& points, const MeshConfig& mesh) {
  std::vector<MeshUnitary> us;
  us.reserve(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) us.push_back(encode_unitary(mesh, row_span(points, i)));
  return us;
}

// Exact photonic entry from two cached mesh unitaries.
double photonic_entry(const KernelSpec& spec, const MeshUnitary& u_i, const MeshUnitary& u_j,
                      const FockState& psi) {
  if (spec.kind == KernelKind::kUnbunching) {
    const MeshUnitary v = product_unitary(u_i, u_j);
    return unbunching_kernel_entry(full_distribution(v, psi, Indistinguishability::quantum()), psi);
  }
  return photonic_kernel_entry(u_i, u_j, psi, spec.statistics());
}

double classical_entry(const KernelSpec& spec, std::span<const double> x_i, std::span<const double> x_j) {
  switch (spec.kind) {
    case KernelKind::kGaussian:
      return gaussian_kernel(x_i, x_j, spec.gamma);
    case KernelKind::kPolynomial:
      return polynomial_kernel(x_i, x_j, spec.gamma, spec.offset, spec.degree);
    case KernelKind::kLinear:
      return linear_kernel(x_i, x_j);
    case KernelKind::kNtk:
      return ntk_kernel(x_i, x_j, spec.depth);
    default:
      throw std::logic_error("classical_entry: photonic kind");
  }
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown kernel kind '" + std::string(name) + "'");
}

bool is_photonic(KernelKind kind) {
  return kind == KernelKind::kQuantum || kind == KernelKind::kCoherent || kind == KernelKind::kMixed ||
         kind == KernelKind::kUnbunching;
}

KernelSpec KernelSpec::mixed(double r) {
  KernelSpec s{KernelKind::kMixed};
  s.indistinguishability = r;
  return s;
}

KernelSpec KernelSpec::gaussian(double gamma) {
  KernelSpec s{KernelKind::kGaussian};
  s.gamma = gamma;
  return s;
}

KernelSpec KernelSpec::polynomial(double gamma, double offset, int degree) {
  KernelSpec s{KernelKind::kPolynomial};
  s.gamma = gamma;
  s.offset = offset;
  s.degree = degree;
  return s;
}

KernelSpec KernelSpec::ntk(int depth) {
  KernelSpec s{KernelKind::kNtk};
  s.depth = depth;
  return s;
}

Indistinguishability KernelSpec::statistics() const {
  switch (kind) {
    case KernelKind::kCoherent:
      return Indistinguishability::coherent();
    case KernelKind::kMixed:
      return Indistinguishability(indistinguishability);
    default:
      return Indistinguishability::quantum();
  }
}

void KernelSpec::validate() const {
  if (kind == KernelKind::kGaussian && !(gamma > 0.0)) throw std::invalid_argument("gaussian kernel: gamma must be > 0");
  if (kind == KernelKind::kPolynomial && degree < 1) throw std::invalid_argument("polynomial kernel: degree must be >= 1");
  if (kind == KernelKind::kMixed) (void)Indistinguishability(indistinguishability);
  if (kind == KernelKind::kNtk && depth < 1) throw std::invalid_argument("ntk kernel: depth must be >= 1");
}

double photonic_kernel_entry(const MeshUnitary& u_i, const MeshUnitary& u_j, const FockState& psi,
                             Indistinguishability model) {
  if (!psi.collision_free()) {
    throw std::invalid_argument("photonic_kernel_entry: psi " + psi.to_string() +
                                " has multiply occupied modes; unsupported");
  }
  return transition_probability(product_unitary(u_i, u_j), psi, psi, model);
}

double photonic_kernel_entry(const PhotonicSetup& setup, std::span<const double> x_i, std::span<const double> x_j,
                             Indistinguishability model) {
  return photonic_kernel_entry(encode_unitary(setup.mesh, x_i), encode_unitary(setup.mesh, x_j), setup.psi, model);
}

double unbunching_kernel_entry(const OutputDistribution& distribution, const FockState& psi) {
  if (!psi.collision_free()) throw std::invalid_argument("unbunching_kernel_entry: psi must be collision-free");
  const double mass = distribution.collision_free_mass();
  if (!(mass > 0.0)) throw std::domain_error("unbunching_kernel_entry: collision-free probability mass is zero");
  return distribution.probability(psi) / mass;
}

double gaussian_kernel(std::span<const double> x_i, std::span<const double> x_j, double gamma) {
  check_same_size(x_i, x_j, "gaussian_kernel");
  if (!(gamma > 0.0)) throw std::invalid_argument("gaussian_kernel: gamma must be > 0");
  double d2 = 0.0;
  for (std::size_t k = 0; k < x_i.size(); ++k) d2 += (x_i[k] - x_j[k]) * (x_i[k] - x_j[k]);
  return std::exp(-gamma * d2);
}

double polynomial_kernel(std::span<const double> x_i, std::span<const double> x_j, double gamma, double offset,
                         int degree) {
  check_same_size(x_i, x_j, "polynomial_kernel");
  return std::pow(gamma * dot(x_i, x_j) + offset, degree);
}

double linear_kernel(std::span<const double> x_i, std::span<const double> x_j) {
  check_same_size(x_i, x_j, "linear_kernel");
  return dot(x_i, x_j);
}

double ntk_kernel(std::span<const double> x_i, std::span<const double> x_j, int depth) {
  check_same_size(x_i, x_j, "ntk_kernel");
  if (depth < 1) throw std::invalid_argument("ntk_kernel: depth must be >= 1");
  const double dim = static_cast<double>(x_i.size());
  double kxy = dot(x_i, x_j) / dim;
  double kxx = dot(x_i, x_i) / dim;
  double kyy = dot(x_j, x_j) / dim;
  if (!(kxx > 0.0) || !(kyy > 0.0)) throw std::invalid_argument("ntk_kernel: zero-norm input");

  // Arc-cosine recursion for ReLU: covariance and derivative covariance per
  // layer, accumulated into the tangent kernel.
  double theta_ntk = kxy;
  for (int layer = 0; layer < depth; ++layer) {
    const double norm = std::sqrt(kxx * kyy);
    const double cosine = std::clamp(kxy / norm, -1.0, 1.0);
    const double angle = std::acos(cosine);
    const double next = norm / (2.0 * std::numbers::pi) *
                        (std::sin(angle) + (std::numbers::pi - angle) * cosine);
    const double derivative = (std::numbers::pi - angle) / (2.0 * std::numbers::pi);
    theta_ntk = theta_ntk * derivative + next;
    kxy = next;
    kxx *= 0.5;
    kyy *= 0.5;
  }
  return theta_ntk;
}

double kernel_value(const KernelSpec& spec, std::span<const double> x_i, std::span<const double> x_j,
                    const PhotonicSetup* setup) {
  spec.validate();
  if (!is_photonic(spec.kind)) return classical_entry(spec, x_i, x_j);
  const PhotonicSetup& s = require_setup(setup, "kernel_value");
  return photonic_entry(spec, encode_unitary(s.mesh, x_i), encode_unitary(s.mesh, x_j), s.psi);
}

SampledGram sample_gram_matrix(const PointMatrix& points, const KernelSpec& spec, std::uint64_t shots,
                               std::uint64_t seed, const PhotonicSetup& setup) {
  spec.validate();
  if (!is_photonic(spec.kind)) throw std::invalid_argument("sample_gram_matrix: sampling applies to photonic kernels only");
  if (shots == 0) throw std::invalid_argument("sample_gram_matrix: shots must be > 0");
  require_setup(&setup, "sample_gram_matrix");
  const Eigen::Index n = points.rows();
  const std::vector<MeshUnitary> us = encode_all(points, setup.mesh);
  const Indistinguishability model = spec.statistics();

  SampledGram out;
  out.gram.kind = spec.kind;
  out.gram.provenance = Engine::sampling(shots, seed);
  out.gram.values = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const MeshUnitary v = product_unitary(us[i], us[j]);
      const OutputDistribution dist = full_distribution(v, setup.psi, model);
      const std::uint64_t pair_seed =
          derive_seed(seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
      CoincidenceRecord record = sample_counts(dist, shots, pair_seed);
      record.unitary_id = {static_cast<int>(i), static_cast<int>(j)};
      const double k = estimate_kernel_entry(record, setup.psi);
      out.gram.values(i, j) = k;
      out.gram.values(j, i) = k;
      out.fidelities.push_back(distribution_fidelity(dist.postselect_collision_free(), record.frequencies()));
      out.records.push_back(std::move(record));
    }
  }
  return out;
}

GramMatrix gram_matrix(const PointMatrix& points, const KernelSpec& spec, const Engine& engine,
                       const PhotonicSetup* setup) {
  spec.validate();
  const Eigen::Index n = points.rows();
  if (engine.sampled) {
    if (!is_photonic(spec.kind)) throw std::invalid_argument("gram_matrix: sampled engine needs a photonic kernel");
    if (engine.shots == 0) throw std::invalid_argument("gram_matrix: sampled engine requires shots > 0");
    return sample_gram_matrix(points, spec, engine.shots, engine.seed, require_setup(setup, "gram_matrix")).gram;
  }

  GramMatrix g;
  g.kind = spec.kind;
  g.provenance = engine;
  g.values.resize(n, n);
  if (is_photonic(spec.kind)) {
    const PhotonicSetup& s = require_setup(setup, "gram_matrix");
    if (points.cols() != s.mesh.data_dimension()) {
      throw std::invalid_argument("gram_matrix: points have dimension " + std::to_string(points.cols()) +
                                  ", mesh expects " + std::to_string(s.mesh.data_dimension()));
    }
    const std::vector<MeshUnitary> us = encode_all(points, s.mesh);
    for (Eigen::Index i = 0; i < n; ++i) {
      g.values(i, i) = 1.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double k = photonic_entry(spec, us[i], us[j], s.psi);
        g.values(i, j) = k;
        g.values(j, i) = k;
      }
    }
    return g;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double k = classical_entry(spec, row_span(points, i), row_span(points, j));
      g.values(i, j) = k;
      g.values(j, i) = k;
    }
  }
  return g;
}

Eigen::MatrixXd cross_gram(const PointMatrix& a, const PointMatrix& b, const KernelSpec& spec,
                           const PhotonicSetup* setup) {
  spec.validate();
  if (a.cols() != b.cols()) throw std::invalid_argument("cross_gram: dimension mismatch");
  Eigen::MatrixXd k(a.rows(), b.rows());
  if (is_photonic(spec.kind)) {
    const PhotonicSetup& s = require_setup(setup, "cross_gram");
    const std::vector<MeshUnitary> ua = encode_all(a, s.mesh);
    const std::vector<MeshUnitary> ub = encode_all(b, s.mesh);
    for (Eigen::Index p = 0; p < a.rows(); ++p) {
      for (Eigen::Index q = 0; q < b.rows(); ++q) k(p, q) = photonic_entry(spec, ua[p], ub[q], s.psi);
    }
    return k;
  }
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < b.rows(); ++q) k(p, q) = classical_entry(spec, row_span(a, p), row_span(b, q));
  }
  return k;
}

double min_eigenvalue(const Eigen::MatrixXd& k) {
  const Eigen::MatrixXd sym = 0.5 * (k + k.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: eigen-decomposition failed");
  return es.eigenvalues().minCoeff();
}

double max_asymmetry(const Eigen::MatrixXd& k) {
  if (k.rows() != k.cols()) throw std::invalid_argument("max_asymmetry: matrix must be square");
  return (k - k.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace photokernel
