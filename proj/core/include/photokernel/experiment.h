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

#ifndef PHOTOKERNEL_EXPERIMENT_H_
#define PHOTOKERNEL_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "photokernel/kernels.h"
#include "photokernel/svm.h"
#include "photokernel/taskgen.h"

namespace photokernel {

/// One entry of the kernel list of an experiment. Classical kernels with a
/// hyperparameter grid (gaussian, polynomial) are tuned by 3-fold
/// cross-validation on the training split when `tune` is set.
struct KernelChoice {
  KernelSpec spec;
  bool tune = true;

  /// "quantum", "coherent", "unbunching", "mixed:0.25", "gaussian",
  /// "gaussian:0.1", "polynomial", "polynomial:1,1,2", "linear", "ntk".
  /// A bare gaussian/polynomial name enables tuning.
  static KernelChoice parse(const std::string& text);
  std::string label() const;
};

struct ExperimentConfig {
  MeshConfig mesh{6};
  FockState psi{0, 0, 1, 1, 0, 0};
  std::vector<int> sizes{40, 60, 80, 100};
  int repeats = 5;
  double lambda = kDefaultRegularization;
  LabelRule label_rule = LabelRule::kProjectedEigenvector;
  std::vector<KernelChoice> kernels;  // empty selects quantum + coherent + the four classical baselines
  Engine engine = Engine::exact();    // sampled: shots per pair; seed is derived from `seed`
  double split_ratio = 2.0 / 3.0;
  double svm_c = kDefaultBoxConstraint;
  bool tune_c = false;  // grid {1, 10, 100} by 3-fold cross-validation
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;  // empty: no files written

  void validate() const;
  std::vector<KernelChoice> effective_kernels() const;
};

/// Key-value text format: one `key = value` per line, `#` comments.
/// Keys: modes, columns, psi, sizes, repeats, lambda, label_rule, kernels,
/// engine, shots, split_ratio, svm_c, tune_c, seed, output_dir. Lists are
/// comma separated except kernels, which is whitespace separated.
ExperimentConfig parse_experiment_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path, ExperimentConfig base = {});

struct ResultRecord {
  int size = 0;
  int repeat = 0;
  std::string kernel;  // KernelChoice::label()
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double g_cq = 0.0;
  double complexity_quantum = 0.0;   // s_{K_Q}(y) with lambda
  double complexity_coherent = 0.0;  // s_{K_C}(y) with lambda
  double min_eigenvalue = 0.0;       // of the full Gram used for this kernel
  std::map<std::string, double> hyperparameters;
  std::optional<double> fidelity_mean;  // sampled photonic kernels only
  std::optional<double> fidelity_std;
  std::uint64_t task_seed = 0;
  int redraws = 0;
  int positive_labels = 0;
  double dual_objective = 0.0;
  double wall_seconds = 0.0;  // not serialized into results.json
};

/// For every (size, repeat): generate a task, split it, evaluate every
/// kernel. Writes results.json, accuracy.csv and timing.csv when
/// output_dir is set. Errors are rethrown with (size, repeat, kernel).
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

/// Mean and standard deviation of test accuracy per (size, kernel).
struct AccuracySummary {
  int size = 0;
  std::string kernel;
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};
std::vector<AccuracySummary> summarize(const std::vector<ResultRecord>& records);
double mean_test_accuracy(const std::vector<ResultRecord>& records, const std::string& kernel, int size = -1);

enum class InputPlacement { kLeft, kCenter };

/// Two photons in modes (0, 1) for kLeft, (m/2 - 1, m/2) for kCenter.
FockState two_photon_input(int modes, InputPlacement placement);

struct WidthScanRow {
  int width = 0;
  int size = 0;
  std::string kernel;
  double mean_accuracy = 0.0;
  double stddev = 0.0;
  int repeats = 0;
};

/// Square meshes m = k for every width; quantum and coherent kernels.
std::vector<WidthScanRow> run_width_scan(const std::vector<int>& widths, const ExperimentConfig& base,
                                         InputPlacement placement);

struct SweepRow {
  double r = 0.0;
  int size = 0;
  double mean_accuracy = 0.0;
  double stddev = 0.0;
  std::vector<double> accuracies;  // one per repeat
};

/// Test accuracy of the partially distinguishable kernel for each r on the
/// tasks generated by the quantum/coherent separation.
std::vector<SweepRow> run_distinguishability_sweep(const std::vector<double>& r_values, const ExperimentConfig& base);

struct UnbunchingRow {
  int size = 0;
  int repeat = 0;
  double quantum_accuracy = 0.0;
  double unbunching_accuracy = 0.0;
  double coherent_accuracy = 0.0;
  double unbunching_min_eigenvalue = 0.0;
  bool unbunching_indefinite = false;
  double max_entry_gap = 0.0;  // max |K_U - K_Q| over the Gram
};

std::vector<UnbunchingRow> run_unbunching_check(const ExperimentConfig& base);

/// Tidy CSV renderings of the tables above (header line first).
std::string to_csv(const std::vector<WidthScanRow>& rows);
std::string to_csv(const std::vector<SweepRow>& rows);
std::string to_csv(const std::vector<UnbunchingRow>& rows);

struct GramFiles {
  std::filesystem::path train_csv;
  std::filesystem::path cross_csv;
  std::filesystem::path metadata_json;
};

/// Writes <stem>_train.csv (train x train), <stem>_cross.csv (test x train)
/// and <stem>_meta.json into `dir`.
GramFiles emit_gram(const Dataset& dataset, const KernelSpec& spec, const Engine& engine, const PhotonicSetup& setup,
                    double split_ratio, std::uint64_t split_seed, const std::filesystem::path& dir,
                    const std::string& stem = "gram");

}  // namespace photokernel

#endif  // PHOTOKERNEL_EXPERIMENT_H_
