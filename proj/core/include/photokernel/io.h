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

#ifndef PHOTOKERNEL_IO_H_
#define PHOTOKERNEL_IO_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "photokernel/shots.h"
#include "photokernel/svm.h"
#include "photokernel/taskgen.h"

namespace photokernel {

/// Dataset file:
///   {"seed": int, "m": int, "k": int, "psi": [int x m], "lambda": float,
///    "points": [[float x d] x N], "labels": [int x N]}
/// Keys are written sorted; "labels" is [] for unlabeled data.
struct TaskFile {
  Dataset dataset;
  MeshConfig mesh{6};
  FockState psi{0, 0, 1, 1, 0, 0};
  double lambda = kDefaultRegularization;
};

std::string dataset_to_json(const TaskFile& task);
TaskFile dataset_from_json(const std::string& text);
void write_dataset(const std::filesystem::path& path, const TaskFile& task);
TaskFile read_dataset(const std::filesystem::path& path);

/// Gram CSV: a `# key=value key=value ...` metadata line, then one row per
/// line with comma-separated values printed with 17 significant digits.
struct CsvMatrix {
  Eigen::MatrixXd values;
  std::map<std::string, std::string> metadata;
};

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
                      const std::map<std::string, std::string>& metadata);
CsvMatrix read_matrix_csv(const std::filesystem::path& path);

/// Metadata for a Gram: kind, provenance (exact|sampled), shots, seed.
std::map<std::string, std::string> gram_metadata(const GramMatrix& gram);

std::string model_to_json(const SvmModel& model);
SvmModel model_from_json(const std::string& text);

std::string records_to_json(const std::vector<CoincidenceRecord>& records);

std::string read_text(const std::filesystem::path& path);
/// Creates parent directories. Throws std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace photokernel

#endif  // PHOTOKERNEL_IO_H_
