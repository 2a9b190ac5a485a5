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

#include "photokernel/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace photokernel {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double json_number(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();  // nlohmann writes inf as null
  return j.get<double>();
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string dataset_to_json(const TaskFile& task) {
  const Dataset& d = task.dataset;
  json points = json::array();
  for (Eigen::Index i = 0; i < d.points.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < d.points.cols(); ++j) row.push_back(d.points(i, j));
    points.push_back(std::move(row));
  }
  json j;
  j["seed"] = d.seed;
  j["m"] = task.mesh.modes();
  j["k"] = task.mesh.columns();
  j["psi"] = std::vector<int>(task.psi.occupations().begin(), task.psi.occupations().end());
  j["lambda"] = task.lambda;
  j["points"] = std::move(points);
  j["labels"] = d.labels;
  return j.dump(2) + "\n";
}

TaskFile dataset_from_json(const std::string& text) {
  const json j = json::parse(text);
  for (const char* key : {"seed", "m", "k", "psi", "lambda", "points", "labels"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("dataset JSON: missing key '") + key + "'");
  }
  TaskFile t;
  t.mesh = MeshConfig(j.at("m").get<int>(), j.at("k").get<int>());
  t.psi = FockState(j.at("psi").get<std::vector<int>>());
  t.lambda = j.at("lambda").get<double>();
  t.dataset.seed = j.at("seed").get<std::uint64_t>();
  const auto& pts = j.at("points");
  const auto n = static_cast<Eigen::Index>(pts.size());
  const auto d = n > 0 ? static_cast<Eigen::Index>(pts.at(0).size()) : 0;
  t.dataset.points.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = pts.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != d) throw std::invalid_argument("dataset JSON: ragged points");
    for (Eigen::Index c = 0; c < d; ++c) t.dataset.points(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  t.dataset.labels = j.at("labels").get<std::vector<int>>();
  t.dataset.validate();
  return t;
}

void write_dataset(const std::filesystem::path& path, const TaskFile& task) { write_text(path, dataset_to_json(task)); }

TaskFile read_dataset(const std::filesystem::path& path) { return dataset_from_json(read_text(path)); }

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
                      const std::map<std::string, std::string>& metadata) {
  std::ostringstream os;
  os << '#';
  for (const auto& [k, v] : metadata) {
    if (k.find_first_of(" =\n") != std::string::npos || v.find_first_of(" \n") != std::string::npos) {
      throw std::invalid_argument("write_matrix_csv: metadata may not contain spaces, '=' in keys or newlines");
    }
    os << ' ' << k << '=' << v;
  }
  os << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) os << (j ? "," : "") << format_double(values(i, j));
    os << '\n';
  }
  write_text(path, os.str());
}

CsvMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  CsvMatrix out;
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("matrix CSV: bad metadata token '" + token + "'");
        out.metadata[token.substr(0, eq)] = token.substr(eq + 1);
      }
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) throw std::invalid_argument("matrix CSV: ragged rows");
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n > 0 ? static_cast<Eigen::Index>(rows.front().size()) : 0;
  out.values.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return out;
}

std::map<std::string, std::string> gram_metadata(const GramMatrix& gram) {
  return {
      {"kind", std::string(to_string(gram.kind))},
      {"provenance", gram.provenance.sampled ? "sampled" : "exact"},
      {"shots", std::to_string(gram.provenance.shots)},
      {"seed", std::to_string(gram.provenance.seed)},
  };
}

std::string model_to_json(const SvmModel& model) {
  json j;
  j["alphas"] = std::vector<double>(model.alphas.data(), model.alphas.data() + model.alphas.size());
  j["bias"] = model.bias;
  j["labels"] = model.train_labels;
  j["indices"] = model.train_indices;
  if (std::isinf(model.c)) {
    j["C"] = nullptr;
  } else {
    j["C"] = model.c;
  }
  j["dual_objective"] = model.dual_objective;
  j["kkt_residual"] = model.kkt_residual;
  j["iterations"] = model.iterations;
  return j.dump(2) + "\n";
}

SvmModel model_from_json(const std::string& text) {
  const json j = json::parse(text);
  SvmModel m;
  const auto alphas = j.at("alphas").get<std::vector<double>>();
  m.alphas = Eigen::Map<const Eigen::VectorXd>(alphas.data(), static_cast<Eigen::Index>(alphas.size()));
  m.bias = j.at("bias").get<double>();
  m.train_labels = j.at("labels").get<std::vector<int>>();
  m.train_indices = j.at("indices").get<std::vector<std::size_t>>();
  m.c = json_number(j.at("C"));
  if (j.contains("dual_objective")) m.dual_objective = j.at("dual_objective").get<double>();
  if (j.contains("kkt_residual")) m.kkt_residual = j.at("kkt_residual").get<double>();
  if (j.contains("iterations")) m.iterations = j.at("iterations").get<std::uint64_t>();
  if (m.train_labels.size() != static_cast<std::size_t>(m.alphas.size())) {
    throw std::invalid_argument("model JSON: alphas and labels differ in length");
  }
  return m;
}

std::string records_to_json(const std::vector<CoincidenceRecord>& records) {
  json arr = json::array();
  for (const CoincidenceRecord& r : records) {
    json counts = json::object();
    for (const auto& c : r.counts) counts[c.pattern.to_string()] = c.count;
    json j;
    j["pair"] = {r.unitary_id.first, r.unitary_id.second};
    j["seed"] = r.seed;
    j["total_shots"] = r.total_shots;
    j["postselected"] = r.postselected();
    j["counts"] = std::move(counts);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace photokernel
