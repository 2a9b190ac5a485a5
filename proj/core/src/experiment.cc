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

#include "photokernel/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "photokernel/io.h"
#include "photokernel/random.h"

namespace photokernel {

using nlohmann::json;

namespace {

constexpr int kTuningFolds = 3;
constexpr std::uint64_t kMaxSplitRedraws = 100;
constexpr double kGammaGrid[] = {0.01, 0.1, 1.0, 10.0};
constexpr int kDegreeGrid[] = {2, 3};
constexpr double kOffsetGrid[] = {0.0, 1.0};
constexpr double kCGrid[] = {1.0, 10.0, 100.0};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + s + "'");
  }
}

std::vector<int> labels_at(std::span<const int> labels, std::span<const std::size_t> idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(labels[i]);
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Candidate kernel specs for a choice; a single entry when not tuned.
std::vector<KernelSpec> candidate_specs(const KernelChoice& choice) {
  const KernelSpec& base = choice.spec;
  if (!choice.tune) return {base};
  std::vector<KernelSpec> out;
  if (base.kind == KernelKind::kGaussian) {
    for (double g : kGammaGrid) out.push_back(KernelSpec::gaussian(g));
  } else if (base.kind == KernelKind::kPolynomial) {
    for (double g : kGammaGrid) {
      for (int d : kDegreeGrid) {
        for (double r : kOffsetGrid) out.push_back(KernelSpec::polynomial(g, r, d));
      }
    }
  } else {
    out.push_back(base);
  }
  return out;
}

std::map<std::string, double> hyperparameters_of(const KernelSpec& s, double c) {
  std::map<std::string, double> h{{"C", c}};
  switch (s.kind) {
    case KernelKind::kGaussian:
      h["gamma"] = s.gamma;
      break;
    case KernelKind::kPolynomial:
      h["gamma"] = s.gamma;
      h["offset"] = s.offset;
      h["degree"] = s.degree;
      break;
    case KernelKind::kMixed:
      h["r"] = s.indistinguishability;
      break;
    case KernelKind::kNtk:
      h["depth"] = s.depth;
      break;
    default:
      break;
  }
  return h;
}

struct CellOutput {
  std::vector<ResultRecord> records;
  std::vector<Eigen::MatrixXd> grams;  // full N x N Gram per kernel, same order as records
};

CellOutput evaluate_cell(const ExperimentConfig& config, const std::vector<KernelChoice>& kernels, int size,
                         int repeat) {
  const PhotonicSetup setup{config.mesh, config.psi};
  const auto key_size = static_cast<std::uint64_t>(size);
  const auto key_repeat = static_cast<std::uint64_t>(repeat);
  const std::uint64_t task_seed = derive_seed(config.seed, {key_size, key_repeat, 0});
  const std::uint64_t split_seed = derive_seed(config.seed, {key_size, key_repeat, 1});
  const std::uint64_t sampling_seed = derive_seed(config.seed, {key_size, key_repeat, 2, config.engine.seed});
  const std::uint64_t tuning_seed = derive_seed(config.seed, {key_size, key_repeat, 3});

  TaskOptions topt;
  topt.lambda = config.lambda;
  topt.rule = config.label_rule;
  const GeneratedTask task = generate_task(setup, size, task_seed, topt);
  const std::vector<int>& y = task.dataset.labels;
  // Small N can put a single class in the training split; reshuffle with
  // seeds derived from the original one, as for degenerate task draws.
  TrainTestSplit split;
  std::vector<int> y_train;
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt > kMaxSplitRedraws) throw std::runtime_error("every training split holds a single class");
    split = split_indices(static_cast<std::size_t>(size), config.split_ratio,
                          attempt == 0 ? split_seed : derive_seed(split_seed, {attempt}));
    y_train = labels_at(y, split.train);
    if (!std::all_of(y_train.begin(), y_train.end(), [&](int v) { return v == y_train.front(); })) break;
  }
  const std::vector<int> y_test = labels_at(y, split.test);

  const double s_q = model_complexity(task.k_quantum.values, y, config.lambda);
  const double s_c = model_complexity(task.k_coherent.values, y, config.lambda);
  const int positives = static_cast<int>(std::count(y.begin(), y.end(), 1));

  CellOutput out;
  for (const KernelChoice& choice : kernels) {
    const auto start = std::chrono::steady_clock::now();
    ResultRecord rec;
    rec.size = size;
    rec.repeat = repeat;
    rec.kernel = choice.label();
    rec.g_cq = task.separation.g;
    rec.complexity_quantum = s_q;
    rec.complexity_coherent = s_c;
    rec.task_seed = task.dataset.seed;
    rec.redraws = task.redraws;
    rec.positive_labels = positives;
    try {
      Eigen::MatrixXd gram;
      KernelSpec chosen = choice.spec;
      double c = config.svm_c;
      const KernelKind kind = choice.spec.kind;
      if (is_photonic(kind)) {
        if (config.engine.sampled) {
          const SampledGram sg =
              sample_gram_matrix(task.dataset.points, choice.spec, config.engine.shots, sampling_seed, setup);
          gram = sg.gram.values;
          rec.fidelity_mean = mean_of(sg.fidelities);
          rec.fidelity_std = stddev_of(sg.fidelities);
        } else if (kind == KernelKind::kQuantum) {
          gram = task.k_quantum.values;
        } else if (kind == KernelKind::kCoherent) {
          gram = task.k_coherent.values;
        } else {
          gram = gram_matrix(task.dataset.points, choice.spec, Engine::exact(), &setup).values;
        }
        if (config.tune_c) {
          double best = -1.0;
          const Eigen::MatrixXd k_train = select(gram, split.train, split.train);
          for (double cc : kCGrid) {
            SvmOptions o;
            o.c = cc;
            const double acc = cross_validate(k_train, y_train, o, kTuningFolds, tuning_seed);
            if (acc > best) { best = acc; c = cc; }
          }
        }
      } else {
        const std::vector<KernelSpec> candidates = candidate_specs(choice);
        const std::vector<double> c_values = config.tune_c ? std::vector<double>(std::begin(kCGrid), std::end(kCGrid))
                                                           : std::vector<double>{config.svm_c};
        if (candidates.size() == 1 && c_values.size() == 1) {
          gram = gram_matrix(task.dataset.points, chosen).values;
        } else {
          double best = -1.0;
          for (const KernelSpec& cand : candidates) {
            const Eigen::MatrixXd full = gram_matrix(task.dataset.points, cand).values;
            const Eigen::MatrixXd k_train = select(full, split.train, split.train);
            for (double cc : c_values) {
              SvmOptions o;
              o.c = cc;
              const double acc = cross_validate(k_train, y_train, o, kTuningFolds, tuning_seed);
              if (acc > best) {
                best = acc;
                chosen = cand;
                c = cc;
                gram = full;
              }
            }
          }
        }
      }

      SvmOptions opts;
      opts.c = c;
      SvmModel model = train(select(gram, split.train, split.train), y_train, opts);
      model.train_indices = split.train;
      rec.train_accuracy = accuracy(predict(model, select(gram, split.train, split.train)), y_train);
      rec.test_accuracy = accuracy(predict(model, select(gram, split.test, split.train)), y_test);
      rec.dual_objective = model.dual_objective;
      rec.min_eigenvalue = min_eigenvalue(gram);
      rec.hyperparameters = hyperparameters_of(chosen, c);
      out.grams.push_back(std::move(gram));
    } catch (const std::exception& e) {
      throw std::runtime_error("size " + std::to_string(size) + ", repeat " + std::to_string(repeat) + ", kernel " +
                               rec.kernel + ": " + e.what());
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.records.push_back(std::move(rec));
  }
  return out;
}

json record_to_json(const ResultRecord& r) {
  json j;
  j["size"] = r.size;
  j["repeat"] = r.repeat;
  j["kernel"] = r.kernel;
  j["train_accuracy"] = r.train_accuracy;
  j["test_accuracy"] = r.test_accuracy;
  j["g_cq"] = r.g_cq;
  j["complexity_quantum"] = r.complexity_quantum;
  j["complexity_coherent"] = r.complexity_coherent;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["hyperparameters"] = r.hyperparameters;
  j["task_seed"] = r.task_seed;
  j["redraws"] = r.redraws;
  j["positive_labels"] = r.positive_labels;
  j["dual_objective"] = r.dual_objective;
  if (r.fidelity_mean) j["fidelity_mean"] = *r.fidelity_mean;
  if (r.fidelity_std) j["fidelity_std"] = *r.fidelity_std;
  return j;
}

void write_experiment_files(const ExperimentConfig& config, const std::vector<ResultRecord>& records) {
  const auto& dir = config.output_dir;
  json arr = json::array();
  for (const ResultRecord& r : records) arr.push_back(record_to_json(r));
  write_text(dir / "results.json", arr.dump(2) + "\n");

  std::ostringstream acc;
  acc << "size,repeat,kernel,train_accuracy,test_accuracy,g_cq\n";
  for (const ResultRecord& r : records) {
    acc << r.size << ',' << r.repeat << ',' << r.kernel << ',' << r.train_accuracy << ',' << r.test_accuracy << ','
        << r.g_cq << '\n';
  }
  write_text(dir / "accuracy.csv", acc.str());

  std::ostringstream sum;
  sum << "size,kernel,mean_test_accuracy,stddev,count\n";
  for (const AccuracySummary& s : summarize(records)) {
    sum << s.size << ',' << s.kernel << ',' << s.mean << ',' << s.stddev << ',' << s.count << '\n';
  }
  write_text(dir / "summary.csv", sum.str());

  std::ostringstream timing;
  timing << "size,repeat,kernel,wall_seconds\n";
  for (const ResultRecord& r : records) {
    timing << r.size << ',' << r.repeat << ',' << r.kernel << ',' << r.wall_seconds << '\n';
  }
  write_text(dir / "timing.csv", timing.str());
}

}  // namespace

KernelChoice KernelChoice::parse(const std::string& text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  const std::string name = t.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : t.substr(colon + 1);
  const KernelKind kind = kernel_kind_from_string(name);
  KernelChoice c;
  c.tune = false;
  switch (kind) {
    case KernelKind::kMixed:
      if (args.empty()) throw std::invalid_argument("kernel 'mixed' needs r, e.g. mixed:0.5");
      c.spec = KernelSpec::mixed(parse_double(args, "mixed"));
      break;
    case KernelKind::kGaussian:
      c.spec = KernelSpec::gaussian(args.empty() ? 1.0 : parse_double(args, "gaussian"));
      c.tune = args.empty();
      break;
    case KernelKind::kPolynomial: {
      if (args.empty()) {
        c.spec = KernelSpec::polynomial(1.0, 0.0, 2);
        c.tune = true;
      } else {
        const auto parts = split(args, ',');
        if (parts.size() != 3) throw std::invalid_argument("kernel 'polynomial' expects gamma,offset,degree");
        c.spec = KernelSpec::polynomial(parse_double(parts[0], "polynomial"), parse_double(parts[1], "polynomial"),
                                        static_cast<int>(parse_int(parts[2], "polynomial")));
      }
      break;
    }
    case KernelKind::kNtk:
      c.spec = KernelSpec::ntk(args.empty() ? 2 : static_cast<int>(parse_int(args, "ntk")));
      break;
    default:
      if (!args.empty()) throw std::invalid_argument("kernel '" + name + "' takes no arguments");
      c.spec = KernelSpec{kind};
  }
  c.spec.validate();
  return c;
}

std::string KernelChoice::label() const {
  const std::string name(to_string(spec.kind));
  switch (spec.kind) {
    case KernelKind::kMixed:
      return name + ":" + format_number(spec.indistinguishability);
    case KernelKind::kGaussian:
      return tune ? name : name + ":" + format_number(spec.gamma);
    case KernelKind::kPolynomial:
      return tune ? name
                  : name + ":" + format_number(spec.gamma) + "," + format_number(spec.offset) + "," +
                        std::to_string(spec.degree);
    case KernelKind::kNtk:
      return spec.depth == 2 ? name : name + ":" + std::to_string(spec.depth);
    default:
      return name;
  }
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("experiment: sizes must be non-empty");
  for (int n : sizes) {
    if (n < 4) throw std::invalid_argument("experiment: every size must be >= 4");
  }
  if (repeats < 1) throw std::invalid_argument("experiment: repeats must be >= 1");
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) throw std::invalid_argument("experiment: split_ratio must lie in (0, 1)");
  if (lambda < 0.0) throw std::invalid_argument("experiment: lambda must be >= 0");
  if (!(svm_c > 0.0)) throw std::invalid_argument("experiment: svm_c must be > 0");
  if (psi.modes() != mesh.modes()) throw std::invalid_argument("experiment: psi does not match the mesh mode count");
  if (!psi.collision_free()) throw std::invalid_argument("experiment: psi must be collision-free");
  if (engine.sampled && engine.shots == 0) throw std::invalid_argument("experiment: sampled engine needs shots > 0");
}

std::vector<KernelChoice> ExperimentConfig::effective_kernels() const {
  if (!kernels.empty()) return kernels;
  std::vector<KernelChoice> out;
  for (const char* name : {"quantum", "coherent", "gaussian", "polynomial", "linear", "ntk"}) {
    out.push_back(KernelChoice::parse(name));
  }
  return out;
}

ExperimentConfig parse_experiment_config(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  int modes = base.mesh.modes();
  int columns = base.mesh.columns();
  bool columns_set = false;
  std::optional<std::vector<int>> psi;
  bool sampled = base.engine.sampled;
  std::uint64_t shots = base.engine.shots;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "modes") {
      modes = static_cast<int>(parse_int(value, key));
    } else if (key == "columns") {
      columns = static_cast<int>(parse_int(value, key));
      columns_set = true;
    } else if (key == "psi") {
      std::vector<int> occ;
      for (const auto& p : split(value, ',')) occ.push_back(static_cast<int>(parse_int(p, key)));
      psi = occ;
    } else if (key == "sizes") {
      base.sizes.clear();
      for (const auto& p : split(value, ',')) base.sizes.push_back(static_cast<int>(parse_int(p, key)));
    } else if (key == "repeats") {
      base.repeats = static_cast<int>(parse_int(value, key));
    } else if (key == "lambda") {
      base.lambda = parse_double(value, key);
    } else if (key == "label_rule") {
      if (value == "projected") base.label_rule = LabelRule::kProjectedEigenvector;
      else if (value == "eigenvector") base.label_rule = LabelRule::kEigenvector;
      else throw std::invalid_argument("config: label_rule must be 'projected' or 'eigenvector'");
    } else if (key == "kernels") {
      base.kernels.clear();
      std::istringstream ks(value);
      std::string k;
      while (ks >> k) base.kernels.push_back(KernelChoice::parse(k));
    } else if (key == "engine") {
      if (value == "exact") sampled = false;
      else if (value == "sampled") sampled = true;
      else throw std::invalid_argument("config: engine must be 'exact' or 'sampled'");
    } else if (key == "shots") {
      shots = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "split_ratio") {
      base.split_ratio = parse_double(value, key);
    } else if (key == "svm_c") {
      base.svm_c = parse_double(value, key);
    } else if (key == "tune_c") {
      base.tune_c = value == "true" || value == "1" || value == "yes";
    } else if (key == "seed") {
      base.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "output_dir") {
      base.output_dir = value;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  if (!columns_set && modes != base.mesh.modes()) columns = modes;
  base.mesh = MeshConfig(modes, columns);
  if (psi) {
    base.psi = FockState(*psi);
  } else if (base.psi.modes() != modes) {
    base.psi = two_photon_input(modes, InputPlacement::kCenter);
  }
  base.engine.sampled = sampled;
  base.engine.shots = shots;
  return base;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path, ExperimentConfig base) {
  return parse_experiment_config(read_text(path), std::move(base));
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::vector<KernelChoice> kernels = config.effective_kernels();
  std::vector<ResultRecord> records;
  for (int size : config.sizes) {
    for (int repeat = 0; repeat < config.repeats; ++repeat) {
      CellOutput cell = evaluate_cell(config, kernels, size, repeat);
      for (auto& r : cell.records) records.push_back(std::move(r));
    }
  }
  if (!config.output_dir.empty()) write_experiment_files(config, records);
  return records;
}

std::vector<AccuracySummary> summarize(const std::vector<ResultRecord>& records) {
  std::vector<AccuracySummary> out;
  std::vector<std::vector<double>> values;
  for (const ResultRecord& r : records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const AccuracySummary& s) { return s.size == r.size && s.kernel == r.kernel; });
    if (it == out.end()) {
      out.push_back({r.size, r.kernel, 0.0, 0.0, 0});
      values.emplace_back();
      it = out.end() - 1;
    }
    values[static_cast<std::size_t>(it - out.begin())].push_back(r.test_accuracy);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].mean = mean_of(values[i]);
    out[i].stddev = stddev_of(values[i]);
    out[i].count = static_cast<int>(values[i].size());
  }
  return out;
}

double mean_test_accuracy(const std::vector<ResultRecord>& records, const std::string& kernel, int size) {
  std::vector<double> v;
  for (const ResultRecord& r : records) {
    if (r.kernel == kernel && (size < 0 || r.size == size)) v.push_back(r.test_accuracy);
  }
  if (v.empty()) throw std::invalid_argument("mean_test_accuracy: no records for kernel " + kernel);
  return mean_of(v);
}

FockState two_photon_input(int modes, InputPlacement placement) {
  if (modes < 2) throw std::invalid_argument("two_photon_input: needs at least two modes");
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  const int first = placement == InputPlacement::kLeft ? 0 : modes / 2 - 1;
  occ[static_cast<std::size_t>(first)] = 1;
  occ[static_cast<std::size_t>(first + 1)] = 1;
  return FockState(std::move(occ));
}

std::vector<WidthScanRow> run_width_scan(const std::vector<int>& widths, const ExperimentConfig& base,
                                         InputPlacement placement) {
  if (widths.empty()) throw std::invalid_argument("width scan: widths must be non-empty");
  std::vector<WidthScanRow> rows;
  for (int m : widths) {
    if (m < 2) throw std::invalid_argument("width scan: widths must be >= 2");
    ExperimentConfig cfg = base;
    cfg.mesh = MeshConfig(m, m);
    cfg.psi = two_photon_input(m, placement);
    cfg.kernels = {KernelChoice::parse("quantum"), KernelChoice::parse("coherent")};
    cfg.output_dir.clear();
    for (const AccuracySummary& s : summarize(run_experiment(cfg))) {
      rows.push_back({m, s.size, s.kernel, s.mean, s.stddev, s.count});
    }
  }
  return rows;
}

std::vector<SweepRow> run_distinguishability_sweep(const std::vector<double>& r_values, const ExperimentConfig& base) {
  if (r_values.empty()) throw std::invalid_argument("distinguishability sweep: r_values must be non-empty");
  ExperimentConfig cfg = base;
  cfg.kernels.clear();
  for (double r : r_values) {
    KernelChoice c;
    c.spec = KernelSpec::mixed(r);
    c.tune = false;
    cfg.kernels.push_back(c);
  }
  cfg.output_dir.clear();
  const std::vector<ResultRecord> records = run_experiment(cfg);
  std::vector<SweepRow> rows;
  for (int size : cfg.sizes) {
    for (std::size_t k = 0; k < r_values.size(); ++k) {
      SweepRow row;
      row.r = r_values[k];
      row.size = size;
      const std::string label = cfg.kernels[k].label();
      for (const ResultRecord& rec : records) {
        if (rec.size == size && rec.kernel == label) row.accuracies.push_back(rec.test_accuracy);
      }
      row.mean_accuracy = mean_of(row.accuracies);
      row.stddev = stddev_of(row.accuracies);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<UnbunchingRow> run_unbunching_check(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  cfg.validate();
  const std::vector<KernelChoice> kernels = {KernelChoice::parse("quantum"), KernelChoice::parse("unbunching"),
                                             KernelChoice::parse("coherent")};
  std::vector<UnbunchingRow> rows;
  for (int size : cfg.sizes) {
    for (int repeat = 0; repeat < cfg.repeats; ++repeat) {
      const CellOutput cell = evaluate_cell(cfg, kernels, size, repeat);
      UnbunchingRow row;
      row.size = size;
      row.repeat = repeat;
      row.quantum_accuracy = cell.records[0].test_accuracy;
      row.unbunching_accuracy = cell.records[1].test_accuracy;
      row.coherent_accuracy = cell.records[2].test_accuracy;
      row.unbunching_min_eigenvalue = cell.records[1].min_eigenvalue;
      row.unbunching_indefinite = row.unbunching_min_eigenvalue < 0.0;
      row.max_entry_gap = (cell.grams[1] - cell.grams[0]).cwiseAbs().maxCoeff();
      rows.push_back(row);
    }
  }
  return rows;
}

std::string to_csv(const std::vector<WidthScanRow>& rows) {
  std::ostringstream os;
  os << "width,size,kernel,mean_accuracy,stddev,repeats\n";
  for (const WidthScanRow& r : rows) {
    os << r.width << ',' << r.size << ',' << r.kernel << ',' << r.mean_accuracy << ',' << r.stddev << ',' << r.repeats
       << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "r,size,mean_accuracy,stddev,repeats\n";
  for (const SweepRow& r : rows) {
    os << r.r << ',' << r.size << ',' << r.mean_accuracy << ',' << r.stddev << ',' << r.accuracies.size() << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<UnbunchingRow>& rows) {
  std::ostringstream os;
  os << "size,repeat,quantum_accuracy,unbunching_accuracy,coherent_accuracy,unbunching_min_eigenvalue,"
        "unbunching_indefinite,max_entry_gap\n";
  for (const UnbunchingRow& r : rows) {
    os << r.size << ',' << r.repeat << ',' << r.quantum_accuracy << ',' << r.unbunching_accuracy << ','
       << r.coherent_accuracy << ',' << r.unbunching_min_eigenvalue << ',' << (r.unbunching_indefinite ? 1 : 0) << ','
       << r.max_entry_gap << '\n';
  }
  return os.str();
}

GramFiles emit_gram(const Dataset& dataset, const KernelSpec& spec, const Engine& engine, const PhotonicSetup& setup,
                    double split_ratio, std::uint64_t split_seed, const std::filesystem::path& dir,
                    const std::string& stem) {
  const GramMatrix gram = gram_matrix(dataset.points, spec, engine, is_photonic(spec.kind) ? &setup : nullptr);
  const TrainTestSplit split = split_indices(static_cast<std::size_t>(dataset.size()), split_ratio, split_seed);
  std::map<std::string, std::string> meta = gram_metadata(gram);
  meta["psi"] = setup.psi.to_string();
  GramFiles files{dir / (stem + "_train.csv"), dir / (stem + "_cross.csv"), dir / (stem + "_meta.json")};
  meta["block"] = "train";
  write_matrix_csv(files.train_csv, select(gram.values, split.train, split.train), meta);
  meta["block"] = "test_x_train";
  write_matrix_csv(files.cross_csv, select(gram.values, split.test, split.train), meta);

  json j;
  j["kind"] = std::string(to_string(spec.kind));
  j["hyperparameters"] = hyperparameters_of(spec, 0.0);
  j["hyperparameters"].erase("C");
  j["engine"] = engine.sampled ? "sampled" : "exact";
  j["shots"] = engine.shots;
  j["seed"] = engine.seed;
  j["dataset_seed"] = dataset.seed;
  j["psi"] = std::vector<int>(setup.psi.occupations().begin(), setup.psi.occupations().end());
  j["m"] = setup.mesh.modes();
  j["k"] = setup.mesh.columns();
  j["split_ratio"] = split_ratio;
  j["split_seed"] = split_seed;
  j["train_indices"] = split.train;
  j["test_indices"] = split.test;
  j["min_eigenvalue"] = min_eigenvalue(gram.values);
  write_text(files.metadata_json, j.dump(2) + "\n");
  return files;
}

}  // namespace photokernel
