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

// Command-line front end: task generation, Gram export, SVM training and the
// experiment runners.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photokernel/experiment.h"
#include "photokernel/io.h"
#include "photokernel/random.h"
#include "photokernel/shots.h"

namespace fs = std::filesystem;
using namespace photokernel;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out = "out";
  std::string config;
};

struct MeshOptions {
  std::optional<int> modes;
  std::optional<int> columns;
  std::vector<int> psi;
  std::string placement;
};

void add_mesh_options(CLI::App* cmd, MeshOptions& m) {
  cmd->add_option("--modes", m.modes, "Number of waveguide modes m (columns default to m)");
  cmd->add_option("--columns", m.columns, "Mesh columns k");
  cmd->add_option("--psi", m.psi, "Input occupations, e.g. 0,0,1,1,0,0")->delimiter(',');
  cmd->add_option("--placement", m.placement, "Two-photon input: left or cent")
      ->check(CLI::IsMember({"left", "cent"}));
}

InputPlacement placement_of(const std::string& s) {
  return s == "left" ? InputPlacement::kLeft : InputPlacement::kCenter;
}

ExperimentConfig base_config(const GlobalOptions& g, const MeshOptions& m) {
  ExperimentConfig cfg;
  if (!g.config.empty()) cfg = load_experiment_config(g.config);
  cfg.seed = g.seed;
  const int modes = m.modes.value_or(cfg.mesh.modes());
  const int columns = m.columns.value_or(m.modes ? modes : cfg.mesh.columns());
  cfg.mesh = MeshConfig(modes, columns);
  if (!m.psi.empty()) {
    cfg.psi = FockState(m.psi);
  } else if (!m.placement.empty() || cfg.psi.modes() != modes) {
    cfg.psi = two_photon_input(modes, placement_of(m.placement.empty() ? "cent" : m.placement));
  }
  return cfg;
}

void write_and_report(const fs::path& path, const std::string& text) {
  write_text(path, text);
  std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic quantum-kernel simulator and classification benchmarks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--config", g.config, "Experiment config file (key = value lines)");

  // gen-task
  MeshOptions gen_mesh;
  int gen_size = 40;
  double gen_lambda = kDefaultRegularization;
  std::string gen_rule = "projected";
  auto* gen = app.add_subcommand("gen-task", "Generate a geometric-difference labeled dataset");
  add_mesh_options(gen, gen_mesh);
  gen->add_option("-n,--size", gen_size, "Number of points N")->capture_default_str();
  gen->add_option("--lambda", gen_lambda, "Regularization lambda")->capture_default_str();
  gen->add_option("--label-rule", gen_rule, "projected: sign(sqrt(K_Q) v); eigenvector: sign(v)")
      ->check(CLI::IsMember({"projected", "eigenvector"}))
      ->capture_default_str();
  gen->callback([&] {
    const ExperimentConfig cfg = base_config(g, gen_mesh);
    TaskOptions opt;
    opt.lambda = gen_lambda;
    opt.rule = gen_rule == "eigenvector" ? LabelRule::kEigenvector : LabelRule::kProjectedEigenvector;
    const GeneratedTask task = generate_task({cfg.mesh, cfg.psi}, gen_size, g.seed, opt);
    TaskFile file{task.dataset, cfg.mesh, cfg.psi, gen_lambda};
    write_and_report(fs::path(g.out) / "dataset.json", dataset_to_json(file));
    const auto pos = std::count(task.dataset.labels.begin(), task.dataset.labels.end(), 1);
    std::cout << "g_CQ = " << task.separation.g << ", labels +1/-1 = " << pos << "/"
              << task.dataset.labels.size() - static_cast<std::size_t>(pos) << ", redraws = " << task.redraws << "\n";
  });

  // gram
  std::string gram_dataset;
  std::string gram_kernel = "quantum";
  std::string gram_engine = "exact";
  std::uint64_t gram_shots = shot_budget_from_time(kDefaultCoincidenceRateHz, kDefaultIntegrationSeconds);
  double gram_ratio = 2.0 / 3.0;
  bool gram_dump_counts = false;
  auto* gram = app.add_subcommand("gram", "Compute and export train / test-x-train Gram matrices");
  gram->add_option("--dataset", gram_dataset, "Dataset JSON")->required()->check(CLI::ExistingFile);
  gram->add_option("--kernel", gram_kernel, "quantum|coherent|unbunching|mixed:r|gaussian:g|polynomial:g,r,d|linear|ntk")
      ->capture_default_str();
  gram->add_option("--engine", gram_engine, "exact or sampled")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  gram->add_option("--shots", gram_shots, "Shots per pair for the sampled engine")->capture_default_str();
  gram->add_option("--split-ratio", gram_ratio, "Training fraction")->capture_default_str();
  gram->add_flag("--dump-counts", gram_dump_counts, "Also write per-pair coincidence counts (sampled engine)");
  gram->callback([&] {
    const TaskFile task = read_dataset(gram_dataset);
    const KernelChoice choice = KernelChoice::parse(gram_kernel);
    const Engine engine = gram_engine == "sampled" ? Engine::sampling(gram_shots, g.seed) : Engine::exact();
    const PhotonicSetup setup{task.mesh, task.psi};
    const fs::path dir(g.out);
    const GramFiles files = emit_gram(task.dataset, choice.spec, engine, setup, gram_ratio, derive_seed(g.seed, {1}), dir,
                                      std::string(to_string(choice.spec.kind)));
    std::cout << "wrote " << files.train_csv.string() << ", " << files.cross_csv.string() << ", "
              << files.metadata_json.string() << "\n";
    if (gram_dump_counts && engine.sampled) {
      const SampledGram sg = sample_gram_matrix(task.dataset.points, choice.spec, engine.shots, engine.seed, setup);
      write_and_report(dir / (std::string(to_string(choice.spec.kind)) + "_counts.json"), records_to_json(sg.records));
    }
  });

  // train
  std::string train_dataset;
  std::string train_kernel = "quantum";
  double train_c = kDefaultBoxConstraint;
  double train_ratio = 2.0 / 3.0;
  auto* trn = app.add_subcommand("train", "Train an SVM on a dataset and report accuracy");
  trn->add_option("--dataset", train_dataset, "Dataset JSON")->required()->check(CLI::ExistingFile);
  trn->add_option("--kernel", train_kernel, "Kernel, as for gram")->capture_default_str();
  trn->add_option("-C,--box", train_c, "Box constraint C")->capture_default_str();
  trn->add_option("--split-ratio", train_ratio, "Training fraction")->capture_default_str();
  trn->callback([&] {
    const TaskFile task = read_dataset(train_dataset);
    if (!task.dataset.labeled()) throw std::invalid_argument("train: dataset has no labels");
    const KernelChoice choice = KernelChoice::parse(train_kernel);
    const PhotonicSetup setup{task.mesh, task.psi};
    const GramMatrix k = gram_matrix(task.dataset.points, choice.spec, Engine::exact(),
                                     is_photonic(choice.spec.kind) ? &setup : nullptr);
    const DatasetSplit split = train_test_split(task.dataset, train_ratio, derive_seed(g.seed, {1}));
    SvmOptions opt;
    opt.c = train_c;
    SvmModel model = train(select(k.values, split.indices.train, split.indices.train), split.train.labels, opt);
    model.train_indices = split.indices.train;
    const double tr = accuracy(predict(model, select(k.values, split.indices.train, split.indices.train)), split.train.labels);
    const double te = accuracy(predict(model, select(k.values, split.indices.test, split.indices.train)), split.test.labels);
    write_and_report(fs::path(g.out) / "model.json", model_to_json(model));
    std::cout << "kernel " << choice.label() << ": train accuracy " << tr << ", test accuracy " << te
              << ", support vectors " << model.support_vector_count() << "\n";
  });

  // experiment
  MeshOptions exp_mesh;
  std::vector<int> exp_sizes;
  std::optional<int> exp_repeats;
  std::vector<std::string> exp_kernels;
  std::string exp_engine;
  std::optional<std::uint64_t> exp_shots;
  auto* exp = app.add_subcommand("experiment", "Accuracy of every kernel over sizes x repeats");
  add_mesh_options(exp, exp_mesh);
  exp->add_option("--sizes", exp_sizes, "Dataset sizes, e.g. 40,60,80,100")->delimiter(',');
  exp->add_option("--repeats", exp_repeats, "Datasets per size");
  exp->add_option("--kernels", exp_kernels, "Kernel list, e.g. quantum,coherent,gaussian")->delimiter(',');
  exp->add_option("--engine", exp_engine, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  exp->add_option("--shots", exp_shots, "Shots per pair for the sampled engine");

  auto apply_run_options = [&](ExperimentConfig& cfg) {
    if (!exp_sizes.empty()) cfg.sizes = exp_sizes;
    if (exp_repeats) cfg.repeats = *exp_repeats;
    if (!exp_kernels.empty()) {
      cfg.kernels.clear();
      for (const auto& k : exp_kernels) cfg.kernels.push_back(KernelChoice::parse(k));
    }
    if (exp_engine == "sampled") cfg.engine.sampled = true;
    if (exp_engine == "exact") cfg.engine.sampled = false;
    if (exp_shots) cfg.engine.shots = *exp_shots;
    if (cfg.engine.sampled && cfg.engine.shots == 0) {
      cfg.engine.shots = shot_budget_from_time(kDefaultCoincidenceRateHz, kDefaultIntegrationSeconds);
    }
  };

  exp->callback([&] {
    ExperimentConfig cfg = base_config(g, exp_mesh);
    apply_run_options(cfg);
    cfg.output_dir = g.out;
    const auto records = run_experiment(cfg);
    for (const AccuracySummary& s : summarize(records)) {
      std::cout << "N=" << s.size << " " << s.kernel << ": " << s.mean << " +- " << s.stddev << "\n";
    }
    std::cout << "wrote " << (fs::path(g.out) / "results.json").string() << "\n";
  });

  // width-scan
  MeshOptions ws_mesh;
  std::vector<int> ws_widths{4, 6};
  auto* ws = app.add_subcommand("width-scan", "Accuracy vs N for square meshes of several widths");
  add_mesh_options(ws, ws_mesh);
  ws->add_option("--widths", ws_widths, "Mesh widths m (= k)")->delimiter(',')->capture_default_str();
  ws->add_option("--sizes", exp_sizes, "Dataset sizes")->delimiter(',');
  ws->add_option("--repeats", exp_repeats, "Datasets per size");
  ws->callback([&] {
    ExperimentConfig cfg = base_config(g, ws_mesh);
    apply_run_options(cfg);
    const auto rows = run_width_scan(ws_widths, cfg, placement_of(ws_mesh.placement.empty() ? "cent" : ws_mesh.placement));
    write_and_report(fs::path(g.out) / "width_scan.csv", to_csv(rows));
  });

  // dist-sweep
  MeshOptions ds_mesh;
  std::vector<double> ds_r{0.0, 0.25, 0.5, 0.75, 1.0};
  auto* ds = app.add_subcommand("dist-sweep", "Test accuracy vs degree of indistinguishability r");
  add_mesh_options(ds, ds_mesh);
  ds->add_option("--r", ds_r, "Values of r in [0, 1]")->delimiter(',')->capture_default_str();
  ds->add_option("--sizes", exp_sizes, "Dataset sizes")->delimiter(',');
  ds->add_option("--repeats", exp_repeats, "Datasets per size");
  ds->callback([&] {
    ExperimentConfig cfg = base_config(g, ds_mesh);
    apply_run_options(cfg);
    if (exp_sizes.empty() && g.config.empty()) cfg.sizes = {40};
    write_and_report(fs::path(g.out) / "dist_sweep.csv", to_csv(run_distinguishability_sweep(ds_r, cfg)));
  });

  // unbunch-check
  MeshOptions ub_mesh;
  auto* ub = app.add_subcommand("unbunch-check", "Quantum vs unbunching vs coherent kernel accuracy");
  add_mesh_options(ub, ub_mesh);
  ub->add_option("--sizes", exp_sizes, "Dataset sizes")->delimiter(',');
  ub->add_option("--repeats", exp_repeats, "Datasets per size");
  ub->callback([&] {
    ExperimentConfig cfg = base_config(g, ub_mesh);
    apply_run_options(cfg);
    if (exp_sizes.empty() && g.config.empty()) cfg.sizes = {40};
    const auto rows = run_unbunching_check(cfg);
    int indefinite = 0;
    for (const auto& r : rows) indefinite += r.unbunching_indefinite;
    write_and_report(fs::path(g.out) / "unbunching_check.csv", to_csv(rows));
    std::cout << indefinite << " of " << rows.size() << " unbunching Grams are indefinite\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
