#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rwg/generator.hpp"
#include "rwg/model.hpp"
#include "rwg/train.hpp"

namespace rwg {

struct ExperimentConfig {
  std::string scenario = "three-scenario";
  Family family = Family::Molecular;
  std::string preset = "reduced";  // "reduced" or "default"
  std::vector<Backbone> backbones{Backbone::GCN};
  double bias = 0.9;
  std::vector<double> sweep;  // bias levels or violation fractions
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::uint64_t data_seed = 7;
  int train_count = -1;  // -1: keep the preset's split sizes
  int val_count = -1;
  int test_count = -1;
  TrainConfig train;
  RecConfig rec;
  std::string output_dir;  // empty: no files written
};

ExperimentConfig load_experiment_config(const std::string& path);

struct RunRow {
  std::string condition;
  std::string backbone;
  std::uint64_t seed = 0;
  double test_acc = 0;
  double val_acc = 0;
  double train_loss = 0;
};

struct Aggregate {
  std::string condition;
  std::string backbone;
  double mean_test_acc = 0;
  double std_test_acc = 0;
  int runs = 0;
};

struct RunResult {
  std::string scenario;
  std::vector<RunRow> rows;
  std::vector<Aggregate> aggregates;  // recomputable from rows
  std::vector<std::pair<std::string, double>> metrics;  // named scenario-level values
};

// Recomputes per-(condition, backbone) aggregates from the raw rows.
std::vector<Aggregate> aggregate_rows(const std::vector<RunRow>& rows);

double aggregate_mean(const RunResult& r, const std::string& condition, const std::string& backbone);

std::string results_csv(const RunResult& r);
std::string summary_csv(const RunResult& r);

// The generation config a scenario uses for the given family/preset/bias.
GenerationConfig scenario_generation_config(const ExperimentConfig& cfg, double bias);

// Scenario drivers. Every run is a pure function of (config, seeds); output
// files, when output_dir is set, are byte-identical across repeats.
RunResult run_three_scenario(const ExperimentConfig& cfg);
RunResult run_bias_sweep(const ExperimentConfig& cfg);
RunResult run_violation_sweep(const ExperimentConfig& cfg);
RunResult run_confounder_kinds(const ExperimentConfig& cfg);
RunResult run_pure_causal(const ExperimentConfig& cfg);
RunResult run_rec_comparison(const ExperimentConfig& cfg);
std::string run_bounds_report(const Dataset& ds, double lambda, const std::string& cpdag_path);

// Dispatch by cfg.scenario; writes results.csv, summary.csv, metrics.csv and
// a plot when output_dir is set.
RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace rwg
