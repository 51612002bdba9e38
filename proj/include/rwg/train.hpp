#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rwg/graph.hpp"
#include "rwg/model.hpp"

namespace rwg {

struct TrainConfig {
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  int batch_size = 32;
  int epochs = 50;
  std::uint64_t seed = 1;
  bool plain_sgd = false;  // gradient descent instead of Adam
};

constexpr double kProbClamp = 1e-12;

// Mean over the batch of log(1 / p_i[y_i]), natural log, probabilities
// clamped at 1e-12 before the log.
double cross_entropy(const std::vector<std::vector<double>>& probs, const std::vector<int>& labels);

// The same quantity computed literally as the conditional KL divergence with
// a one-hot target distribution.
double conditional_kl(const std::vector<std::vector<double>>& probs, const std::vector<int>& labels);

struct EpochStats {
  int epoch = 0;
  double train_loss = 0;
  double val_acc = 0;
  double test_acc = 0;
};

struct TrainResult {
  Model model;
  std::vector<EpochStats> trace;
};

// Fraction of correctly argmax-classified samples in the split (ties break
// toward the lowest class index). Throws on an empty split.
double evaluate(const Model& model, const Dataset& ds, Split split);

// Deterministic training: per-epoch seeded shuffles, Adam (or plain SGD)
// on cross-entropy plus L2 weight decay, REC gamma advanced once per epoch.
TrainResult train_model(Model model, const Dataset& ds, const TrainConfig& cfg);

// Gradient of the cross-entropy + weight-decay objective on the given batch,
// one tensor per parameter. The objective value is returned through `loss`.
std::vector<Tensor> batch_gradients(const Model& model, const std::vector<const GraphSample*>& batch,
                                    double weight_decay, double gamma, double* loss);

std::string trace_csv(const std::vector<EpochStats>& trace);
void write_trace_csv(const std::vector<EpochStats>& trace, const std::string& path);

}  // namespace rwg
