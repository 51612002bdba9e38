#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rwg/graph.hpp"
#include "rwg/tensor.hpp"

namespace rwg {

enum class Backbone { GCN, GIN, Cheb };

std::string backbone_name(Backbone b);
Backbone backbone_from_name(const std::string& name);

struct RecConfig {
  double gamma_init = 1.0;
  double gamma_min = 0.2;
  double epsilon = 0.01;
};

// Decayed gate offset: max(gamma_init * (1 - epsilon)^t, gamma_min), with t
// the epoch index.
double rec_gamma(int t, const RecConfig& cfg);

struct ModelConfig {
  Backbone backbone = Backbone::GCN;
  int num_layers = 2;
  int input_dim = 5;
  int hidden_dim = 64;
  int num_classes = 5;
  int cheb_order = 2;  // polynomial order K; terms T_0..T_K
  bool rec_enabled = false;
  int rec_gate_hidden = 16;
};

struct Model {
  ModelConfig cfg;
  RecConfig rec;
  double gamma = 1.0;  // current schedule value, advanced once per epoch
  std::vector<std::string> param_names;
  std::vector<Tensor> params;

  int param_index(const std::string& name) const;
};

// Uniform fan-in initialization; biases, GIN epsilons and gate output layers
// start at zero so masks depend only on gamma at step 0.
Model init_model(const ModelConfig& cfg, const RecConfig& rec, std::uint64_t seed);

// Leaf ids for every parameter, in registry order.
std::vector<int> register_params(Tape& tape, const Model& model);

struct ForwardResult {
  int logits = -1;  // tape id, 1 x num_classes
  int probs = -1;   // tape id, softmax of logits
};

// Full forward pass for one graph on the given tape. Propagation operators
// are built from the (symmetrized) adjacency; REC masks are applied to every
// layer input when enabled.
ForwardResult model_forward(Tape& tape, const Model& model, const std::vector<int>& param_ids,
                            const AttributedGraph& g, double gamma);

// REC mask scalars sigmoid(gamma + gate_l(h)) for a feature matrix, one per
// row. Value-only view of the gate that model_forward differentiates through.
Tensor rec_mask_values(const Model& model, int layer, const Tensor& h, double gamma);

// Convenience value-only forward: class probabilities for one graph.
std::vector<double> forward_probs(const Model& model, const AttributedGraph& g);

// Structured-text parameter dump with shape headers, and its inverse.
void save_checkpoint(const Model& model, const std::string& path);
Model load_checkpoint(const std::string& path);

}  // namespace rwg
