#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rwg/causal.hpp"
#include "rwg/connectors.hpp"
#include "rwg/graph.hpp"

namespace rwg {

struct MoleculeAssemblyConfig {
  std::vector<std::string> filler_pool;
  std::vector<ConnectorKind> connector_pool;
  int node_min = 50;
  int node_max = 80;
  int edge_min = 60;
  int edge_max = 120;
  int feature_dim = 5;
  int num_classes = 5;
  double motif_variation_rate = 0.05;  // applied to fillers; the causal motif stays exact
  double feature_noise = 0.1;
  int max_attempts = 64;
};

// One molecular sample: the label's causal motif, one connector, and filler
// motifs attached until the (possibly reserve-reduced) node and edge ranges
// are met. Features are atom one-hot rows plus Gaussian noise.
GraphSample assemble_molecule(const MoleculeAssemblyConfig& cfg, const CausalSpec& causal,
                              int label, std::uint64_t seed, int reserve_nodes = 0,
                              int reserve_edges = 0);

}  // namespace rwg
