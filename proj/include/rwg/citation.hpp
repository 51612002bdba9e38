#pragma once
#include <cstdint>
#include <vector>

#include "rwg/causal.hpp"
#include "rwg/graph.hpp"
#include "rwg/link_rules.hpp"

namespace rwg {

struct CitationAssemblyConfig {
  int node_min = 15;
  int node_max = 25;
  int edge_min = 20;
  int edge_max = 60;
  int feature_dim = 5;
  int num_classes = 5;
  double feature_scale = 0.1;  // keeps sequence rows at trainable magnitude
  std::vector<LinkRule> rule_pool;
  LinkRuleParams rule_params;
  // Used when the causal spec determines classes by link rule instead of by
  // feature generator.
  FeatureGenerator base_feature_generator{FeatureKind::Normal, 0.0, 1.0};
  int max_attempts = 64;
};

// One citation sample: node count from the (reserve-reduced) range, metadata
// synthesized from the seed, features from the class feature generator, and
// directed edges from the configured link rule retried until the edge count
// fits the range.
GraphSample assemble_citation_graph(const CitationAssemblyConfig& cfg, const CausalSpec& causal,
                                    int label, std::uint64_t seed, int reserve_nodes = 0,
                                    int reserve_edges = 0);

}  // namespace rwg
